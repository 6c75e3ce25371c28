#pragma once

#include <string>

#include "memestream/ingest.hpp"
#include "memestream/stopwords.hpp"

namespace test_helpers {

inline const memestream::StopwordSet& stopwords() {
    static const memestream::StopwordSet set =
        memestream::StopwordSet::from_file(std::string(MEMESTREAM_DATA_DIR) + "/stopwords_en.txt");
    return set;
}

inline memestream::Tweet make_tweet(std::string id, std::int64_t ts, std::string author,
                                    std::string text, std::string retweet_of = "") {
    memestream::Tweet t;
    t.id = std::move(id);
    t.timestamp = ts;
    t.author_id = std::move(author);
    t.text = std::move(text);
    if (!retweet_of.empty()) t.retweet_of_author = std::move(retweet_of);
    return t;
}

}  // namespace test_helpers
