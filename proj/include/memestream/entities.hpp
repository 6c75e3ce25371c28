#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "memestream/stopwords.hpp"

namespace memestream {

// TweetSelf is not produced by extraction; it is the per-tweet point identity
// used by the baseline clusterers.
enum class EntityKind : std::uint8_t { Hashtag, Mention, Url, Phrase, TweetSelf };

struct Entity {
    EntityKind kind;
    std::string key;

    bool operator==(const Entity&) const = default;
};

struct EntityHash {
    std::size_t operator()(const Entity& e) const {
        return std::hash<std::string>()(e.key) * 31u + static_cast<std::size_t>(e.kind);
    }
};

const char* entity_kind_name(EntityKind k);

// Lowercased label strings without the leading '#'. Blinded hashtags are
// dropped from extraction and their word form from the content terms.
using BlindSet = std::unordered_set<std::string>;

struct TokenizedTweet {
    std::vector<Entity> entities;            // deduplicated, first-seen order
    std::vector<std::string> content_terms;  // stemmed words incl. hashtag words, with repeats
};

TokenizedTweet tokenize_tweet(std::string_view text, const StopwordSet& stopwords,
                              const BlindSet* blind = nullptr);

// Hashtags (#\w+), mentions (@\w+), URL tokens (scheme'd or host/path
// short-link forms), and at most one Phrase entity: the residual text
// lowercased, punctuation-stripped, stopword-filtered and Porter-stemmed,
// joined with single spaces.
std::vector<Entity> extract_entities(std::string_view text, const StopwordSet& stopwords);

}  // namespace memestream
