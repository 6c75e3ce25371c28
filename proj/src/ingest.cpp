#include "memestream/ingest.hpp"

#include <istream>

#include <json.hpp>

namespace memestream {

using nlohmann::json;

namespace {

std::string require_string(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) throw ParseError(std::string("missing required field \"") + field + "\"");
    if (!it->is_string()) throw ParseError(std::string("field \"") + field + "\" must be a string");
    return it->get<std::string>();
}

}  // namespace

Tweet parse_tweet(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("record is not a JSON object");

    Tweet t;
    t.id = require_string(j, "id");
    if (t.id.empty()) throw ParseError("field \"id\" must be non-empty");

    auto ts = j.find("timestamp");
    if (ts == j.end()) throw ParseError("missing required field \"timestamp\"");
    if (!ts->is_number_integer()) throw ParseError("field \"timestamp\" must be an integer");
    t.timestamp = ts->get<std::int64_t>();
    if (t.timestamp < 0) throw ParseError("field \"timestamp\" must be >= 0");

    t.author_id = require_string(j, "author_id");
    t.text = require_string(j, "text");

    if (auto it = j.find("retweet_of_author"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError("field \"retweet_of_author\" must be a string");
        t.retweet_of_author = it->get<std::string>();
    }
    if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError("field \"labels\" must be an array of strings");
        for (const auto& v : *it) {
            if (!v.is_string()) throw ParseError("field \"labels\" must be an array of strings");
            t.labels.push_back(v.get<std::string>());
        }
    }
    return t;
}

std::string tweet_to_jsonl(const Tweet& t) {
    json j;
    j["id"] = t.id;
    j["timestamp"] = t.timestamp;
    j["author_id"] = t.author_id;
    j["text"] = t.text;
    if (t.retweet_of_author) j["retweet_of_author"] = *t.retweet_of_author;
    if (!t.labels.empty()) j["labels"] = t.labels;
    return j.dump();
}

std::optional<Tweet> JsonlTweetReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            return parse_tweet(line);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " (line " + std::to_string(line_) + ")", line_);
        }
    }
    return std::nullopt;
}

}  // namespace memestream
