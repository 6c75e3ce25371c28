#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace memestream {

struct Tweet {
    std::string id;
    std::int64_t timestamp = 0;
    std::string author_id;
    std::string text;
    std::optional<std::string> retweet_of_author;
    std::vector<std::string> labels;  // ground-truth labels, consumed by eval only
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line = 0) : std::runtime_error(std::move(msg)), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// One JSON object: required id, timestamp, author_id, text; optional
// retweet_of_author, labels. Throws ParseError on malformed JSON or a
// missing/mistyped field.
Tweet parse_tweet(std::string_view line);

std::string tweet_to_jsonl(const Tweet& t);

// Streams tweets out of newline-delimited JSON; blank lines are skipped and
// parse errors are rethrown with the 1-based line number attached.
class JsonlTweetReader {
public:
    explicit JsonlTweetReader(std::istream& in) : in_(in) {}
    std::optional<Tweet> next();
    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

}  // namespace memestream
