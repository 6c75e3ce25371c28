#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>

namespace memestream {

// One lowercase word per line, UTF-8; '#'-prefixed lines and blanks ignored.
class StopwordSet {
public:
    StopwordSet() = default;

    static StopwordSet from_file(const std::string& path);  // throws std::runtime_error
    static StopwordSet from_stream(std::istream& in);

    void add(std::string_view word);
    bool contains(std::string_view word) const;
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

}  // namespace memestream
