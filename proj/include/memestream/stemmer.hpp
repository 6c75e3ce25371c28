#pragma once

#include <string>
#include <string_view>

namespace memestream {

// Porter stemming algorithm, original 1980 rule set. Input is expected to be
// a lowercase ASCII word; words of length <= 2 and tokens containing
// non-letters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace memestream
