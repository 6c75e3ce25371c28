#include "memestream/stopwords.hpp"

#include <fstream>
#include <stdexcept>

namespace memestream {

StopwordSet StopwordSet::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword file: " + path);
    return from_stream(in);
}

StopwordSet StopwordSet::from_stream(std::istream& in) {
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        set.add(line);
    }
    return set;
}

void StopwordSet::add(std::string_view word) { words_.emplace(word); }

bool StopwordSet::contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
}

}  // namespace memestream
