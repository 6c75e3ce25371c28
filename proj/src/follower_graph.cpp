#include "memestream/follower_graph.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace memestream {

FollowerGraph FollowerGraph::from_stream(std::istream& in, Interner& users) {
    FollowerGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string follower, followee;
        if (!(ls >> follower >> followee))
            throw std::runtime_error("follower graph: malformed edge at line " + std::to_string(line_no));
        const std::uint32_t a = users.intern(follower);
        const std::uint32_t b = users.intern(followee);
        if (!g.adj_[a].insert(b)) users.release(b);
        if (!g.adj_[b].insert(a)) users.release(a);
        ++g.edges_;
    }
    return g;
}

const IdSet* FollowerGraph::neighborhood(std::uint32_t user) const {
    auto it = adj_.find(user);
    return it == adj_.end() ? nullptr : &it->second;
}

}  // namespace memestream
