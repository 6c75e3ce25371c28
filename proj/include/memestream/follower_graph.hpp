#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>

#include "memestream/interner.hpp"
#include "memestream/sparse.hpp"

namespace memestream {

// Undirected view of a "follower_id followee_id" edge list. Users are
// interned into the shared user table and pinned for the graph's lifetime.
class FollowerGraph {
public:
    static FollowerGraph from_stream(std::istream& in, Interner& users);

    // Null when the user has no edges (isolated / absent from the file).
    const IdSet* neighborhood(std::uint32_t user) const;

    std::size_t user_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }

private:
    std::unordered_map<std::uint32_t, IdSet> adj_;
    std::size_t edges_ = 0;
};

}  // namespace memestream
