#pragma once

#include "memestream/sparse.hpp"

namespace memestream {

// Common projection of protomemes and cluster centroids, so the similarity
// measures apply to both unchanged.
struct FeatureView {
    const SparseVector* user_vec;
    const SparseVector* content_vec;
    const IdSet* tweet_ids;
    const IdSet* diffusion;
};

}  // namespace memestream
