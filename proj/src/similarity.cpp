#include "memestream/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memestream {

double sim_user(const FeatureView& p, const FeatureView& q) {
    return SparseVector::cosine(*p.user_vec, *q.user_vec);
}

double sim_content(const FeatureView& p, const FeatureView& q) {
    return SparseVector::cosine(*p.content_vec, *q.content_vec);
}

double sim_tweet(const FeatureView& p, const FeatureView& q) {
    return IdSet::cosine(*p.tweet_ids, *q.tweet_ids);
}

double sim_network(const FeatureView& p, const FeatureView& q) {
    return IdSet::cosine(*p.diffusion, *q.diffusion);
}

bool SimilarityWeights::valid() const {
    for (double w : {user, content, tweet, network})
        if (w < 0.0 || w > 1.0) return false;
    return std::abs(user + content + tweet + network - 1.0) <= 1e-9;
}

double sim_linear(const FeatureView& p, const FeatureView& q, const SimilarityWeights& w) {
    if (!w.valid()) throw std::invalid_argument("similarity weights must be in [0,1] and sum to 1");
    return w.user * sim_user(p, q) + w.content * sim_content(p, q) + w.tweet * sim_tweet(p, q) +
           w.network * sim_network(p, q);
}

double sim_max(const FeatureView& p, const FeatureView& q) {
    return std::max({sim_user(p, q), sim_content(p, q), sim_tweet(p, q), sim_network(p, q)});
}

double similarity(const FeatureView& p, const FeatureView& q, const SimilaritySpec& spec) {
    return spec.mode == SimilarityMode::Max ? sim_max(p, q) : sim_linear(p, q, spec.weights);
}

double distance(const FeatureView& p, const FeatureView& q, const SimilaritySpec& spec) {
    return std::clamp(1.0 - similarity(p, q, spec), 0.0, 1.0);
}

}  // namespace memestream
