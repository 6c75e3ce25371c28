#pragma once

#include "memestream/features.hpp"

namespace memestream {

// The four protomeme similarity measures. All are symmetric, in [0, 1], and
// return 0 when either side's feature is empty (no evidence, no similarity).
double sim_user(const FeatureView& p, const FeatureView& q);
double sim_content(const FeatureView& p, const FeatureView& q);
double sim_tweet(const FeatureView& p, const FeatureView& q);
double sim_network(const FeatureView& p, const FeatureView& q);

struct SimilarityWeights {
    double user = 0.25;
    double content = 0.25;
    double tweet = 0.25;
    double network = 0.25;

    // weights must sum to 1 within 1e-9, each in [0, 1]
    bool valid() const;
};

// Weighted combination; requires valid weights.
double sim_linear(const FeatureView& p, const FeatureView& q, const SimilarityWeights& w);

// Maximum of the four measures.
double sim_max(const FeatureView& p, const FeatureView& q);

enum class SimilarityMode { Max, Linear };

struct SimilaritySpec {
    SimilarityMode mode = SimilarityMode::Max;
    SimilarityWeights weights;
};

double similarity(const FeatureView& p, const FeatureView& q, const SimilaritySpec& spec);

// 1 - similarity under the chosen mode.
double distance(const FeatureView& p, const FeatureView& q, const SimilaritySpec& spec);

}  // namespace memestream
