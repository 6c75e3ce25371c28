#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "memestream/follower_graph.hpp"
#include "memestream/protomeme.hpp"
#include "memestream/similarity.hpp"
#include "memestream/window.hpp"

namespace memestream {

enum class Algorithm { Psc, B1, B2 };

struct EngineConfig {
    int k = 11;
    double n_sigmas = 2.0;
    WindowConfig window;
    SimilaritySpec similarity;
    Algorithm algorithm = Algorithm::Psc;
    double b2_alpha = 0.5;
    std::uint64_t rng_seed = 0;
};

// Running mean/stddev of nearest-centroid distances, kept since the start of
// the clustering process (Welford form, O(1) memory).
class OutlierHistory {
public:
    void record(double d);
    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    double stddev() const;  // population form, sqrt(m2/count)

    // d > mean + n*sigma. With fewer than 2 recorded distances sigma is
    // undefined and nothing is an outlier.
    bool is_outlier(double d, double n_sigmas) const;

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct Centroid {
    SparseVector user_vec;     // summed member user vectors
    SparseVector content_vec;  // summed member content vectors
    IdSet tweet_ids;           // union of member tweet sets
    IdSet diffusion;           // union of member diffusion sets

    FeatureView view() const { return {&user_vec, &content_vec, &tweet_ids, &diffusion}; }
    void add_protomeme(const Protomeme& p);
    void add_tweet(const TweetFeatures& f);

    bool operator==(const Centroid&) const = default;
};

struct Cluster {
    int id = 0;
    std::unordered_map<Entity, Protomeme, EntityHash> members;
    Centroid centroid;
    std::int64_t created_at = 0;
    std::int64_t last_updated = 0;
    std::uint64_t update_seq = 0;  // strictly monotone; min is the LRU victim

    void rebuild_centroid();
};

enum class AssignKind {
    ExistingByKey,     // same protomeme key already lives in a cluster
    Nearest,           // joined the closest centroid
    ReplacedLru,       // outlier: replaced the least recently updated cluster
    NewUnconditional,  // no live clusters existed
};

struct AssignRecord {
    Entity entity;
    AssignKind kind;
    int cluster_id;
    double d_min;  // negative when no distance was computed
};

struct SnapshotCluster {
    int id;
    std::vector<std::string> tweet_ids;  // original ids, sorted
};

struct ClusteringSnapshot {
    std::int64_t window_end = 0;
    std::vector<SnapshotCluster> clusters;
    std::vector<SnapshotCluster> retired;
};

struct StepStats {
    std::size_t batch_tweets = 0;
    std::size_t skipped_records = 0;
    std::size_t points = 0;
};

// Single-writer stream clusterer: PSC over protomemes, or the per-tweet
// baselines B1 (content only) and B2 (content + follower graph), sharing the
// same expiry, outlier and LRU-replacement machinery.
class Engine {
public:
    Engine(EngineConfig cfg, const StopwordSet& stopwords);

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void load_follower_graph(std::istream& edges);
    // Must be set before the first step; labels are lowercase, no '#'.
    void set_blind_labels(BlindSet labels);

    // Advances the window to end at window_end, expires old data, clusters
    // the batch, and reports the resulting assignment snapshot. Batches must
    // be fed in increasing window_end order, one call per step.
    ClusteringSnapshot step(std::int64_t window_end, std::span<const Tweet> batch);
    ClusteringSnapshot step(std::int64_t window_end, std::initializer_list<Tweet> batch) {
        return step(window_end, std::span<const Tweet>(batch.begin(), batch.size()));
    }

    bool seeded() const { return seeded_; }
    const EngineConfig& config() const { return cfg_; }
    const OutlierHistory& history() const { return history_; }
    const std::map<int, Cluster>& clusters() const { return clusters_; }
    const std::vector<AssignRecord>& last_assignments() const { return last_assignments_; }
    const StepStats& last_stats() const { return stats_; }
    std::size_t total_skipped() const { return total_skipped_; }

    std::size_t window_tweet_count() const { return store_.size(); }
    const InternerBundle& interners() const { return interners_; }
    const TweetStore& store() const { return store_; }

private:
    void expire(std::int64_t cutoff, std::vector<SnapshotCluster>& retired_out);
    void seed(std::vector<Protomeme>& points);
    AssignRecord assign(Protomeme&& p);
    double point_distance(const Protomeme& p, const Cluster& c) const;
    Cluster& make_cluster(Protomeme&& p);
    void add_member(Cluster& c, Protomeme&& p);
    void touch(Cluster& c);
    SnapshotCluster materialize(const Cluster& c) const;

    EngineConfig cfg_;
    InternerBundle interners_;
    BlindSet blind_;
    Featurizer featurizer_;
    std::unique_ptr<FollowerGraph> graph_;

    TweetStore store_;
    std::map<int, Cluster> clusters_;
    std::unordered_map<Entity, int, EntityHash> key_map_;
    OutlierHistory history_;
    std::mt19937_64 rng_;

    bool seeded_ = false;
    int next_cluster_id_ = 0;
    std::uint64_t seq_ = 0;
    std::int64_t current_end_ = 0;
    std::vector<AssignRecord> last_assignments_;
    StepStats stats_;
    std::size_t total_skipped_ = 0;
};

// B2 similarity: alpha * content cosine + (1-alpha) * Jaccard between the
// author's follower neighborhood and the cluster's author set.
double b2_similarity(const SparseVector& tweet_terms, std::uint32_t author, const Centroid& c,
                     const FollowerGraph& graph, double alpha);

}  // namespace memestream
