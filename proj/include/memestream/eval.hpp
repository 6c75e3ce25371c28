#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "memestream/engine.hpp"
#include "memestream/sparse.hpp"
#include "memestream/window.hpp"

namespace memestream {

// Named, possibly overlapping sets over a universe of elements 0..universe-1.
struct Cover {
    std::vector<std::string> names;
    std::vector<IdSet> sets;
    std::size_t universe = 0;

    bool overlapping() const;  // true when some element is in 2+ sets, or uncovered
};

struct ConfusionMatrix {
    std::vector<std::string> row_names;  // truth classes
    std::vector<std::string> col_names;  // found clusters
    std::vector<std::vector<std::uint64_t>> counts;

    std::uint64_t row_sum(std::size_t i) const;
    std::uint64_t col_sum(std::size_t j) const;
    std::uint64_t total() const;
};

// counts[i][j] = |truth_i ∩ found_j|; both covers must share the universe.
ConfusionMatrix confusion(const Cover& truth, const Cover& found);

// Normalized mutual information for non-overlapping partitions (throws
// std::invalid_argument otherwise): 2*MI normalized by the summed class and
// cluster entropies. Natural logs; 0*log(0) = 0; the degenerate
// single-cluster-vs-single-cluster case is 1 when the partitions are
// identical, else 0.
double nmi(const Cover& a, const Cover& b);

// Overlapping-capable LFK normalized mutual information with the
// mean-conditional-entropy normalization. Throws std::invalid_argument on an
// empty cover.
double lfk_nmi(const Cover& a, const Cover& b);

// entry (i,j) = |truth_i ∩ found_j| / |truth_i ∪ found_j|
std::vector<std::vector<double>> jaccard_matrix(const Cover& truth, const Cover& found);

// Largest fraction of the label's tweets captured by a single cluster;
// nullopt when the label covers no tweet in the universe.
std::optional<double> mcr(const std::string& label, const Cover& truth, const Cover& found);

struct LabeledTweet {
    std::string id;
    std::int64_t timestamp = 0;
    std::vector<std::string> labels;
};

class GroundTruth {
public:
    static GroundTruth from_jsonl(std::istream& in);  // keeps labeled tweets only

    void add(std::string id, std::int64_t timestamp, std::vector<std::string> labels);
    void prune_older(std::int64_t cutoff);  // drop tweets with timestamp <= cutoff

    const std::vector<LabeledTweet>& tweets() const { return tweets_; }
    std::size_t size() const { return tweets_.size(); }

private:
    std::vector<LabeledTweet> tweets_;
};

struct LabelScore {
    std::string label;
    double mcr = 0.0;
    std::size_t n_label_tweets = 0;
};

struct WindowMetrics {
    std::int64_t window_end = 0;
    bool skipped = false;  // empty evaluation universe
    double lfk_nmi = 0.0;
    double nmi = 0.0;
    std::size_t n_clusters = 0;
    std::size_t n_retired = 0;
    std::size_t n_tweets = 0;  // size of the evaluation universe
    std::vector<LabelScore> label_scores;
    ConfusionMatrix conf;
    std::vector<std::vector<double>> jaccard;
};

// Scores one snapshot against the ground truth restricted to the window
// (T - ell*delta_t, T]. The universe is the intersection of snapshot tweets
// (live + retired) and labeled tweets of the window; covers whose restricted
// sets are empty are dropped. The nmi column reduces covers to partitions
// (lexicographically smallest label / lowest cluster id wins).
WindowMetrics evaluate_window(const ClusteringSnapshot& snap, const GroundTruth& truth,
                              const WindowConfig& window);

// window_end,lfk_nmi,nmi,n_clusters,n_retired,n_tweets,cum_lfk_nmi,cum_nmi
// (cumulative columns are running sums; skipped windows emit empty metric
// fields and do not advance the sums)
void write_metrics_csv(std::ostream& out, const std::vector<WindowMetrics>& rows);

// window_end,label,mcr,n_label_tweets
void write_mcr_csv(std::ostream& out, const std::vector<WindowMetrics>& rows);

// one JSON object per window: confusion counts plus the jaccard matrix
void write_confusion_jsonl(std::ostream& out, const std::vector<WindowMetrics>& rows);

}  // namespace memestream
