#include "memestream/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "memestream/ingest.hpp"

namespace memestream {

using nlohmann::json;

bool Cover::overlapping() const {
    std::vector<std::uint8_t> seen(universe, 0);
    for (const IdSet& s : sets)
        for (std::uint32_t e : s.ids()) {
            if (seen[e]) return true;
            seen[e] = 1;
        }
    for (std::uint8_t f : seen)
        if (!f) return true;
    return false;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t i) const {
    std::uint64_t s = 0;
    for (std::uint64_t v : counts[i]) s += v;
    return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t j) const {
    std::uint64_t s = 0;
    for (const auto& row : counts) s += row[j];
    return s;
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) s += row_sum(i);
    return s;
}

ConfusionMatrix confusion(const Cover& truth, const Cover& found) {
    ConfusionMatrix m;
    m.row_names = truth.names;
    m.col_names = found.names;
    m.counts.assign(truth.sets.size(), std::vector<std::uint64_t>(found.sets.size(), 0));
    for (std::size_t i = 0; i < truth.sets.size(); ++i)
        for (std::size_t j = 0; j < found.sets.size(); ++j)
            m.counts[i][j] = truth.sets[i].intersect_count(found.sets[j]);
    return m;
}

namespace {

void require_partition(const Cover& c, const char* which) {
    if (c.sets.empty()) throw std::invalid_argument(std::string("nmi: empty ") + which + " cover");
    if (c.overlapping())
        throw std::invalid_argument(std::string("nmi: ") + which +
                                    " cover is not a partition of the universe");
}

double xlog(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// -p ln p, the entropy contribution of one probability cell
double h(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

bool identical_families(const Cover& a, const Cover& b) {
    if (a.sets.size() != b.sets.size()) return false;
    auto key = [](const Cover& c) {
        std::vector<std::vector<std::uint32_t>> k;
        k.reserve(c.sets.size());
        for (const IdSet& s : c.sets) k.push_back(s.ids());
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(a) == key(b);
}

}  // namespace

double nmi(const Cover& a, const Cover& b) {
    require_partition(a, "truth");
    require_partition(b, "found");
    if (a.universe != b.universe) throw std::invalid_argument("nmi: covers disagree on the universe");

    const ConfusionMatrix m = confusion(a, b);
    const double n = static_cast<double>(a.universe);

    double numer = 0.0;
    for (std::size_t i = 0; i < m.counts.size(); ++i) {
        const double ni = static_cast<double>(m.row_sum(i));
        for (std::size_t j = 0; j < m.counts[i].size(); ++j) {
            const double nij = static_cast<double>(m.counts[i][j]);
            const double nj = static_cast<double>(m.col_sum(j));
            if (nij > 0.0) numer += nij * std::log(nij * n / (ni * nj));
        }
    }
    numer *= -2.0;

    double denom = 0.0;
    for (std::size_t i = 0; i < m.counts.size(); ++i) denom += xlog(static_cast<double>(m.row_sum(i)) / n);
    for (std::size_t j = 0; j < m.col_names.size(); ++j) denom += xlog(static_cast<double>(m.col_sum(j)) / n);
    denom *= n;

    if (denom == 0.0) return identical_families(a, b) ? 1.0 : 0.0;
    return numer / denom;
}

namespace {

// One side of the LFK measure: mean over X's communities of the normalized
// best-match conditional entropy against Y.
double lfk_side(const Cover& x, const Cover& y) {
    const double n = static_cast<double>(x.universe);
    double total = 0.0;
    for (const IdSet& xi : x.sets) {
        const double px = static_cast<double>(xi.size()) / n;
        const double hx = h(px) + h(1.0 - px);

        double best = std::numeric_limits<double>::infinity();
        bool any = false;
        for (const IdSet& yj : y.sets) {
            const double inter = static_cast<double>(xi.intersect_count(yj));
            const double p11 = inter / n;
            const double p10 = (static_cast<double>(xi.size()) - inter) / n;
            const double p01 = (static_cast<double>(yj.size()) - inter) / n;
            const double p00 = 1.0 - p11 - p10 - p01;
            // reject candidates whose agreement cells do not dominate
            if (h(p11) + h(p00) <= h(p01) + h(p10)) continue;
            const double py = static_cast<double>(yj.size()) / n;
            const double hy = h(py) + h(1.0 - py);
            const double joint = h(p11) + h(p10) + h(p01) + h(p00);
            best = std::min(best, joint - hy);
            any = true;
        }
        if (hx == 0.0) {
            // degenerate community (empty or the whole universe)
            total += (any && best <= 0.0) ? 0.0 : 1.0;
        } else {
            total += (any ? std::max(best, 0.0) : hx) / hx;
        }
    }
    return total / static_cast<double>(x.sets.size());
}

}  // namespace

double lfk_nmi(const Cover& a, const Cover& b) {
    if (a.sets.empty() || b.sets.empty()) throw std::invalid_argument("lfk_nmi: empty cover");
    if (a.universe != b.universe)
        throw std::invalid_argument("lfk_nmi: covers disagree on the universe");
    return 1.0 - 0.5 * (lfk_side(a, b) + lfk_side(b, a));
}

std::vector<std::vector<double>> jaccard_matrix(const Cover& truth, const Cover& found) {
    std::vector<std::vector<double>> m(truth.sets.size(), std::vector<double>(found.sets.size(), 0.0));
    for (std::size_t i = 0; i < truth.sets.size(); ++i)
        for (std::size_t j = 0; j < found.sets.size(); ++j)
            m[i][j] = IdSet::jaccard(truth.sets[i], found.sets[j]);
    return m;
}

std::optional<double> mcr(const std::string& label, const Cover& truth, const Cover& found) {
    auto it = std::find(truth.names.begin(), truth.names.end(), label);
    if (it == truth.names.end()) return std::nullopt;
    const IdSet& labeled = truth.sets[static_cast<std::size_t>(it - truth.names.begin())];
    if (labeled.empty()) return std::nullopt;
    std::size_t best = 0;
    for (const IdSet& c : found.sets) best = std::max(best, labeled.intersect_count(c));
    return static_cast<double>(best) / static_cast<double>(labeled.size());
}

GroundTruth GroundTruth::from_jsonl(std::istream& in) {
    GroundTruth gt;
    JsonlTweetReader reader(in);
    while (auto t = reader.next())
        if (!t->labels.empty()) gt.add(std::move(t->id), t->timestamp, std::move(t->labels));
    return gt;
}

void GroundTruth::add(std::string id, std::int64_t timestamp, std::vector<std::string> labels) {
    tweets_.push_back(LabeledTweet{std::move(id), timestamp, std::move(labels)});
}

void GroundTruth::prune_older(std::int64_t cutoff) {
    std::erase_if(tweets_, [cutoff](const LabeledTweet& t) { return t.timestamp <= cutoff; });
}

namespace {

// Deterministic cover -> partition reduction: each element goes to the first
// set that contains it, in the cover's set order.
Cover reduce_to_partition(const Cover& c) {
    Cover out;
    out.universe = c.universe;
    std::vector<std::int32_t> owner(c.universe, -1);
    for (std::size_t s = 0; s < c.sets.size(); ++s)
        for (std::uint32_t e : c.sets[s].ids())
            if (owner[e] < 0) owner[e] = static_cast<std::int32_t>(s);
    std::vector<IdSet> sets(c.sets.size());
    for (std::uint32_t e = 0; e < c.universe; ++e)
        if (owner[e] >= 0) sets[static_cast<std::size_t>(owner[e])].insert(e);
    for (std::size_t s = 0; s < c.sets.size(); ++s) {
        if (sets[s].empty()) continue;
        out.names.push_back(c.names[s]);
        out.sets.push_back(std::move(sets[s]));
    }
    return out;
}

}  // namespace

WindowMetrics evaluate_window(const ClusteringSnapshot& snap, const GroundTruth& truth,
                              const WindowConfig& window) {
    WindowMetrics wm;
    wm.window_end = snap.window_end;
    wm.n_clusters = snap.clusters.size();
    wm.n_retired = snap.retired.size();

    const WindowInterval interval = window_interval(snap.window_end, window);

    // universe = snapshot tweets ∩ labeled window tweets
    std::unordered_map<std::string, std::uint32_t> index;
    {
        std::vector<std::string> snap_ids;
        for (const auto* group : {&snap.clusters, &snap.retired})
            for (const SnapshotCluster& c : *group)
                snap_ids.insert(snap_ids.end(), c.tweet_ids.begin(), c.tweet_ids.end());
        std::sort(snap_ids.begin(), snap_ids.end());
        snap_ids.erase(std::unique(snap_ids.begin(), snap_ids.end()), snap_ids.end());

        std::vector<std::string> truth_ids;
        for (const LabeledTweet& t : truth.tweets())
            if (interval.contains(t.timestamp)) truth_ids.push_back(t.id);
        std::sort(truth_ids.begin(), truth_ids.end());

        std::vector<std::string> universe;
        std::set_intersection(snap_ids.begin(), snap_ids.end(), truth_ids.begin(), truth_ids.end(),
                              std::back_inserter(universe));
        for (std::uint32_t i = 0; i < universe.size(); ++i) index.emplace(std::move(universe[i]), i);
    }
    wm.n_tweets = index.size();
    if (index.empty()) {
        wm.skipped = true;
        return wm;
    }

    // truth cover: label -> universe elements, labels sorted
    Cover truth_cover;
    truth_cover.universe = index.size();
    {
        std::map<std::string, IdSet> by_label;
        for (const LabeledTweet& t : truth.tweets()) {
            if (!interval.contains(t.timestamp)) continue;
            auto it = index.find(t.id);
            if (it == index.end()) continue;
            for (const std::string& label : t.labels) by_label[label].insert(it->second);
        }
        for (auto& [label, set] : by_label) {
            truth_cover.names.push_back(label);
            truth_cover.sets.push_back(std::move(set));
        }
    }

    // found cover: live + retired clusters, ascending id, empty-restricted dropped
    Cover found_cover;
    found_cover.universe = index.size();
    {
        std::vector<const SnapshotCluster*> all;
        for (const auto* group : {&snap.clusters, &snap.retired})
            for (const SnapshotCluster& c : *group) all.push_back(&c);
        std::sort(all.begin(), all.end(),
                  [](const SnapshotCluster* a, const SnapshotCluster* b) { return a->id < b->id; });
        for (const SnapshotCluster* c : all) {
            IdSet set;
            for (const std::string& id : c->tweet_ids) {
                auto it = index.find(id);
                if (it != index.end()) set.insert(it->second);
            }
            if (set.empty()) continue;
            found_cover.names.push_back("c" + std::to_string(c->id));
            found_cover.sets.push_back(std::move(set));
        }
    }
    if (truth_cover.sets.empty() || found_cover.sets.empty()) {
        wm.skipped = true;
        return wm;
    }

    wm.lfk_nmi = lfk_nmi(truth_cover, found_cover);
    wm.nmi = nmi(reduce_to_partition(truth_cover), reduce_to_partition(found_cover));
    wm.conf = confusion(truth_cover, found_cover);
    wm.jaccard = jaccard_matrix(truth_cover, found_cover);
    for (std::size_t i = 0; i < truth_cover.names.size(); ++i) {
        LabelScore ls;
        ls.label = truth_cover.names[i];
        ls.n_label_tweets = truth_cover.sets[i].size();
        ls.mcr = *mcr(ls.label, truth_cover, found_cover);
        wm.label_scores.push_back(std::move(ls));
    }
    return wm;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<WindowMetrics>& rows) {
    out << "window_end,lfk_nmi,nmi,n_clusters,n_retired,n_tweets,cum_lfk_nmi,cum_nmi\n";
    double cum_lfk = 0.0, cum_nmi = 0.0;
    for (const WindowMetrics& w : rows) {
        if (w.skipped) {
            out << w.window_end << ",,," << w.n_clusters << ',' << w.n_retired << ",0," << fmt(cum_lfk)
                << ',' << fmt(cum_nmi) << '\n';
            continue;
        }
        cum_lfk += w.lfk_nmi;
        cum_nmi += w.nmi;
        out << w.window_end << ',' << fmt(w.lfk_nmi) << ',' << fmt(w.nmi) << ',' << w.n_clusters << ','
            << w.n_retired << ',' << w.n_tweets << ',' << fmt(cum_lfk) << ',' << fmt(cum_nmi) << '\n';
    }
}

void write_mcr_csv(std::ostream& out, const std::vector<WindowMetrics>& rows) {
    out << "window_end,label,mcr,n_label_tweets\n";
    for (const WindowMetrics& w : rows)
        for (const LabelScore& ls : w.label_scores)
            out << w.window_end << ',' << ls.label << ',' << fmt(ls.mcr) << ',' << ls.n_label_tweets
                << '\n';
}

void write_confusion_jsonl(std::ostream& out, const std::vector<WindowMetrics>& rows) {
    for (const WindowMetrics& w : rows) {
        if (w.skipped) continue;
        json j;
        j["window_end"] = w.window_end;
        j["lfk_norm"] = "mean";
        j["classes"] = w.conf.row_names;
        j["clusters"] = w.conf.col_names;
        j["counts"] = w.conf.counts;
        j["jaccard"] = w.jaccard;
        out << j.dump() << '\n';
    }
}

}  // namespace memestream
