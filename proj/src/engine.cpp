#include "memestream/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "memestream/rng.hpp"

namespace memestream {

void OutlierHistory::record(double d) {
    ++count_;
    const double delta = d - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (d - mean_);
}

double OutlierHistory::stddev() const {
    if (count_ == 0) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(count_));
}

bool OutlierHistory::is_outlier(double d, double n_sigmas) const {
    if (count_ < 2) return false;
    return d > mean_ + n_sigmas * stddev();
}

void Centroid::add_protomeme(const Protomeme& p) {
    user_vec.add_all(p.user_vector());
    content_vec.add_all(p.content_vector());
    tweet_ids.insert_all(p.tweet_ids());
    diffusion.insert_all(p.diffusion_set());
}

void Centroid::add_tweet(const TweetFeatures& f) {
    user_vec.add(f.author, 1.0);
    content_vec.add_all(f.terms);
    tweet_ids.insert(f.tweet_id);
    diffusion.insert_all(f.diffusion);
}

void Cluster::rebuild_centroid() {
    centroid = Centroid{};
    for (const auto& [key, p] : members) centroid.add_protomeme(p);
}

double b2_similarity(const SparseVector& tweet_terms, std::uint32_t author, const Centroid& c,
                     const FollowerGraph& graph, double alpha) {
    const double content = SparseVector::cosine(tweet_terms, c.content_vec);
    double network = 0.0;
    if (const IdSet* hood = graph.neighborhood(author); hood != nullptr && !hood->empty()) {
        IdSet authors;
        for (std::uint32_t uid : c.user_vec.ids()) authors.insert(uid);
        network = IdSet::jaccard(*hood, authors);
    }
    return alpha * content + (1.0 - alpha) * network;
}

Engine::Engine(EngineConfig cfg, const StopwordSet& stopwords)
    : cfg_(cfg),
      featurizer_(interners_, stopwords, &blind_, cfg.algorithm != Algorithm::Psc),
      rng_(cfg.rng_seed) {
    if (cfg_.k < 1) throw std::invalid_argument("engine: k must be >= 1");
    if (cfg_.n_sigmas <= 0.0) throw std::invalid_argument("engine: n_sigmas must be > 0");
    if (cfg_.window.delta_t <= 0) throw std::invalid_argument("engine: delta_t must be > 0");
    if (cfg_.window.ell < 1) throw std::invalid_argument("engine: ell must be >= 1");
    if (cfg_.window.model == WindowModel::Damped && cfg_.window.lambda <= 0.0)
        throw std::invalid_argument("engine: damped window requires lambda > 0");
    if (cfg_.similarity.mode == SimilarityMode::Linear && !cfg_.similarity.weights.valid())
        throw std::invalid_argument("engine: similarity weights must be in [0,1] and sum to 1");
    if (cfg_.algorithm == Algorithm::B2 && (cfg_.b2_alpha < 0.0 || cfg_.b2_alpha > 1.0))
        throw std::invalid_argument("engine: b2_alpha must be in [0,1]");
}

void Engine::load_follower_graph(std::istream& edges) {
    graph_ = std::make_unique<FollowerGraph>(FollowerGraph::from_stream(edges, interners_.users));
}

void Engine::set_blind_labels(BlindSet labels) { blind_ = std::move(labels); }

ClusteringSnapshot Engine::step(std::int64_t window_end, std::span<const Tweet> batch) {
    if (cfg_.algorithm == Algorithm::B2 && graph_ == nullptr)
        throw std::logic_error("engine: B2 requires a follower graph");

    stats_ = StepStats{};
    last_assignments_.clear();
    current_end_ = window_end;

    ClusteringSnapshot snap;
    snap.window_end = window_end;

    const std::int64_t cutoff = window_interval(window_end, cfg_.window).lower_exclusive;
    expire(cutoff, snap.retired);

    // featurize and admit the batch into the window store
    std::vector<std::uint32_t> admitted;
    admitted.reserve(batch.size());
    for (const Tweet& t : batch) {
        ++stats_.batch_tweets;
        if (t.timestamp <= cutoff || t.timestamp > window_end) {
            ++stats_.skipped_records;
            ++total_skipped_;
            continue;
        }
        TweetFeatures f = featurizer_.featurize(t);
        const std::uint32_t id = f.tweet_id;
        auto [it, fresh] = store_.try_emplace(id, std::move(f));
        if (!fresh) {  // duplicate tweet id: drop the record
            featurizer_.release(f);
            ++stats_.skipped_records;
            ++total_skipped_;
            continue;
        }
        admitted.push_back(id);
    }

    std::vector<TweetFeatures> views;
    views.reserve(admitted.size());
    for (std::uint32_t id : admitted) views.push_back(store_.at(id));
    std::vector<Protomeme> points = build_protomemes(views);
    stats_.points = points.size();

    if (!seeded_) {
        if (!points.empty()) seed(points);
    } else {
        for (Protomeme& p : points) last_assignments_.push_back(assign(std::move(p)));
    }

    for (const auto& [id, c] : clusters_) snap.clusters.push_back(materialize(c));
    return snap;
}

void Engine::expire(std::int64_t cutoff, std::vector<SnapshotCluster>& retired_out) {
    for (auto it = clusters_.begin(); it != clusters_.end();) {
        Cluster& c = it->second;
        bool any_live = false;
        for (const auto& [key, p] : c.members)
            if (p.last_seen() > cutoff) {
                any_live = true;
                break;
            }
        if (!any_live) {
            // keep the pre-expiry contents for this window's evaluation
            retired_out.push_back(materialize(c));
            for (const auto& [key, p] : c.members) key_map_.erase(key);
            it = clusters_.erase(it);
            continue;
        }
        bool changed = false;
        for (auto mit = c.members.begin(); mit != c.members.end();) {
            if (mit->second.first_seen() > cutoff) {
                ++mit;
                continue;
            }
            changed = true;
            if (!mit->second.expire_tweets(cutoff, store_)) {
                key_map_.erase(mit->first);
                mit = c.members.erase(mit);
            } else {
                ++mit;
            }
        }
        if (changed) c.rebuild_centroid();
        ++it;
    }
    std::sort(retired_out.begin(), retired_out.end(),
              [](const SnapshotCluster& a, const SnapshotCluster& b) { return a.id < b.id; });

    for (auto it = store_.begin(); it != store_.end();) {
        if (it->second.timestamp <= cutoff) {
            featurizer_.release(it->second);
            it = store_.erase(it);
        } else {
            ++it;
        }
    }
}

void Engine::seed(std::vector<Protomeme>& points) {
    const std::size_t n = points.size();
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(cfg_.k), n);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + bounded_rand(rng_, n - i);
        std::swap(idx[i], idx[j]);
    }
    std::vector<bool> is_seed(n, false);
    for (std::size_t i = 0; i < want; ++i) is_seed[idx[i]] = true;

    for (std::size_t i = 0; i < want; ++i) make_cluster(std::move(points[idx[i]]));
    seeded_ = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_seed[i]) last_assignments_.push_back(assign(std::move(points[i])));
}

double Engine::point_distance(const Protomeme& p, const Cluster& c) const {
    switch (cfg_.algorithm) {
        case Algorithm::Psc:
            return distance(p.features(), c.centroid.view(), cfg_.similarity);
        case Algorithm::B1:
            return 1.0 - SparseVector::cosine(p.content_vector(), c.centroid.content_vec);
        case Algorithm::B2: {
            const std::uint32_t author = p.user_vector().ids().empty() ? 0 : p.user_vector().ids()[0];
            return 1.0 - b2_similarity(p.content_vector(), author, c.centroid, *graph_, cfg_.b2_alpha);
        }
    }
    return 1.0;
}

AssignRecord Engine::assign(Protomeme&& p) {
    const Entity key = p.entity();

    if (cfg_.algorithm == Algorithm::Psc) {
        if (auto it = key_map_.find(key); it != key_map_.end()) {
            Cluster& c = clusters_.at(it->second);
            Protomeme& member = c.members.at(key);
            for (const TweetRef& tr : p.tweets()) {
                const TweetFeatures& f = store_.at(tr.id);
                if (member.merge_tweet(f)) c.centroid.add_tweet(f);
            }
            touch(c);
            return {key, AssignKind::ExistingByKey, c.id, -1.0};
        }
    }

    if (clusters_.empty()) {
        Cluster& c = make_cluster(std::move(p));
        return {key, AssignKind::NewUnconditional, c.id, -1.0};
    }

    double d_min = std::numeric_limits<double>::infinity();
    int best = -1;
    for (const auto& [id, c] : clusters_) {  // ascending id; ties keep the lowest
        const double d = point_distance(p, c);
        if (d < d_min) {
            d_min = d;
            best = id;
        }
    }
    const bool outlier = history_.is_outlier(d_min, cfg_.n_sigmas);
    history_.record(d_min);

    if (!outlier) {
        Cluster& c = clusters_.at(best);
        add_member(c, std::move(p));
        touch(c);
        return {key, AssignKind::Nearest, best, d_min};
    }

    // replace the least recently updated cluster
    auto victim = clusters_.begin();
    for (auto it = clusters_.begin(); it != clusters_.end(); ++it)
        if (it->second.update_seq < victim->second.update_seq) victim = it;
    for (const auto& [mkey, mp] : victim->second.members) key_map_.erase(mkey);
    clusters_.erase(victim);
    Cluster& c = make_cluster(std::move(p));
    return {key, AssignKind::ReplacedLru, c.id, d_min};
}

Cluster& Engine::make_cluster(Protomeme&& p) {
    const int id = next_cluster_id_++;
    Cluster c;
    c.id = id;
    c.created_at = c.last_updated = current_end_;
    c.update_seq = ++seq_;
    c.centroid.add_protomeme(p);
    if (cfg_.algorithm == Algorithm::Psc) key_map_[p.entity()] = id;
    c.members.emplace(p.entity(), std::move(p));
    auto [it, ok] = clusters_.emplace(id, std::move(c));
    assert(ok);
    return it->second;
}

void Engine::add_member(Cluster& c, Protomeme&& p) {
    c.centroid.add_protomeme(p);
    if (cfg_.algorithm == Algorithm::Psc) key_map_[p.entity()] = c.id;
    c.members.emplace(p.entity(), std::move(p));
}

void Engine::touch(Cluster& c) {
    c.last_updated = current_end_;
    c.update_seq = ++seq_;
}

SnapshotCluster Engine::materialize(const Cluster& c) const {
    SnapshotCluster out;
    out.id = c.id;
    out.tweet_ids.reserve(c.centroid.tweet_ids.size());
    for (std::uint32_t tid : c.centroid.tweet_ids.ids())
        out.tweet_ids.emplace_back(interners_.tweets.str(tid));
    std::sort(out.tweet_ids.begin(), out.tweet_ids.end());
    return out;
}

}  // namespace memestream
