#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "memestream/entities.hpp"
#include "memestream/features.hpp"
#include "memestream/ingest.hpp"
#include "memestream/interner.hpp"
#include "memestream/sparse.hpp"

namespace memestream {

// Interned per-tweet features. Owned by the window store; protomemes and
// centroids only aggregate them.
struct TweetFeatures {
    std::uint32_t tweet_id = 0;
    std::int64_t timestamp = 0;
    std::uint32_t author = 0;
    SparseVector terms;   // content term -> TF
    IdSet diffusion;      // author ∪ mentioned users ∪ retweeted author
    std::vector<Entity> entities;
};

// Shared per-window payload store, keyed by interned tweet id.
using TweetStore = std::unordered_map<std::uint32_t, TweetFeatures>;

struct InternerBundle {
    Interner users;
    Interner terms;
    Interner tweets;
};

// Turns parsed tweets into interned features. Every interned occurrence holds
// one reference; release() must be called exactly once per featurized tweet
// when it leaves the window.
class Featurizer {
public:
    Featurizer(InternerBundle& interners, const StopwordSet& stopwords,
               const BlindSet* blind = nullptr, bool self_entity_only = false)
        : interners_(interners), stopwords_(stopwords), blind_(blind),
          self_entity_only_(self_entity_only) {}

    TweetFeatures featurize(const Tweet& t);
    void release(const TweetFeatures& f);

private:
    InternerBundle& interners_;
    const StopwordSet& stopwords_;
    const BlindSet* blind_;
    bool self_entity_only_;
};

struct TweetRef {
    std::uint32_t id = 0;
    std::int64_t timestamp = 0;

    bool operator==(const TweetRef&) const = default;
};

class Protomeme {
public:
    explicit Protomeme(Entity entity) : entity_(std::move(entity)) {}

    // Throws std::invalid_argument when the tweet does not contain the
    // protomeme's entity; returns false (and changes nothing) when the tweet
    // id is already a member.
    bool merge_tweet(const TweetFeatures& f);

    // Drops tweets with timestamp <= cutoff and rebuilds the cached vectors
    // from the survivors' stored features. Returns false when no tweets
    // remain (the empty marker).
    bool expire_tweets(std::int64_t cutoff, const TweetStore& store);

    const Entity& entity() const { return entity_; }
    const std::vector<TweetRef>& tweets() const { return tweets_; }
    std::size_t tweet_count() const { return tweets_.size(); }
    const SparseVector& user_vector() const { return user_vec_; }
    const SparseVector& content_vector() const { return content_vec_; }
    const IdSet& tweet_ids() const { return tweet_ids_; }
    const IdSet& diffusion_set() const { return diffusion_; }
    std::int64_t first_seen() const { return first_seen_; }
    std::int64_t last_seen() const { return last_seen_; }

    FeatureView features() const { return {&user_vec_, &content_vec_, &tweet_ids_, &diffusion_}; }

    bool operator==(const Protomeme&) const = default;

private:
    void accumulate(const TweetFeatures& f);

    Entity entity_;
    std::vector<TweetRef> tweets_;  // sorted by interned id
    IdSet tweet_ids_;
    SparseVector user_vec_;
    SparseVector content_vec_;
    IdSet diffusion_;
    std::int64_t first_seen_ = 0;
    std::int64_t last_seen_ = 0;
};

// Groups a step's tweets by entity, one protomeme per distinct (kind, key),
// in order of first appearance.
std::vector<Protomeme> build_protomemes(std::span<const TweetFeatures> batch);

}  // namespace memestream
