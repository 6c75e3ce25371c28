#include "memestream/protomeme.hpp"

#include <algorithm>
#include <stdexcept>

namespace memestream {

TweetFeatures Featurizer::featurize(const Tweet& t) {
    TweetFeatures f;
    f.tweet_id = interners_.tweets.intern(t.id);
    f.timestamp = t.timestamp;
    f.author = interners_.users.intern(t.author_id);

    TokenizedTweet tok = tokenize_tweet(t.text, stopwords_, blind_);
    for (const std::string& term : tok.content_terms) {
        const std::uint32_t id = interners_.terms.intern(term);
        if (f.terms.weight_of(id) > 0.0) interners_.terms.release(id);  // one ref per distinct term
        f.terms.add(id, 1.0);
    }

    f.diffusion.insert(f.author);
    interners_.users.retain(f.author);
    for (const Entity& e : tok.entities) {
        if (e.kind == EntityKind::Mention) {
            const std::uint32_t uid = interners_.users.intern(e.key.substr(1));
            if (!f.diffusion.insert(uid)) interners_.users.release(uid);
        }
    }
    if (t.retweet_of_author) {
        const std::uint32_t uid = interners_.users.intern(*t.retweet_of_author);
        if (!f.diffusion.insert(uid)) interners_.users.release(uid);
    }

    if (self_entity_only_)
        f.entities.push_back(Entity{EntityKind::TweetSelf, t.id});
    else
        f.entities = std::move(tok.entities);
    return f;
}

void Featurizer::release(const TweetFeatures& f) {
    interners_.tweets.release(f.tweet_id);
    interners_.users.release(f.author);
    for (std::uint32_t uid : f.diffusion.ids()) interners_.users.release(uid);
    for (std::uint32_t term : f.terms.ids()) interners_.terms.release(term);
}

void Protomeme::accumulate(const TweetFeatures& f) {
    user_vec_.add(f.author, 1.0);
    content_vec_.add_all(f.terms);
    diffusion_.insert_all(f.diffusion);
    if (tweets_.empty()) {
        first_seen_ = last_seen_ = f.timestamp;
    } else {
        first_seen_ = std::min(first_seen_, f.timestamp);
        last_seen_ = std::max(last_seen_, f.timestamp);
    }
}

bool Protomeme::merge_tweet(const TweetFeatures& f) {
    if (std::find(f.entities.begin(), f.entities.end(), entity_) == f.entities.end())
        throw std::invalid_argument("tweet does not contain this protomeme's entity");
    auto it = std::lower_bound(tweets_.begin(), tweets_.end(), f.tweet_id,
                               [](const TweetRef& r, std::uint32_t id) { return r.id < id; });
    if (it != tweets_.end() && it->id == f.tweet_id) return false;
    accumulate(f);  // before the insert: accumulate() checks tweets_.empty()
    tweets_.insert(it, TweetRef{f.tweet_id, f.timestamp});
    tweet_ids_.insert(f.tweet_id);
    return true;
}

bool Protomeme::expire_tweets(std::int64_t cutoff, const TweetStore& store) {
    const bool any_expired =
        std::any_of(tweets_.begin(), tweets_.end(),
                    [cutoff](const TweetRef& r) { return r.timestamp <= cutoff; });
    if (!any_expired) return true;

    std::vector<TweetRef> survivors;
    survivors.reserve(tweets_.size());
    for (const TweetRef& r : tweets_)
        if (r.timestamp > cutoff) survivors.push_back(r);

    tweets_.clear();
    tweet_ids_.clear();
    user_vec_.clear();
    content_vec_.clear();
    diffusion_.clear();
    first_seen_ = last_seen_ = 0;
    if (survivors.empty()) return false;

    for (const TweetRef& r : survivors) {
        accumulate(store.at(r.id));
        tweets_.push_back(r);
        tweet_ids_.insert(r.id);
    }
    return true;
}

std::vector<Protomeme> build_protomemes(std::span<const TweetFeatures> batch) {
    std::vector<Protomeme> out;
    std::unordered_map<Entity, std::size_t, EntityHash> index;
    for (const TweetFeatures& f : batch) {
        for (const Entity& e : f.entities) {
            auto [it, fresh] = index.try_emplace(e, out.size());
            if (fresh) out.emplace_back(e);
            out[it->second].merge_tweet(f);
        }
    }
    return out;
}

}  // namespace memestream
