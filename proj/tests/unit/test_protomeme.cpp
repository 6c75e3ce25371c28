#include <doctest.h>

#include <map>

#include "../helpers.hpp"
#include "memestream/protomeme.hpp"

using namespace memestream;
using test_helpers::make_tweet;
using test_helpers::stopwords;

namespace {

struct Fixture {
    InternerBundle interners;
    Featurizer featurizer{interners, stopwords()};
    TweetStore store;

    const TweetFeatures& admit(const Tweet& t) {
        TweetFeatures f = featurizer.featurize(t);
        const std::uint32_t id = f.tweet_id;
        return store.emplace(id, std::move(f)).first->second;
    }

    std::vector<TweetFeatures> batch(const std::vector<Tweet>& tweets) {
        std::vector<TweetFeatures> out;
        for (const Tweet& t : tweets) out.push_back(admit(t));
        return out;
    }
};

}  // namespace

TEST_CASE("build_protomemes: grouping by shared entity") {
    Fixture fx;
    const auto batch = fx.batch({make_tweet("1", 10, "u1", "#x hello"),
                                 make_tweet("2", 20, "u2", "#x goodbye")});
    const auto protos = build_protomemes(batch);

    // #x, phrase("hello"), phrase("goodby")
    REQUIRE(protos.size() == 3);
    const Protomeme& px = protos[0];
    CHECK(px.entity() == Entity{EntityKind::Hashtag, "#x"});
    CHECK(px.tweet_count() == 2);
    CHECK(px.user_vector().weight_sum() == 2.0);
    CHECK(px.user_vector().size() == 2);  // {u1:1, u2:1}
    CHECK(px.first_seen() == 10);
    CHECK(px.last_seen() == 20);
}

TEST_CASE("build_protomemes: the worked example maps to four protomemes") {
    Fixture fx;
    const auto batch = fx.batch({make_tweet(
        "1", 10, "ofa",
        "Tell your friends: #Obamacare is helping young people afford health insurance. "
        "(via @OFATruthTeam) pic.twitter.com/s9QHilsSjO")});
    const auto protos = build_protomemes(batch);
    REQUIRE(protos.size() == 4);
    for (const Protomeme& p : protos) CHECK(p.tweet_count() == 1);

    // many-to-many: membership totals meet or exceed the distinct tweet count
    std::size_t total = 0;
    for (const Protomeme& p : protos) total += p.tweet_count();
    CHECK(total >= batch.size());
}

TEST_CASE("protomeme diffusion set: author, mention, retweet source") {
    Fixture fx;
    const auto batch = fx.batch({make_tweet("1", 10, "u1", "hi @u2 news", "u3")});
    const auto protos = build_protomemes(batch);
    REQUIRE_FALSE(protos.empty());
    const Protomeme& p = protos[0];
    CHECK(p.diffusion_set().size() == 3);
    for (const char* user : {"u1", "u2", "u3"}) {
        const auto id = fx.interners.users.find(user);
        REQUIRE(id.has_value());
        CHECK(p.diffusion_set().contains(*id));
    }
    // authors are always a subset of the diffusion set
    for (std::uint32_t author : p.user_vector().ids()) CHECK(p.diffusion_set().contains(author));
}

TEST_CASE("merge_tweet: idempotent on duplicate ids") {
    Fixture fx;
    const TweetFeatures& f = fx.admit(make_tweet("1", 10, "u1", "#x topic"));
    Protomeme p(Entity{EntityKind::Hashtag, "#x"});
    CHECK(p.merge_tweet(f));
    const Protomeme before = p;
    CHECK_FALSE(p.merge_tweet(f));
    CHECK(p == before);
}

TEST_CASE("merge_tweet: term frequencies add up") {
    Fixture fx;
    const TweetFeatures& f = fx.admit(make_tweet("1", 10, "u1", "#x health health"));
    Protomeme p(Entity{EntityKind::Hashtag, "#x"});
    p.merge_tweet(f);
    const auto health = fx.interners.terms.find("health");
    REQUIRE(health.has_value());
    CHECK(p.content_vector().weight_of(*health) == 2.0);
}

TEST_CASE("merge_tweet: new author enters user vector and diffusion set") {
    Fixture fx;
    const auto batch = fx.batch({make_tweet("1", 10, "u1", "#x a1"), make_tweet("2", 11, "u9", "#x a2")});
    const auto protos = build_protomemes(batch);
    const Protomeme& p = protos[0];
    const auto u9 = fx.interners.users.find("u9");
    REQUIRE(u9.has_value());
    CHECK(p.user_vector().weight_of(*u9) == 1.0);
    CHECK(p.diffusion_set().contains(*u9));
}

TEST_CASE("merge_tweet: entity mismatch is a contract violation") {
    Fixture fx;
    const TweetFeatures& f = fx.admit(make_tweet("1", 10, "u1", "#x topic"));
    Protomeme p(Entity{EntityKind::Hashtag, "#y"});
    CHECK_THROWS_AS(p.merge_tweet(f), std::invalid_argument);
}

TEST_CASE("expire_tweets: total, none, partial") {
    Fixture fx;
    const auto batch = fx.batch({make_tweet("1", 10, "u1", "#x aaa"),
                                 make_tweet("2", 20, "u2", "#x bbb"),
                                 make_tweet("3", 30, "u3", "#x ccc")});
    auto protos = build_protomemes(batch);
    Protomeme& p = protos[0];

    SUBCASE("no tweets older than cutoff: unchanged") {
        const Protomeme before = p;
        CHECK(p.expire_tweets(5, fx.store));
        CHECK(p == before);
    }
    SUBCASE("all tweets expired: empty marker") { CHECK_FALSE(p.expire_tweets(30, fx.store)); }
    SUBCASE("one expired: vectors rebuilt from the two survivors") {
        REQUIRE(p.expire_tweets(10, fx.store));
        CHECK(p.tweet_count() == 2);
        CHECK(p.user_vector().weight_sum() == 2.0);
        CHECK(p.first_seen() == 20);
        CHECK(p.last_seen() == 30);
        const auto u1 = fx.interners.users.find("u1");
        REQUIRE(u1.has_value());
        CHECK(p.user_vector().weight_of(*u1) == 0.0);
        CHECK_FALSE(p.diffusion_set().contains(*u1));
    }
}

TEST_CASE("rebuild equivalence: merges and expiries match a from-scratch build") {
    Fixture fx;
    std::vector<Tweet> tweets;
    for (int i = 0; i < 40; ++i)
        tweets.push_back(make_tweet("t" + std::to_string(i), 100 + i * 7,
                                    "u" + std::to_string(i % 5),
                                    "#x word" + std::to_string(i % 7) + " extra" + std::to_string(i % 3)));
    const auto features = fx.batch(tweets);

    Protomeme incremental(Entity{EntityKind::Hashtag, "#x"});
    std::map<int, const TweetFeatures*> live;  // survives expiry, keyed by index
    std::int64_t cutoff = 0;
    for (int i = 0; i < 40; ++i) {
        incremental.merge_tweet(features[static_cast<std::size_t>(i)]);
        live[i] = &features[static_cast<std::size_t>(i)];
        if (i % 9 == 8) {
            cutoff = 100 + i * 7 - 60;
            incremental.expire_tweets(cutoff, fx.store);
            std::erase_if(live, [&](const auto& kv) { return kv.second->timestamp <= cutoff; });
        }
    }

    std::vector<TweetFeatures> surviving;
    for (const auto& [idx, f] : live) surviving.push_back(*f);
    const auto rebuilt = build_protomemes(surviving);
    REQUIRE(rebuilt.size() >= 1);
    const Protomeme& scratch = rebuilt[0];

    CHECK(incremental.tweets() == scratch.tweets());
    CHECK(incremental.user_vector() == scratch.user_vector());
    CHECK(incremental.content_vector() == scratch.content_vector());
    CHECK(incremental.tweet_ids() == scratch.tweet_ids());
    CHECK(incremental.diffusion_set() == scratch.diffusion_set());
    CHECK(incremental.first_seen() == scratch.first_seen());
    CHECK(incremental.last_seen() == scratch.last_seen());
}

TEST_CASE("featurizer release keeps interner tables bounded") {
    Fixture fx;
    std::vector<std::uint32_t> ids;
    for (int i = 0; i < 10; ++i) {
        const TweetFeatures& f =
            fx.admit(make_tweet("t" + std::to_string(i), i, "author" + std::to_string(i),
                                "unique" + std::to_string(i) + " @m" + std::to_string(i)));
        ids.push_back(f.tweet_id);
    }
    for (std::uint32_t id : ids) {
        fx.featurizer.release(fx.store.at(id));
        fx.store.erase(id);
    }
    CHECK(fx.interners.users.live() == 0);
    CHECK(fx.interners.terms.live() == 0);
    CHECK(fx.interners.tweets.live() == 0);
}
