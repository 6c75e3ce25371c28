#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "../oracles.hpp"
#include "criterion.hpp"
#include "memestream/rng.hpp"
#include "memestream/similarity.hpp"

using namespace memestream;

namespace {

struct Side {
    SparseVector user, content;
    IdSet tweets, diffusion;
    oracle::DenseMap user_m, content_m;
    std::set<std::uint32_t> tweets_s, diffusion_s;

    FeatureView view() const { return {&user, &content, &tweets, &diffusion}; }
};

Side random_side(std::mt19937_64& g) {
    Side s;
    const auto fill_vec = [&](SparseVector& v, oracle::DenseMap& m) {
        const std::size_t n = bounded_rand(g, 40);
        for (std::size_t i = 0; i < n; ++i) {
            const auto id = static_cast<std::uint32_t>(bounded_rand(g, 60));
            const double w = 1.0 + uniform01(g) * 9.0;
            if (m.count(id)) continue;
            m[id] = w;
            v.add(id, w);
        }
    };
    const auto fill_set = [&](IdSet& v, std::set<std::uint32_t>& m) {
        const std::size_t n = bounded_rand(g, 40);
        for (std::size_t i = 0; i < n; ++i) {
            const auto id = static_cast<std::uint32_t>(bounded_rand(g, 60));
            m.insert(id);
            v.insert(id);
        }
    };
    fill_vec(s.user, s.user_m);
    fill_vec(s.content, s.content_m);
    fill_set(s.tweets, s.tweets_s);
    fill_set(s.diffusion, s.diffusion_s);
    return s;
}

}  // namespace

// The four similarity measures against a dense brute-force oracle:
// 1000 random sparse inputs, absolute tolerance 1e-12, under 5 seconds.
TEST_CASE("acceptance: similarity oracle equivalence") {
    Criterion crit("similarity-oracle");
    Stopwatch timer;

    std::mt19937_64 g(20260808);
    for (int iter = 0; iter < 1000; ++iter) {
        const Side p = random_side(g);
        const Side q = random_side(g);

        REQUIRE(std::abs(sim_user(p.view(), q.view()) - oracle::dense_cosine(p.user_m, q.user_m)) <=
                1e-12);
        REQUIRE(std::abs(sim_content(p.view(), q.view()) -
                         oracle::dense_cosine(p.content_m, q.content_m)) <= 1e-12);
        REQUIRE(std::abs(sim_tweet(p.view(), q.view()) - oracle::set_cosine(p.tweets_s, q.tweets_s)) <=
                1e-12);
        REQUIRE(std::abs(sim_network(p.view(), q.view()) -
                         oracle::set_cosine(p.diffusion_s, q.diffusion_s)) <= 1e-12);

        // combinators stay consistent with the four measures
        const double mx = sim_max(p.view(), q.view());
        REQUIRE(mx >= sim_linear(p.view(), q.view(), SimilarityWeights{}) - 1e-12);
    }

    REQUIRE(timer.seconds() < 5.0);
    crit.ok = true;
}
