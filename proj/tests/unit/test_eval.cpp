#include <doctest.h>

#include <sstream>

#include "../oracles.hpp"
#include "memestream/eval.hpp"

using namespace memestream;

namespace {

Cover make_cover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets) {
    Cover c;
    c.universe = universe;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        IdSet s;
        for (std::uint32_t e : sets[i]) s.insert(e);
        c.names.push_back("s" + std::to_string(i));
        c.sets.push_back(std::move(s));
    }
    return c;
}

}  // namespace

TEST_CASE("confusion matrix: counts and marginals") {
    SUBCASE("identical partitions are diagonal") {
        const Cover a = make_cover(3, {{0, 1}, {2}});
        const auto m = confusion(a, a);
        CHECK(m.counts == std::vector<std::vector<std::uint64_t>>{{2, 0}, {0, 1}});
        CHECK(m.row_sum(0) == 2);
        CHECK(m.col_sum(1) == 1);
        CHECK(m.total() == 3);
    }
    SUBCASE("everything in one found cluster gives a single column of class sizes") {
        const Cover a = make_cover(4, {{0, 1}, {2, 3}});
        const Cover b = make_cover(4, {{0, 1, 2, 3}});
        const auto m = confusion(a, b);
        CHECK(m.counts == std::vector<std::vector<std::uint64_t>>{{2}, {2}});
    }
    SUBCASE("crossed partitions have all-ones entries") {
        const Cover a = make_cover(4, {{0, 1}, {2, 3}});
        const Cover b = make_cover(4, {{0, 2}, {1, 3}});
        const auto m = confusion(a, b);
        CHECK(m.counts == std::vector<std::vector<std::uint64_t>>{{1, 1}, {1, 1}});
    }
}

TEST_CASE("nmi: reference points") {
    SUBCASE("identical partitions score 1") {
        const Cover a = make_cover(6, {{0, 1, 2}, {3, 4}, {5}});
        CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("independent partitions score 0") {
        const Cover a = make_cover(4, {{0, 1}, {2, 3}});
        const Cover b = make_cover(4, {{0, 2}, {1, 3}});
        CHECK(nmi(a, b) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("a known asymmetric pair matches the entropy oracle") {
        const Cover a = make_cover(4, {{0, 1}, {2, 3}});
        const Cover b = make_cover(4, {{0, 1, 2}, {3}});
        const double expect = oracle::nmi_assignments({0, 0, 1, 1}, {0, 0, 0, 1});
        CHECK(nmi(a, b) == doctest::Approx(expect).epsilon(1e-9));
        CHECK(nmi(a, b) == doctest::Approx(0.3437110).epsilon(1e-4));
        CHECK(nmi(b, a) == doctest::Approx(nmi(a, b)).epsilon(1e-12));  // symmetric
    }
    SUBCASE("single cluster vs single cluster is the identical case") {
        const Cover a = make_cover(5, {{0, 1, 2, 3, 4}});
        CHECK(nmi(a, a) == 1.0);
    }
    SUBCASE("overlapping input is rejected") {
        const Cover a = make_cover(3, {{0, 1}, {1, 2}});
        const Cover b = make_cover(3, {{0}, {1, 2}});
        CHECK_THROWS_AS(nmi(a, b), std::invalid_argument);
    }
    SUBCASE("cluster id permutation leaves the score unchanged") {
        const Cover a = make_cover(6, {{0, 1, 2}, {3, 4}, {5}});
        const Cover b = make_cover(6, {{0, 1}, {2, 3}, {4, 5}});
        const Cover b_perm = make_cover(6, {{4, 5}, {0, 1}, {2, 3}});
        CHECK(nmi(a, b) == doctest::Approx(nmi(a, b_perm)).epsilon(1e-12));
    }
}

TEST_CASE("lfk: identical covers score exactly 1") {
    const Cover a = make_cover(10, {{0, 1, 2, 3}, {3, 4, 5}, {6, 7, 8, 9}});  // overlapping
    CHECK(lfk_nmi(a, a) == 1.0);
}

TEST_CASE("lfk: equals nmi = 1 on identical partitions") {
    const Cover a = make_cover(8, {{0, 1, 2}, {3, 4}, {5, 6, 7}});
    CHECK(lfk_nmi(a, a) == doctest::Approx(1.0));
    CHECK(nmi(a, a) == doctest::Approx(1.0));
}

TEST_CASE("lfk: symmetric and permutation-invariant") {
    const Cover a = make_cover(12, {{0, 1, 2, 3, 4}, {4, 5, 6, 7}, {8, 9, 10, 11}});
    const Cover b = make_cover(12, {{0, 1, 2}, {3, 4, 5, 6}, {7, 8, 9, 10, 11}});
    CHECK(lfk_nmi(a, b) == doctest::Approx(lfk_nmi(b, a)).epsilon(1e-12));
    const Cover b_perm = make_cover(12, {{7, 8, 9, 10, 11}, {0, 1, 2}, {3, 4, 5, 6}});
    CHECK(lfk_nmi(a, b) == doctest::Approx(lfk_nmi(a, b_perm)).epsilon(1e-12));
}

TEST_CASE("lfk: matches the independent membership-matrix oracle") {
    const Cover a = make_cover(12, {{0, 1, 2, 3, 4}, {4, 5, 6, 7}, {8, 9, 10, 11}});
    const Cover b = make_cover(12, {{0, 1, 2}, {2, 3, 4, 5, 6}, {7, 8, 9}, {9, 10, 11}});
    auto to_membership = [](const Cover& c) {
        std::vector<std::vector<std::uint8_t>> m(c.sets.size(),
                                                 std::vector<std::uint8_t>(c.universe, 0));
        for (std::size_t k = 0; k < c.sets.size(); ++k)
            for (std::uint32_t e : c.sets[k].ids()) m[k][e] = 1;
        return m;
    };
    CHECK(lfk_nmi(a, b) ==
          doctest::Approx(oracle::lfk_membership(to_membership(a), to_membership(b))).epsilon(1e-9));
}

TEST_CASE("lfk: empty cover is an error") {
    const Cover a = make_cover(3, {{0, 1, 2}});
    const Cover empty = make_cover(3, {});
    CHECK_THROWS_AS(lfk_nmi(a, empty), std::invalid_argument);
}

TEST_CASE("jaccard matrix") {
    const Cover a = make_cover(5, {{0, 1, 2}});
    const Cover b = make_cover(5, {{1, 2, 3}, {4}});
    const auto m = jaccard_matrix(a, b);
    CHECK(m[0][0] == doctest::Approx(0.5));
    CHECK(m[0][1] == 0.0);
    const auto self = jaccard_matrix(a, a);
    CHECK(self[0][0] == doctest::Approx(1.0));
}

TEST_CASE("mcr: max cluster ratio per label") {
    Cover truth = make_cover(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
    truth.names[0] = "tag";

    SUBCASE("all labeled tweets in one cluster -> 1.0") {
        const Cover found = make_cover(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
        CHECK(mcr("tag", truth, found) == doctest::Approx(1.0));
    }
    SUBCASE("best cluster holds 6 of 10 -> 0.6") {
        const Cover found = make_cover(10, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}});
        CHECK(mcr("tag", truth, found) == doctest::Approx(0.6));
    }
    SUBCASE("uniform spread over 10 singletons -> 0.1") {
        const Cover found =
            make_cover(10, {{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}});
        CHECK(mcr("tag", truth, found) == doctest::Approx(0.1));
    }
    SUBCASE("unknown label -> no value") {
        const Cover found = make_cover(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
        CHECK_FALSE(mcr("ghost", truth, found).has_value());
    }
}

TEST_CASE("evaluate_window: universe intersection and skipping") {
    ClusteringSnapshot snap;
    snap.window_end = 200;
    snap.clusters.push_back({0, {"a", "b"}});
    snap.clusters.push_back({1, {"c"}});

    GroundTruth truth;
    truth.add("a", 150, {"L1"});
    truth.add("b", 160, {"L1"});
    truth.add("c", 170, {"L2"});
    truth.add("z", 180, {"L2"});   // not in snapshot: excluded
    truth.add("a", 1000, {"L9"});  // outside the window: excluded

    WindowConfig wc;
    wc.delta_t = 100;
    wc.ell = 2;
    const WindowMetrics wm = evaluate_window(snap, truth, wc);
    CHECK_FALSE(wm.skipped);
    CHECK(wm.n_tweets == 3);
    CHECK(wm.lfk_nmi == doctest::Approx(1.0));
    CHECK(wm.nmi == doctest::Approx(1.0));
    REQUIRE(wm.label_scores.size() == 2);
    CHECK(wm.label_scores[0].label == "L1");
    CHECK(wm.label_scores[0].mcr == doctest::Approx(1.0));

    SUBCASE("no overlap between truth window and snapshot -> skipped with counts intact") {
        GroundTruth late;
        late.add("q", 150, {"L"});
        const WindowMetrics skipped = evaluate_window(snap, late, wc);
        CHECK(skipped.skipped);
        CHECK(skipped.n_clusters == 2);
    }
}

TEST_CASE("metrics csv: cumulative columns are running sums") {
    std::vector<WindowMetrics> rows(3);
    rows[0].window_end = 100;
    rows[0].lfk_nmi = 0.5;
    rows[0].nmi = 0.25;
    rows[0].n_tweets = 4;
    rows[1].window_end = 200;
    rows[1].skipped = true;
    rows[2].window_end = 300;
    rows[2].lfk_nmi = 0.25;
    rows[2].nmi = 0.5;
    rows[2].n_tweets = 2;

    std::ostringstream out;
    write_metrics_csv(out, rows);
    const std::string csv = out.str();
    CHECK(csv.find("window_end,lfk_nmi,nmi,n_clusters,n_retired,n_tweets,cum_lfk_nmi,cum_nmi\n") == 0);
    CHECK(csv.find("300,0.25,0.5,0,0,2,0.75,0.75\n") != std::string::npos);
}

TEST_CASE("ground truth: jsonl loading and pruning") {
    std::istringstream in(
        "{\"id\":\"a\",\"timestamp\":100,\"author_id\":\"u\",\"text\":\"x\",\"labels\":[\"L\"]}\n"
        "{\"id\":\"b\",\"timestamp\":200,\"author_id\":\"u\",\"text\":\"x\"}\n"
        "{\"id\":\"c\",\"timestamp\":300,\"author_id\":\"u\",\"text\":\"x\",\"labels\":[\"M\",\"N\"]}\n");
    GroundTruth gt = GroundTruth::from_jsonl(in);
    CHECK(gt.size() == 2);  // unlabeled dropped
    gt.prune_older(100);
    REQUIRE(gt.size() == 1);
    CHECK(gt.tweets()[0].id == "c");
}
