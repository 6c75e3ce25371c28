#include <doctest.h>

#include <random>
#include <vector>

#include "memestream/kernels.hpp"
#include "memestream/rng.hpp"

using namespace memestream;

namespace {

struct SparsePair {
    std::vector<std::uint32_t> a_ids, b_ids;
    std::vector<double> a_w, b_w;
};

SparsePair random_pair(std::mt19937_64& g, std::size_t max_len, std::uint32_t id_range) {
    SparsePair p;
    auto gen_side = [&](std::vector<std::uint32_t>& ids, std::vector<double>& w) {
        const std::size_t len = bounded_rand(g, max_len + 1);
        std::vector<std::uint32_t> raw;
        for (std::size_t i = 0; i < len; ++i)
            raw.push_back(static_cast<std::uint32_t>(bounded_rand(g, id_range)));
        std::sort(raw.begin(), raw.end());
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        ids = raw;
        for (std::size_t i = 0; i < ids.size(); ++i) w.push_back(1.0 + uniform01(g) * 9.0);
    };
    gen_side(p.a_ids, p.a_w);
    gen_side(p.b_ids, p.b_w);
    return p;
}

}  // namespace

TEST_CASE("scalar kernels: merge semantics on fixed inputs") {
    const auto& ops = kernels::scalar_ops();
    const std::vector<std::uint32_t> a = {1, 3, 5, 9};
    const std::vector<double> aw = {1.0, 2.0, 3.0, 4.0};
    const std::vector<std::uint32_t> b = {3, 4, 9, 20};
    const std::vector<double> bw = {10.0, 10.0, 0.5, 1.0};

    CHECK(ops.sparse_dot(a.data(), aw.data(), a.size(), b.data(), bw.data(), b.size()) ==
          doctest::Approx(2.0 * 10.0 + 4.0 * 0.5));
    CHECK(ops.intersect_count(a.data(), a.size(), b.data(), b.size()) == 2);
    CHECK(ops.sum_squares(aw.data(), aw.size()) == doctest::Approx(1 + 4 + 9 + 16));
    CHECK(ops.sparse_dot(a.data(), aw.data(), 0, b.data(), bw.data(), b.size()) == 0.0);
    CHECK(ops.intersect_count(a.data(), 0, b.data(), 0) == 0);
}

TEST_CASE("avx2 kernels match the scalar reference") {
    const kernels::Ops* avx2 = kernels::avx2_ops();
    if (avx2 == nullptr) return;  // CPU or build without AVX2
    const auto& ref = kernels::scalar_ops();

    std::mt19937_64 g(1234);
    for (int iter = 0; iter < 2000; ++iter) {
        // small id range in half the cases forces dense overlap
        const std::uint32_t range = (iter % 2 == 0) ? 40 : 100000;
        const SparsePair p = random_pair(g, 150, range);

        const double ds = ref.sparse_dot(p.a_ids.data(), p.a_w.data(), p.a_ids.size(),
                                         p.b_ids.data(), p.b_w.data(), p.b_ids.size());
        const double dv = avx2->sparse_dot(p.a_ids.data(), p.a_w.data(), p.a_ids.size(),
                                           p.b_ids.data(), p.b_w.data(), p.b_ids.size());
        CHECK(ds == dv);  // same match order, bit-exact

        CHECK(ref.intersect_count(p.a_ids.data(), p.a_ids.size(), p.b_ids.data(), p.b_ids.size()) ==
              avx2->intersect_count(p.a_ids.data(), p.a_ids.size(), p.b_ids.data(), p.b_ids.size()));

        const double ss = ref.sum_squares(p.a_w.data(), p.a_w.size());
        const double sv = avx2->sum_squares(p.a_w.data(), p.a_w.size());
        CHECK(ss == doctest::Approx(sv).epsilon(1e-12));
    }
}

TEST_CASE("avx2 kernels: adversarial layouts") {
    const kernels::Ops* avx2 = kernels::avx2_ops();
    if (avx2 == nullptr) return;
    const auto& ref = kernels::scalar_ops();

    auto check_pair = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        const std::vector<double> aw(a.size(), 2.0), bw(b.size(), 3.0);
        CHECK(ref.intersect_count(a.data(), a.size(), b.data(), b.size()) ==
              avx2->intersect_count(a.data(), a.size(), b.data(), b.size()));
        CHECK(ref.sparse_dot(a.data(), aw.data(), a.size(), b.data(), bw.data(), b.size()) ==
              avx2->sparse_dot(a.data(), aw.data(), a.size(), b.data(), bw.data(), b.size()));
    };

    std::vector<std::uint32_t> identical(100);
    for (std::uint32_t i = 0; i < 100; ++i) identical[i] = i * 3;
    check_pair(identical, identical);

    std::vector<std::uint32_t> evens, odds;
    for (std::uint32_t i = 0; i < 64; ++i) {
        evens.push_back(2 * i);
        odds.push_back(2 * i + 1);
    }
    check_pair(evens, odds);  // disjoint, interleaved
    check_pair(identical, {});
    check_pair({7}, identical);
    check_pair({0, 1, 2, 3, 4, 5, 6}, {0, 1, 2, 3, 4, 5});  // below SIMD width
}

TEST_CASE("active kernels are one of the registered variants") {
    const auto& active = kernels::active();
    const bool is_scalar = active.sparse_dot == kernels::scalar_ops().sparse_dot;
    const bool is_avx2 =
        kernels::avx2_ops() != nullptr && active.sparse_dot == kernels::avx2_ops()->sparse_dot;
    CHECK((is_scalar || is_avx2));
}
