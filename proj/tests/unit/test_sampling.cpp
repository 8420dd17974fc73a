#include <doctest.h>

#include <array>
#include <cmath>

#include "symfp/error.hpp"
#include "symfp/parallel.hpp"
#include "symfp/rng.hpp"
#include "symfp/sym_matrix.hpp"

using namespace symfp;

TEST_CASE("seed derivation matches frozen splitmix64 values") {
    // Frozen from an independent arbitrary-precision evaluation of
    // mix64(mix64(mix64(master) ^ stream) ^ trial).
    CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(derive_seed({1, 0}, 0) == 0xb18a02f46d8d86c3ULL);
    CHECK(derive_seed({42, 7}, 3) == 0xf55e4254d4655539ULL);
    CHECK(derive_seed({42, 7}, 3) != derive_seed({42, 7}, 4));
    CHECK(derive_seed({42, 7}, 3) != derive_seed({42, 8}, 3));
}

TEST_CASE("TrialRng draws are in range and roughly balanced") {
    TrialRng rng(SamplerConfig{9, 1}, 0);
    int sum = 0;
    std::array<int, 7> hist{};
    for (int i = 0; i < 70000; ++i) {
        const int s = rng.sign();
        REQUIRE((s == 1 || s == -1));
        sum += s;
        const auto b = rng.below(7);
        REQUIRE(b < 7);
        ++hist[b];
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    CHECK(std::abs(sum) < 5 * 265);  // 5 sd of a 70000-step walk
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
    CHECK(rng.below(1) == 0);
}

TEST_CASE("run_trials returns trial order independent of the worker count") {
    auto fn = [](std::uint64_t t) {
        TrialRng rng(SamplerConfig{5, 5}, t);
        return rng.next();
    };
    const auto one = run_trials(37, 1, fn);
    for (std::size_t w : {2u, 3u, 8u, 64u}) CHECK(run_trials(37, w, fn) == one);
    CHECK(run_trials(0, 4, fn).empty());
}

TEST_CASE("run_trials propagates worker exceptions") {
    auto fn = [](std::uint64_t t) -> int {
        if (t == 5) throw InvalidArgument("boom");
        return 0;
    };
    CHECK_THROWS_AS(run_trials(10, 3, fn), InvalidArgument);
    CHECK_THROWS_AS(run_trials(10, 1, fn), InvalidArgument);
}

TEST_CASE("sample_symmetric_rademacher basics") {
    const SamplerConfig cfg{123, 0};
    const auto m1 = sample_symmetric_rademacher(1, cfg, 0);
    CHECK(m1.dim() == 1);
    CHECK((m1(0, 0) == 1 || m1(0, 0) == -1));
    CHECK(sample_symmetric_rademacher(3, cfg, 4) == sample_symmetric_rademacher(3, cfg, 4));
    CHECK(sample_symmetric_rademacher(30, cfg, 4) != sample_symmetric_rademacher(30, cfg, 5));
    CHECK_THROWS_AS(sample_symmetric_rademacher(0, cfg, 0), InvalidArgument);
    const auto m = sample_symmetric_rademacher(20, cfg, 1);
    CHECK(m.mode() == SymMatrix::Mode::sign);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 20; ++j) CHECK(m(i, j) == m(j, i));
}

TEST_CASE("Rademacher entries have mean near zero at every position") {
    // 10^4 trials: a 3-sigma band is 0.03, the allowed band 0.05.
    const std::size_t n = 50, trials = 10000;
    std::vector<long> sums(SymMatrix::packed_size(n), 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto m = sample_symmetric_rademacher(n, {2024, 0}, t);
        const auto packed = m.packed();
        for (std::size_t i = 0; i < packed.size(); ++i) sums[i] += packed[i];
    }
    double worst = 0.0;
    for (long s : sums) worst = std::max(worst, std::fabs(static_cast<double>(s) / trials));
    CHECK(worst <= 0.05);
}

TEST_CASE("sample_symmetric_uniform basics and residue frequencies") {
    const FpContext ctx3(3);
    const auto m = sample_symmetric_uniform(1, ctx3, {1, 1}, 0);
    CHECK(m(0, 0) >= 0);
    CHECK(m(0, 0) <= 2);
    CHECK(m.mode() == SymMatrix::Mode::residue);
    CHECK(sample_symmetric_uniform(6, ctx3, {1, 1}, 9) == sample_symmetric_uniform(6, ctx3, {1, 1}, 9));

    const FpContext ctx(5);
    const std::size_t n = 40, trials = 10000;
    std::array<std::uint64_t, 5> hist{};
    for (std::size_t t = 0; t < trials; ++t) {
        const auto m5 = sample_symmetric_uniform(n, ctx, {77, 3}, t);
        for (auto v : m5.packed()) ++hist[static_cast<std::size_t>(v)];
    }
    const double total = static_cast<double>(trials * SymMatrix::packed_size(n));
    for (auto h : hist) {
        CHECK(static_cast<double>(h) / total >= 0.19);
        CHECK(static_cast<double>(h) / total <= 0.21);
    }
}

TEST_CASE("reduce examples") {
    const FpContext p3(3), p5(5);
    CHECK(reduce(SymMatrix::from_rows({{1}}), p3, 1) == SymMatrix::from_rows({{0}}, p3));
    CHECK(reduce(SymMatrix::from_rows({{1, -1}, {-1, 1}}), p3, 0) == SymMatrix::from_rows({{1, 2}, {2, 1}}, p3));
    CHECK(reduce(SymMatrix::from_rows({{-1}}), p5, 2) == SymMatrix::from_rows({{2}}, p5));
    CHECK_THROWS_AS((void)reduce(SymMatrix::identity(2, p5), p5, 0), InvalidArgument);
}

TEST_CASE("shift_diagonal subtracts lambda on the diagonal only") {
    const FpContext p7(7);
    const auto a = SymMatrix::from_rows({{1, 3}, {3, 0}}, p7);
    CHECK(shift_diagonal(a, p7, 2) == SymMatrix::from_rows({{6, 3}, {3, 5}}, p7));
    CHECK_THROWS_AS((void)shift_diagonal(a, FpContext(5), 1), InvalidArgument);
}

TEST_CASE("constructors validate their input") {
    const FpContext p3(3);
    CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}, {2, 1}}), InvalidArgument);   // not ±1
    CHECK_THROWS_AS(SymMatrix::from_rows({{1, 1}, {-1, 1}}), InvalidArgument);  // not symmetric
    CHECK_THROWS_AS(SymMatrix::from_rows({{1, 1}}), InvalidArgument);           // not square
    CHECK_THROWS_AS(SymMatrix::from_packed(2, SymMatrix::Mode::residue, 3, {0, 1, 3}), InvalidArgument);
    CHECK_THROWS_AS(SymMatrix::from_packed(2, SymMatrix::Mode::sign, 0, {1, 1}), InvalidArgument);
    CHECK_NOTHROW(SymMatrix::from_integer_rows({{0, 5}, {5, -3}}));
    CHECK(SymMatrix::from_rows({{4, -1}, {-1, 0}}, p3) == SymMatrix::from_rows({{1, 2}, {2, 0}}, p3));
}

TEST_CASE("packed layout makes leading blocks prefixes") {
    const auto m = sample_symmetric_rademacher(9, {3, 3}, 0);
    for (std::size_t t = 1; t <= 9; ++t) {
        const auto lead = m.leading(t);
        REQUIRE(lead.dim() == t);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j) CHECK(lead(i, j) == m(i, j));
        CHECK(std::equal(lead.packed().begin(), lead.packed().end(), m.packed().begin()));
    }
    const std::size_t idx[] = {4, 1, 7};
    const auto sub = m.principal(idx);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(sub(i, j) == m(idx[i], idx[j]));
}

TEST_CASE("dense and block_diagonal") {
    const FpContext p5(5);
    const auto a = SymMatrix::from_rows({{1, -1}, {-1, 1}});
    CHECK(a.dense(p5) == std::vector<Residue>{1, 4, 4, 1});
    const SymMatrix blocks[] = {a, SymMatrix::from_rows({{-1}})};
    const auto b = block_diagonal(blocks);
    CHECK(b.dim() == 3);
    CHECK(b.mode() == SymMatrix::Mode::integer);
    CHECK(b(0, 2) == 0);
    CHECK(b(2, 2) == -1);
    CHECK(b(0, 1) == -1);
    CHECK_THROWS_AS((void)SymMatrix::from_rows({{1}}, FpContext(3)).dense(p5), InvalidArgument);
}
