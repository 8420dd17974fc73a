#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "symfp/error.hpp"
#include "symfp/exposure.hpp"
#include "symfp/linalg.hpp"

using namespace symfp;

namespace {

using Coranks = std::vector<std::size_t>;

CorankProfile profile_of(Coranks c) {
    CorankProfile p;
    p.coranks = std::move(c);
    return p;
}

}  // namespace

TEST_CASE("corank_profile examples") {
    const FpContext p3(3), p5(5);
    CHECK(corank_profile(SymMatrix::identity(3, p5), p5, 0).coranks == Coranks{0, 0, 0});
    CHECK(corank_profile(SymMatrix::identity(3, p5), p5, 1).coranks == Coranks{1, 2, 3});
    CHECK(corank_profile(SymMatrix::from_rows({{0, 1}, {1, 0}}, p3), p3, 0).coranks == Coranks{1, 0});
    CHECK(corank_profile(SymMatrix::from_rows({{1, 1}, {1, 1}}), p3, 0).coranks == Coranks{0, 1});
    CHECK(corank_profile(SymMatrix::zero(4, p3), p3, 0).coranks == Coranks{1, 2, 3, 4});
    // All-ones 3×3 sign matrix: rank 1 at every size.
    CHECK(corank_profile(SymMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), p5, 0).coranks == Coranks{0, 1, 2});
}

TEST_CASE("incremental and fresh profiles agree") {
    std::size_t checked = 0;
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 101ULL, 2147483647ULL}) {
        const FpContext ctx(p);
        for (std::uint64_t t = 0; t < 60; ++t) {
            const std::size_t n = 1 + (t * 7) % 40;
            const Residue lambda = static_cast<Residue>(t % std::min<std::uint64_t>(p, 4));
            SymMatrix m;
            switch (t % 4) {
                case 0: m = sample_symmetric_rademacher(n, {17, p}, t); break;
                case 1: m = sample_symmetric_uniform(n, ctx, {17, p}, t); break;
                case 2: {
                    // Many repeated rows: long kernel stretches and 2x2 pairings.
                    const auto base = sample_symmetric_rademacher(std::max<std::size_t>(1, n / 4), {18, p}, t);
                    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
                    const std::size_t b = base.dim();
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) rows[i][j] = base(i % b, j % b);
                    m = SymMatrix::from_rows(rows);
                    break;
                }
                default: {
                    // Sparse with zero diagonal.
                    TrialRng rng(SamplerConfig{19, p}, t);
                    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = i + 1; j < n; ++j)
                            if (rng.below(5) == 0) rows[i][j] = rows[j][i] = 1 + static_cast<std::int64_t>(rng.below(p - 1));
                    m = SymMatrix::from_rows(rows, ctx);
                }
            }
            const auto inc = corank_profile(m, ctx, lambda, ProfileMethod::incremental);
            const auto fresh = corank_profile(m, ctx, lambda, ProfileMethod::fresh);
            REQUIRE(inc.coranks == fresh.coranks);
            REQUIRE(inc.is_valid_walk());
            REQUIRE(inc.coranks.back() == n - rank_fp(m.mode() == SymMatrix::Mode::residue ? shift_diagonal(m, ctx, lambda)
                                                                                           : reduce(m, ctx, lambda),
                                                      ctx));
            ++checked;
        }
    }
    CHECK(checked == 300);
}

TEST_CASE("exposure kernel vectors span the kernel of every leading block") {
    const FpContext ctx(3);
    for (std::uint64_t t = 0; t < 30; ++t) {
        const std::size_t n = 20;
        const auto m = reduce(sample_symmetric_rademacher(n, {5, 5}, t), ctx, t % 3);
        CongruenceExposure exp(ctx, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Residue> col(i);
            for (std::size_t j = 0; j < i; ++j) col[j] = static_cast<Residue>(m(j, i));
            exp.extend(col, static_cast<Residue>(m(i, i)));
            const auto lead = m.leading(i + 1);
            const auto kern = exp.kernel_vectors();
            REQUIRE(kern.size() == exp.corank());
            REQUIRE(kern.size() == i + 1 - rank_fp(lead, ctx));
            for (const auto& v : kern) {
                REQUIRE(v.size() == i + 1);
                const auto image = mat_vec(lead, v, ctx);
                REQUIRE(std::all_of(image.begin(), image.end(), [](Residue x) { return x == 0; }));
            }
            REQUIRE(rank_of_vectors(kern, ctx) == kern.size());
        }
    }
}

TEST_CASE("is_valid_walk") {
    CHECK(profile_of({0, 1, 0, 0, 1, 2}).is_valid_walk());
    CHECK(profile_of({1, 2, 3}).is_valid_walk());
    CHECK_FALSE(profile_of({2}).is_valid_walk());
    CHECK_FALSE(profile_of({0, 2}).is_valid_walk());
}

TEST_CASE("transition_counts examples") {
    const CorankProfile ps[] = {profile_of({0, 1, 0, 0, 1}), profile_of({1, 1, 2, 1, 0})};
    // Times 1..4: steps (0→1, 1→0, 0→0, 0→1) and (1→1, 1→2, 2→1, 1→0).
    const auto rows = transition_counts(ps, 1, 4);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].k == 0);
    CHECK(rows[0].counts == std::array<std::uint64_t, 3>{0, 1, 2});
    CHECK(rows[0].total == 3);
    CHECK(*rows[0].frequency[step_up] == doctest::Approx(2.0 / 3.0));
    CHECK(*rows[0].std_error[step_up] == doctest::Approx(std::sqrt(2.0 / 9.0 / 3.0)));
    CHECK(rows[1].counts == std::array<std::uint64_t, 3>{2, 1, 1});
    CHECK(rows[2].counts == std::array<std::uint64_t, 3>{1, 0, 0});

    const auto late = transition_counts(ps, 3, 4);
    REQUIRE(late.size() == 3);
    CHECK(late[0].counts == std::array<std::uint64_t, 3>{0, 1, 1});
    CHECK(late[1].counts == std::array<std::uint64_t, 3>{1, 0, 0});
    CHECK(late[2].counts == std::array<std::uint64_t, 3>{1, 0, 0});
}

TEST_CASE("transition_counts leaves unseen rows without frequencies") {
    const CorankProfile ps[] = {profile_of({1, 2, 3, 2})};
    const auto rows = transition_counts(ps, 2, 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].total == 0);
    CHECK_FALSE(rows[0].frequency[0].has_value());
    CHECK_FALSE(rows[1].std_error[1].has_value());
    CHECK(rows[2].counts == std::array<std::uint64_t, 3>{0, 0, 1});
    CHECK(rows[3].counts == std::array<std::uint64_t, 3>{1, 0, 0});
}

TEST_CASE("transition_counts rejects bad ranges") {
    const CorankProfile ps[] = {profile_of({0, 1, 0})};
    CHECK_THROWS_AS((void)transition_counts(ps, 0, 1), InvalidArgument);
    CHECK_THROWS_AS((void)transition_counts(ps, 2, 1), InvalidArgument);
    CHECK_THROWS_AS((void)transition_counts(ps, 1, 3), InvalidArgument);
    CHECK_NOTHROW((void)transition_counts(ps, 1, 2));
}
