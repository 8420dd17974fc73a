#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "../oracles.hpp"
#include "symfp/error.hpp"
#include "symfp/linalg.hpp"
#include "symfp/sym_matrix.hpp"

using namespace symfp;

namespace {

std::vector<std::vector<std::int64_t>> rows_of(const SymMatrix& m, const FpContext& ctx) {
    const auto d = m.dense(ctx);
    const std::size_t n = m.dim();
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = d[i * n + j];
    return rows;
}

// Symmetric A = B·diag(c)·Bᵀ of rank at most r, in residue mode.
SymMatrix low_rank(std::size_t n, std::size_t r, const FpContext& ctx, std::uint64_t trial) {
    TrialRng rng(SamplerConfig{99, r}, trial);
    std::vector<std::vector<std::int64_t>> b(n, std::vector<std::int64_t>(r));
    for (auto& row : b)
        for (auto& x : row) x = static_cast<std::int64_t>(rng.below(ctx.p()));
    std::vector<std::int64_t> c(r);
    for (auto& x : c) x = 1 + static_cast<std::int64_t>(rng.below(ctx.p() - 1));
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < r; ++k) s = oracle::md(s + b[i][k] * c[k] % ctx.p() * b[j][k], ctx.p());
            a[i][j] = s;
        }
    return SymMatrix::from_rows(a, ctx);
}

}  // namespace

TEST_CASE("rank_fp examples") {
    const FpContext p5(5), p3(3);
    CHECK(rank_fp(SymMatrix::identity(3, p5), p5) == 3);
    CHECK(rank_fp(SymMatrix::zero(4, p5), p5) == 0);
    CHECK(rank_fp(SymMatrix::from_rows({{0, 1}, {1, 0}}, p3), p3) == 2);
    CHECK(rank_fp(SymMatrix::from_rows({{1, 1}, {1, 1}}, p3), p3) == 1);
}

TEST_CASE("rank_fp matches textbook elimination on random matrices") {
    // The oracle inverts by exhaustive search, so primes stay small.
    for (std::uint64_t p : {3ULL, 5ULL, 13ULL, 65521ULL}) {
        const FpContext ctx(p);
        for (std::uint64_t t = 0; t < 40; ++t) {
            const std::size_t n = 1 + t % 17;
            const auto a = t % 2 ? sample_symmetric_uniform(n, ctx, {5, p}, t) : low_rank(n, t % 5, ctx, t);
            REQUIRE(rank_fp(a, ctx) == oracle::rank_naive(rows_of(a, ctx), static_cast<std::int64_t>(p)));
        }
    }
}

TEST_CASE("rank_dense handles rectangular shapes and rejects bad buffers") {
    const FpContext p7(7);
    CHECK(rank_dense({1, 2, 3, 2, 4, 6}, 2, 3, p7) == 1);
    CHECK(rank_dense({1, 0, 0, 1, 1, 1}, 3, 2, p7) == 2);
    CHECK(rank_dense({}, 0, 0, p7) == 0);
    CHECK_THROWS_AS((void)rank_dense({1, 2}, 2, 2, p7), InvalidArgument);
}

TEST_CASE("rank_fp is invariant under simultaneous permutation, exhaustively for n <= 4, p = 3") {
    const FpContext ctx(3);
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t cells = SymMatrix::packed_size(n);
        std::vector<std::int32_t> packed(cells, 0);
        std::vector<std::size_t> perm(n);
        for (;;) {
            const auto a = SymMatrix::from_packed(n, SymMatrix::Mode::residue, 3, packed);
            const std::size_t r = rank_fp(a, ctx);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                REQUIRE(rank_fp(a.principal(perm), ctx) == r);
            } while (std::next_permutation(perm.begin(), perm.end()));
            std::size_t pos = 0;
            while (pos < cells && ++packed[pos] == 3) packed[pos++] = 0;
            if (pos == cells) break;
        }
    }
}

TEST_CASE("both pivot rules return the same rank on 10^3 random matrices") {
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const std::uint64_t p = t % 3 == 0 ? 3 : (t % 3 == 1 ? 101 : 2147483647);
        const FpContext ctx(p);
        const std::size_t n = 1 + t % 24;
        const auto a = t % 4 == 0 ? low_rank(n, t % 7, ctx, t) : reduce(sample_symmetric_rademacher(n, {8, 8}, t), ctx, t % p);
        REQUIRE(rank_fp(a, ctx, PivotRule::first_nonzero) == rank_fp(a, ctx, PivotRule::last_nonzero));
    }
}

TEST_CASE("kernel_basis examples") {
    const FpContext p3(3), p5(5);
    CHECK(kernel_basis(SymMatrix::identity(4, p5), p5).empty());
    const auto z = kernel_basis(SymMatrix::zero(2, p3), p3);
    CHECK(z.size() == 2);
    CHECK(rank_of_vectors(z, p3) == 2);
    const auto k = kernel_basis(SymMatrix::from_rows({{1, 2}, {2, 1}}, p3), p3);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == k[0][1]);  // span of (1, 1)
    CHECK(k[0][0] != 0);
}

TEST_CASE("kernel_basis vectors lie in the kernel, are independent and count the corank") {
    for (std::uint64_t t = 0; t < 300; ++t) {
        const std::uint64_t p = t % 2 ? 3 : 7;
        const FpContext ctx(p);
        const std::size_t n = 2 + t % 20;
        const auto a = t % 3 == 0 ? low_rank(n, t % 6, ctx, t) : reduce(sample_symmetric_rademacher(n, {4, 4}, t), ctx, t % p);
        const auto basis = kernel_basis(a, ctx);
        REQUIRE(basis.size() == n - rank_fp(a, ctx));
        for (const auto& v : basis) {
            const auto image = mat_vec(a, v, ctx);
            REQUIRE(std::all_of(image.begin(), image.end(), [](Residue x) { return x == 0; }));
        }
        REQUIRE(rank_of_vectors(basis, ctx) == basis.size());
    }
}

TEST_CASE("is_r_sparse_kernel_vector examples") {
    const FpContext p5(5);
    const auto id = SymMatrix::identity(3, p5);
    const FpVector e1{1, 0, 0};
    CHECK_FALSE(is_r_sparse_kernel_vector(id, e1, 0, p5));
    CHECK(is_r_sparse_kernel_vector(id, e1, 1, p5));
    CHECK(is_r_sparse_kernel_vector(SymMatrix::zero(3, p5), FpVector{1, 2, 3}, 0, p5));
    const auto a = SymMatrix::from_rows({{1, 4}, {4, 1}}, p5);
    const auto kern = kernel_basis(a, p5);
    REQUIRE(kern.size() == 1);
    CHECK(is_r_sparse_kernel_vector(a, kern[0], 0, p5));
    CHECK_THROWS_AS((void)is_r_sparse_kernel_vector(id, FpVector{1, 0}, 0, p5), InvalidArgument);
}

TEST_CASE("find_full_rank_principal_minor examples") {
    const FpContext p3(3);
    using S = std::vector<std::size_t>;
    CHECK(find_full_rank_principal_minor(SymMatrix::identity(3, p3), p3) == S{0, 1, 2});
    CHECK(find_full_rank_principal_minor(SymMatrix::zero(3, p3), p3).empty());
    CHECK(find_full_rank_principal_minor(SymMatrix::from_rows({{0, 1}, {1, 0}}, p3), p3) == S{0, 1});
}

TEST_CASE("find_full_rank_principal_minor returns an invertible block of full size") {
    for (std::uint64_t t = 0; t < 400; ++t) {
        const std::uint64_t p = t % 2 ? 3 : 5;
        const FpContext ctx(p);
        const std::size_t n = 1 + t % 15;
        SymMatrix a;
        if (t % 3 == 0)
            a = low_rank(n, t % 5, ctx, t);
        else if (t % 3 == 1)
            a = reduce(sample_symmetric_rademacher(n, {6, 6}, t), ctx, 1);
        else {
            // Zero diagonal: no 1×1 principal minor is invertible.
            auto rows = rows_of(sample_symmetric_uniform(n, ctx, {6, 7}, t), ctx);
            for (std::size_t i = 0; i < n; ++i) rows[i][i] = 0;
            a = SymMatrix::from_rows(rows, ctx);
        }
        const auto s = find_full_rank_principal_minor(a, ctx);
        const std::size_t r = rank_fp(a, ctx);
        REQUIRE(s.size() == r);
        if (r > 0) REQUIRE(rank_fp(a.principal(s), ctx) == r);
    }
}

TEST_CASE("sparse r-kernel search finds planted vectors and respects its budget") {
    const FpContext p3(3);
    // Columns 0 and 1 equal: e_0 - e_1 is a kernel vector of support 2.
    auto rows = rows_of(sample_symmetric_uniform(8, p3, {1, 2}, 3), p3);
    for (std::size_t i = 0; i < 8; ++i) rows[i][1] = rows[i][0];
    for (std::size_t j = 0; j < 8; ++j) rows[1][j] = rows[0][j];
    const auto a = SymMatrix::from_rows(rows, p3);
    const auto v = find_sparse_r_kernel_vector(a, 2, 0, p3);
    REQUIRE(v.has_value());
    CHECK(is_r_sparse_kernel_vector(a, *v, 0, p3));
    CHECK(std::count_if(v->begin(), v->end(), [](Residue x) { return x != 0; }) <= 2);
    CHECK_FALSE(find_sparse_r_kernel_vector(SymMatrix::identity(5, p3), 3, 0, p3).has_value());
    CHECK(find_sparse_r_kernel_vector(SymMatrix::identity(5, p3), 1, 1, p3).has_value());
    CHECK_THROWS_AS((void)find_sparse_r_kernel_vector(SymMatrix::zero(60, FpContext(101)), 4, 0, FpContext(101)),
                    BudgetExceeded);
}

TEST_CASE("no sparse n/4-kernel vectors in 10^3 Rademacher samples at n = 16, p = 3") {
    // Support bound floor(n/(16 log p)) = floor(1/log 3) = 0 at n = 16, so the
    // literal event is empty; support 1 is the smallest nontrivial case and is
    // also excluded (each column of M has at least 15 nonzero entries mod 3).
    const FpContext ctx(3);
    const std::size_t n = 16;
    const auto support = static_cast<std::size_t>(std::floor(n / (16.0 * std::log(3.0))));
    CHECK(support == 0);
    std::size_t hits = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto a = reduce(sample_symmetric_rademacher(n, {16, 3}, t), ctx, t % 3);
        hits += find_sparse_r_kernel_vector(a, support, n / 4, ctx).has_value();
        hits += find_sparse_r_kernel_vector(a, 1, n / 4, ctx).has_value();
    }
    CHECK(hits == 0);
}
