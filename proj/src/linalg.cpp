#include "symfp/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "symfp/error.hpp"

namespace symfp {

namespace {

// Gaussian elimination with delayed reduction. Pivot rows are fully reduced
// before use, so every update adds at most (p-1)^2 to an entry; a row is
// re-reduced once it has absorbed `budget` updates.
template <class T>
std::size_t eliminate_lazy(std::vector<T>& a, std::size_t rows, std::size_t cols, const FpContext& ctx,
                           PivotRule rule, std::uint64_t budget) {
    const T p = static_cast<T>(ctx.p());
    std::vector<std::uint64_t> updates(rows, 0);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            T& x = a[r * cols + c];
            x %= p;
            if (x != 0 && (pivot == rows || rule == PivotRule::last_nonzero)) pivot = r;
        }
        if (pivot == rows) continue;
        if (pivot != rank) {
            std::swap_ranges(a.begin() + pivot * cols + c, a.begin() + pivot * cols + cols, a.begin() + rank * cols + c);
            std::swap(updates[pivot], updates[rank]);
        }
        T* prow = a.data() + rank * cols;
        for (std::size_t k = c; k < cols; ++k) prow[k] %= p;
        const Residue inv = ctx.inv(static_cast<Residue>(prow[c]));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            T* row = a.data() + r * cols;
            const Residue f = static_cast<Residue>(row[c]);
            if (f == 0) continue;
            if (updates[r] == budget) {
                for (std::size_t k = c + 1; k < cols; ++k) row[k] %= p;
                updates[r] = 0;
            }
            const T g = static_cast<T>(ctx.neg(ctx.mul(f, inv)));
            for (std::size_t k = c + 1; k < cols; ++k) row[k] += g * prow[k];
            ++updates[r];
        }
        ++rank;
    }
    return rank;
}

struct Rref {
    std::vector<Residue> m;
    std::vector<std::size_t> pivot_cols;
};

Rref rref(std::vector<Residue> m, std::size_t rows, std::size_t cols, const FpContext& ctx) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        while (pr < rows && m[pr * cols + c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            std::swap_ranges(m.begin() + pr * cols, m.begin() + pr * cols + cols, m.begin() + rank * cols);
        Residue* prow = m.data() + rank * cols;
        const Residue inv = ctx.inv(prow[c]);
        for (std::size_t k = c; k < cols; ++k) prow[k] = ctx.mul(prow[k], inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Residue* row = m.data() + r * cols;
            const Residue f = row[c];
            if (f == 0) continue;
            for (std::size_t k = c; k < cols; ++k) row[k] = ctx.sub(row[k], ctx.mul(f, prow[k]));
        }
        pivots.push_back(c);
        ++rank;
    }
    return {std::move(m), std::move(pivots)};
}

}  // namespace

std::size_t rank_dense(std::vector<Residue> entries, std::size_t rows, std::size_t cols, const FpContext& ctx,
                       PivotRule rule) {
    if (entries.size() != rows * cols) throw InvalidArgument("rank_dense: buffer size does not match shape");
    if (rows == 0 || cols == 0) return 0;
    const std::uint64_t p = ctx.p();
    const std::uint64_t sq = (p - 1) * (p - 1);
    // 32-bit storage vectorizes well; usable whenever at least one full
    // column's worth of updates fits without overflow.
    const std::uint64_t budget32 = (std::numeric_limits<std::uint32_t>::max() - p) / sq;
    if (budget32 >= rows) {
        return eliminate_lazy<std::uint32_t>(entries, rows, cols, ctx, rule, budget32);
    }
    std::vector<std::uint64_t> wide(entries.begin(), entries.end());
    return eliminate_lazy<std::uint64_t>(wide, rows, cols, ctx, rule, ctx.lazy_budget());
}

std::size_t rank_fp(const SymMatrix& a, const FpContext& ctx, PivotRule rule) {
    const std::size_t n = a.dim();
    return rank_dense(a.dense(ctx), n, n, ctx, rule);
}

std::size_t rank_of_vectors(std::span<const FpVector> vectors, const FpContext& ctx) {
    if (vectors.empty()) return 0;
    const std::size_t cols = vectors.front().size();
    std::vector<Residue> buf;
    buf.reserve(vectors.size() * cols);
    for (const auto& v : vectors) {
        if (v.size() != cols) throw InvalidArgument("rank_of_vectors: vectors of unequal length");
        for (Residue x : v) buf.push_back(x % ctx.p());
    }
    return rank_dense(std::move(buf), vectors.size(), cols, ctx);
}

FpVector mat_vec(const SymMatrix& a, std::span<const Residue> v, const FpContext& ctx) {
    const std::size_t n = a.dim();
    if (v.size() != n) throw InvalidArgument("vector dimension does not match matrix dimension");
    const auto d = a.dense(ctx);
    FpVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = ctx.dot(std::span(d).subspan(i * n, n), v);
    return out;
}

std::vector<FpVector> kernel_basis(const SymMatrix& a, const FpContext& ctx) {
    const std::size_t n = a.dim();
    const auto [m, pivots] = rref(a.dense(ctx), n, n, ctx);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<FpVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        FpVector v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = ctx.neg(m[r * n + f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_r_sparse_kernel_vector(const SymMatrix& a, std::span<const Residue> v, std::size_t r, const FpContext& ctx) {
    const auto image = mat_vec(a, v, ctx);
    const auto nonzero = static_cast<std::size_t>(std::count_if(image.begin(), image.end(), [](Residue x) { return x != 0; }));
    return nonzero <= r;
}

std::vector<std::size_t> find_full_rank_principal_minor(const SymMatrix& a, const FpContext& ctx) {
    const std::size_t n = a.dim();
    const auto d = a.dense(ctx);
    // Echelon basis of the chosen rows: basis[j] has leading entry 1 at lead[j].
    std::vector<FpVector> basis;
    std::vector<std::size_t> lead;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
        FpVector row(d.begin() + i * n, d.begin() + (i + 1) * n);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Residue f = row[lead[j]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < n; ++k) row[k] = ctx.sub(row[k], ctx.mul(f, basis[j][k]));
        }
        const auto it = std::find_if(row.begin(), row.end(), [](Residue x) { return x != 0; });
        if (it == row.end()) continue;
        const Residue inv = ctx.inv(*it);
        for (auto& x : row) x = ctx.mul(x, inv);
        lead.push_back(static_cast<std::size_t>(it - row.begin()));
        basis.push_back(std::move(row));
        chosen.push_back(i);
    }
    if (!chosen.empty() && rank_fp(a.principal(chosen), ctx) != chosen.size())
        throw std::logic_error("principal block on an independent row set is singular");
    return chosen;
}

std::optional<FpVector> find_sparse_r_kernel_vector(const SymMatrix& a, std::size_t max_support, std::size_t r,
                                                    const FpContext& ctx) {
    const std::size_t n = a.dim();
    const std::uint64_t p = ctx.p();
    constexpr double kBudget = 1e7;
    double candidates = 0.0, binom = 1.0, scale = 1.0;
    for (std::size_t s = 1; s <= std::min(max_support, n); ++s) {
        binom = binom * static_cast<double>(n - s + 1) / static_cast<double>(s);
        if (s > 1) scale *= static_cast<double>(p - 1);
        candidates += binom * scale;
    }
    if (candidates > kBudget) throw BudgetExceeded("sparse kernel search exceeds 1e7 candidates");

    const auto d = a.dense(ctx);
    std::vector<std::size_t> support;
    FpVector values;
    FpVector image(n);
    // Depth-first over increasing supports; values of later coordinates range
    // over F_p^x, the first is fixed to 1.
    auto check = [&]() -> bool {
        std::fill(image.begin(), image.end(), 0);
        for (std::size_t j = 0; j < support.size(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                image[i] = ctx.add(image[i], ctx.mul(d[i * n + support[j]], values[j]));
        return static_cast<std::size_t>(std::count_if(image.begin(), image.end(), [](Residue x) { return x != 0; })) <= r;
    };
    std::optional<FpVector> found;
    auto recurse = [&](auto&& self, std::size_t next) -> bool {
        if (!support.empty() && check()) {
            FpVector v(n, 0);
            for (std::size_t j = 0; j < support.size(); ++j) v[support[j]] = values[j];
            found = std::move(v);
            return true;
        }
        if (support.size() == max_support) return false;
        for (std::size_t i = next; i < n; ++i) {
            support.push_back(i);
            const Residue hi = support.size() == 1 ? 1 : static_cast<Residue>(p - 1);
            for (Residue x = 1; x <= hi; ++x) {
                values.push_back(x);
                if (self(self, i + 1)) return true;
                values.pop_back();
            }
            support.pop_back();
        }
        return false;
    };
    recurse(recurse, 0);
    return found;
}

}  // namespace symfp
