#include "symfp/sym_matrix.hpp"

#include <cstdint>
#include <string>

#include "symfp/error.hpp"

namespace symfp {

namespace {

void require_square_symmetric(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidArgument("matrix dimension must be at least 1");
    for (const auto& r : rows)
        if (r.size() != n) throw InvalidArgument("matrix rows must all have length " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rows[i][j] != rows[j][i]) throw InvalidArgument("matrix is not symmetric");
}

void validate(std::size_t n, SymMatrix::Mode mode, Residue modulus, const std::vector<std::int32_t>& packed) {
    if (packed.size() != SymMatrix::packed_size(n)) throw InvalidArgument("packed length does not match dimension");
    for (std::int32_t v : packed) {
        const bool bad = mode == SymMatrix::Mode::sign      ? (v != 1 && v != -1)
                         : mode == SymMatrix::Mode::residue ? (v < 0 || static_cast<Residue>(v) >= modulus)
                                                            : false;
        if (bad)
            throw InvalidArgument("matrix entry out of range for its mode: " + std::to_string(v));
    }
}

}  // namespace

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    require_square_symmetric(rows);
    const std::size_t n = rows.size();
    std::vector<std::int32_t> packed(packed_size(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) packed[index(i, j)] = static_cast<std::int32_t>(rows[i][j]);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i)
            if (rows[i][j] != 1 && rows[i][j] != -1) throw InvalidArgument("sign-mode entries must be +1 or -1");
    return from_packed(n, Mode::sign, 0, std::move(packed));
}

SymMatrix SymMatrix::from_integer_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    require_square_symmetric(rows);
    const std::size_t n = rows.size();
    std::vector<std::int32_t> packed(packed_size(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) {
            if (rows[i][j] < INT32_MIN || rows[i][j] > INT32_MAX) throw InvalidArgument("integer entry exceeds int32");
            packed[index(i, j)] = static_cast<std::int32_t>(rows[i][j]);
        }
    return from_packed(n, Mode::integer, 0, std::move(packed));
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, const FpContext& ctx) {
    require_square_symmetric(rows);
    const std::size_t n = rows.size();
    std::vector<std::int32_t> packed(packed_size(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) packed[index(i, j)] = static_cast<std::int32_t>(ctx.reduce(rows[i][j]));
    return from_packed(n, Mode::residue, ctx.p(), std::move(packed));
}

SymMatrix SymMatrix::from_packed(std::size_t n, Mode mode, Residue modulus, std::vector<std::int32_t> packed) {
    if (n == 0) throw InvalidArgument("matrix dimension must be at least 1");
    validate(n, mode, modulus, packed);
    SymMatrix m;
    m.n_ = n;
    m.mode_ = mode;
    m.modulus_ = mode == Mode::residue ? modulus : 0;
    m.data_ = std::move(packed);
    return m;
}

SymMatrix SymMatrix::zero(std::size_t n, const FpContext& ctx) {
    return from_packed(n, Mode::residue, ctx.p(), std::vector<std::int32_t>(packed_size(n), 0));
}

SymMatrix SymMatrix::identity(std::size_t n, const FpContext& ctx) {
    std::vector<std::int32_t> packed(packed_size(n), 0);
    for (std::size_t i = 0; i < n; ++i) packed[index(i, i)] = 1;
    return from_packed(n, Mode::residue, ctx.p(), std::move(packed));
}

SymMatrix SymMatrix::leading(std::size_t t) const {
    if (t == 0 || t > n_) throw InvalidArgument("leading block size out of range");
    SymMatrix m = *this;
    m.n_ = t;
    m.data_.resize(packed_size(t));
    return m;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> indices) const {
    const std::size_t k = indices.size();
    for (std::size_t i : indices)
        if (i >= n_) throw InvalidArgument("principal index out of range");
    SymMatrix m;
    m.n_ = k;
    m.mode_ = mode_;
    m.modulus_ = modulus_;
    m.data_.resize(packed_size(k));
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t a = 0; a <= b; ++a) m.data_[index(a, b)] = (*this)(indices[a], indices[b]);
    return m;
}

std::vector<Residue> SymMatrix::dense(const FpContext& ctx) const {
    if (mode_ == Mode::residue && modulus_ != ctx.p())
        throw InvalidArgument("matrix modulus " + std::to_string(modulus_) + " differs from context modulus " +
                              std::to_string(ctx.p()));
    std::vector<Residue> out(n_ * n_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i <= j; ++i) {
            const Residue v = ctx.reduce((*this)(i, j));
            out[i * n_ + j] = v;
            out[j * n_ + i] = v;
        }
    return out;
}

SymMatrix sample_symmetric_rademacher(std::size_t n, const SamplerConfig& cfg, std::uint64_t trial) {
    if (n == 0) throw InvalidArgument("matrix dimension must be at least 1");
    TrialRng rng(cfg, trial);
    std::vector<std::int32_t> packed(SymMatrix::packed_size(n));
    for (auto& v : packed) v = rng.sign();
    return SymMatrix::from_packed(n, SymMatrix::Mode::sign, 0, std::move(packed));
}

SymMatrix sample_symmetric_uniform(std::size_t n, const FpContext& ctx, const SamplerConfig& cfg,
                                   std::uint64_t trial) {
    if (n == 0) throw InvalidArgument("matrix dimension must be at least 1");
    TrialRng rng(cfg, trial);
    std::vector<std::int32_t> packed(SymMatrix::packed_size(n));
    for (auto& v : packed) v = static_cast<std::int32_t>(rng.below(ctx.p()));
    return SymMatrix::from_packed(n, SymMatrix::Mode::residue, ctx.p(), std::move(packed));
}

SymMatrix reduce(const SymMatrix& m, const FpContext& ctx, Residue lambda) {
    if (!m.is_integral()) throw InvalidArgument("reduce expects an integral (sign or integer mode) matrix");
    const std::size_t n = m.dim();
    std::vector<std::int32_t> packed(SymMatrix::packed_size(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) {
            Residue v = ctx.reduce(m(i, j));
            if (i == j) v = ctx.sub(v, ctx.reduce(lambda));
            packed[SymMatrix::index(i, j)] = static_cast<std::int32_t>(v);
        }
    return SymMatrix::from_packed(n, SymMatrix::Mode::residue, ctx.p(), std::move(packed));
}

SymMatrix shift_diagonal(const SymMatrix& a, const FpContext& ctx, Residue lambda) {
    if (a.mode() != SymMatrix::Mode::residue || a.modulus() != ctx.p())
        throw InvalidArgument("shift_diagonal expects a residue-mode matrix for this modulus");
    const std::size_t n = a.dim();
    std::vector<std::int32_t> packed(a.packed().begin(), a.packed().end());
    const Residue l = ctx.reduce(lambda);
    for (std::size_t i = 0; i < n; ++i) {
        auto& v = packed[SymMatrix::index(i, i)];
        v = static_cast<std::int32_t>(ctx.sub(static_cast<Residue>(v), l));
    }
    return SymMatrix::from_packed(n, SymMatrix::Mode::residue, ctx.p(), std::move(packed));
}

SymMatrix block_diagonal(std::span<const SymMatrix> blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (!b.is_integral()) throw InvalidArgument("block_diagonal expects integral blocks");
        n += b.dim();
    }
    std::vector<std::int32_t> packed(SymMatrix::packed_size(n), 0);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t j = 0; j < b.dim(); ++j)
            for (std::size_t i = 0; i <= j; ++i) packed[SymMatrix::index(offset + i, offset + j)] = b(i, j);
        offset += b.dim();
    }
    return SymMatrix::from_packed(n, SymMatrix::Mode::integer, 0, std::move(packed));
}

}  // namespace symfp
