#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symfp/fp.hpp"
#include "symfp/rng.hpp"

namespace symfp {

/// Symmetric n×n matrix storing only the upper triangle, packed by column:
/// entry (i, j) with i <= j lives at j(j+1)/2 + i. With this layout the
/// leading t×t principal block is the first t(t+1)/2 stored values.
///
/// Value modes: `sign` holds integer ±1 entries (the Rademacher model),
/// `integer` holds arbitrary int32 entries (block constructions and other
/// integer test matrices), `residue` holds entries in [0, p) for a recorded
/// modulus p.
class SymMatrix {
public:
    enum class Mode : std::uint8_t { sign, integer, residue };

    SymMatrix() = default;

    /// Sign mode from full rows; rows must be square, symmetric, entries ±1.
    static SymMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
    /// Integer mode from full rows; rows must be square and symmetric.
    static SymMatrix from_integer_rows(const std::vector<std::vector<std::int64_t>>& rows);
    /// Residue mode from full integer rows, reduced mod p; must be symmetric.
    static SymMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, const FpContext& ctx);
    /// Takes ownership of packed values after validating them.
    static SymMatrix from_packed(std::size_t n, Mode mode, Residue modulus, std::vector<std::int32_t> packed);
    static SymMatrix zero(std::size_t n, const FpContext& ctx);
    static SymMatrix identity(std::size_t n, const FpContext& ctx);

    static constexpr std::size_t packed_size(std::size_t n) noexcept { return n * (n + 1) / 2; }
    static constexpr std::size_t index(std::size_t i, std::size_t j) noexcept {
        return i <= j ? j * (j + 1) / 2 + i : i * (i + 1) / 2 + j;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] bool is_integral() const noexcept { return mode_ != Mode::residue; }
    /// p for residue mode, 0 otherwise.
    [[nodiscard]] Residue modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::int32_t operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
    [[nodiscard]] std::span<const std::int32_t> packed() const noexcept { return data_; }

    /// Top-left t×t principal block.
    [[nodiscard]] SymMatrix leading(std::size_t t) const;
    /// Principal submatrix on the given (ascending or not) index list.
    [[nodiscard]] SymMatrix principal(std::span<const std::size_t> indices) const;

    /// Row-major dense residues mod ctx.p(). Residue-mode matrices must have
    /// been built for the same modulus.
    [[nodiscard]] std::vector<Residue> dense(const FpContext& ctx) const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    std::size_t n_ = 0;
    Mode mode_ = Mode::sign;
    Residue modulus_ = 0;
    std::vector<std::int32_t> data_;
};

/// Upper-triangle entries i.i.d. uniform on {-1, +1}, drawn in packed order
/// from the trial's generator. Throws InvalidArgument for n = 0.
[[nodiscard]] SymMatrix sample_symmetric_rademacher(std::size_t n, const SamplerConfig& cfg, std::uint64_t trial);

/// Upper-triangle entries i.i.d. uniform on F_p.
[[nodiscard]] SymMatrix sample_symmetric_uniform(std::size_t n, const FpContext& ctx, const SamplerConfig& cfg,
                                                 std::uint64_t trial);

/// M − λI over F_p for an integral M: off-diagonal M_ij mod p, diagonal
/// (M_ii − λ) mod p. Reduction happens before the shift.
[[nodiscard]] SymMatrix reduce(const SymMatrix& m, const FpContext& ctx, Residue lambda);

/// A − λI for a residue-mode A.
[[nodiscard]] SymMatrix shift_diagonal(const SymMatrix& a, const FpContext& ctx, Residue lambda);

/// block_diag(blocks...) of integral blocks, in integer mode.
[[nodiscard]] SymMatrix block_diagonal(std::span<const SymMatrix> blocks);

}  // namespace symfp
