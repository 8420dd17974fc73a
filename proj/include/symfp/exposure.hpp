#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symfp/fp.hpp"
#include "symfp/linalg.hpp"
#include "symfp/sym_matrix.hpp"

namespace symfp {

/// Coranks c_1..c_n of the nested blocks A_t = M_t − λI_t, where
/// c_t = t − rank_{F_p}(A_t). Stored 0-based: coranks[t-1] = c_t.
struct CorankProfile {
    Residue lambda = 0;
    std::vector<std::size_t> coranks;

    /// c_1 ∈ {0,1} and every step lies in {−1, 0, +1}.
    [[nodiscard]] bool is_valid_walk() const noexcept;
};

/// How corank_profile obtains each c_t.
enum class ProfileMethod {
    incremental,  ///< one symmetric congruence reduction, O(n^3) total
    fresh,        ///< independent elimination of every A_t, O(n^4) total
};

/// Symmetric elimination of A_t maintained as t grows.
///
/// Keeps an invertible Q with Q·A_t·Qᵀ = D, where D is a direct sum of
/// nonzero 1×1 pivots, invertible 2×2 blocks and a zero block whose size is
/// the corank. Appending a row/column (x, z) transforms x into y = Q·x,
/// clears y against the pivots (leaving z' = z − yᵀD⁻¹y), and then:
///   * some kernel coordinate j has y_j ≠ 0: j and the new index form a
///     2×2 block and the corank drops by one;
///   * otherwise z' ≠ 0 adds a pivot (corank unchanged) and z' = 0 adds a
///     kernel coordinate (corank up by one).
/// Rows of Q belonging to the zero block are a basis of ker A_t.
class CongruenceExposure {
public:
    CongruenceExposure(const FpContext& ctx, std::size_t capacity);

    /// Adds index t = size(): `column` holds A[0..t-1][t], `diagonal` A[t][t].
    void extend(std::span<const Residue> column, Residue diagonal);

    [[nodiscard]] std::size_t size() const noexcept { return t_; }
    [[nodiscard]] std::size_t corank() const noexcept { return kernel_count_; }
    /// Basis of ker A_t (vectors of length size()).
    [[nodiscard]] std::vector<FpVector> kernel_vectors() const;

private:
    enum class Kind : std::uint8_t { kernel, single, pair_first, pair_second };

    FpContext ctx_;
    std::size_t capacity_;
    std::size_t t_ = 0;
    std::size_t kernel_count_ = 0;
    std::vector<Residue> q_;  // capacity × capacity, row r = coordinate r
    std::vector<Kind> kind_;
    std::vector<std::size_t> partner_;
    // single: block_[r][0] = d. pair_first: {D[r][r], D[r][s], D[s][s]}.
    std::vector<std::array<Residue, 3>> block_;
    std::vector<Residue> y_;
    std::vector<std::uint64_t> acc_;
};

/// Corank profile of M − λI. Integral matrices are reduced mod p first
/// (see reduce()); residue-mode matrices are shifted in place.
[[nodiscard]] CorankProfile corank_profile(const SymMatrix& m, const FpContext& ctx, Residue lambda,
                                           ProfileMethod method = ProfileMethod::incremental);

/// Step indices into TransitionRow arrays.
enum StepIndex : std::size_t { step_down = 0, step_stay = 1, step_up = 2 };

/// Conditional step frequencies given c_t = k.
struct TransitionRow {
    std::size_t k = 0;
    std::array<std::uint64_t, 3> counts{};
    std::uint64_t total = 0;
    /// Absent when total == 0.
    std::array<std::optional<double>, 3> frequency{};
    /// sqrt(f(1-f)/total); absent when total == 0.
    std::array<std::optional<double>, 3> std_error{};
};

/// Pools steps c_t → c_{t+1} for t in [t_min, t_max] (1-based) over all
/// profiles. Rows cover k = 0..max corank seen at a conditioning time.
/// Throws InvalidArgument if t_min < 1, t_min > t_max, or some profile is
/// shorter than t_max + 1.
[[nodiscard]] std::vector<TransitionRow> transition_counts(std::span<const CorankProfile> profiles,
                                                           std::size_t t_min, std::size_t t_max);

}  // namespace symfp
