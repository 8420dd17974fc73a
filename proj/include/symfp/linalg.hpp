#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "symfp/fp.hpp"
#include "symfp/sym_matrix.hpp"

namespace symfp {

using FpVector = std::vector<Residue>;

/// Which row to pivot on when several rows have a nonzero entry in the
/// current column. Both give the same rank; the second exists so that
/// property can be tested.
enum class PivotRule { first_nonzero, last_nonzero };

/// Rank over F_p of a row-major rows×cols matrix (entries < p). The buffer
/// is consumed as scratch space.
[[nodiscard]] std::size_t rank_dense(std::vector<Residue> entries, std::size_t rows, std::size_t cols,
                                     const FpContext& ctx, PivotRule rule = PivotRule::first_nonzero);

/// Rank over F_p of a residue-mode (or integral, reduced on the fly) matrix.
[[nodiscard]] std::size_t rank_fp(const SymMatrix& a, const FpContext& ctx,
                                  PivotRule rule = PivotRule::first_nonzero);

/// Rank of the span of the given vectors (all of equal length).
[[nodiscard]] std::size_t rank_of_vectors(std::span<const FpVector> vectors, const FpContext& ctx);

/// A·v over F_p. Throws InvalidArgument on dimension mismatch.
[[nodiscard]] FpVector mat_vec(const SymMatrix& a, std::span<const Residue> v, const FpContext& ctx);

/// Basis of the right kernel, read off the reduced row echelon form: one
/// vector per free column, with a 1 in that column. Empty iff A is invertible.
[[nodiscard]] std::vector<FpVector> kernel_basis(const SymMatrix& a, const FpContext& ctx);

/// True iff A·v has at most r nonzero coordinates.
[[nodiscard]] bool is_r_sparse_kernel_vector(const SymMatrix& a, std::span<const Residue> v, std::size_t r,
                                             const FpContext& ctx);

/// Index set S (ascending, 0-based) with |S| = rank(A) and A[S,S] invertible.
///
/// Indices are taken greedily in increasing order whenever row i is
/// independent of the rows already chosen. For symmetric A the rows of a
/// maximal independent set always index an invertible principal block; that
/// is re-checked before returning.
[[nodiscard]] std::vector<std::size_t> find_full_rank_principal_minor(const SymMatrix& a, const FpContext& ctx);

/// Exhaustive search for a nonzero vector with |supp(v)| <= max_support that
/// is an r-kernel vector of A. Vectors are enumerated up to scaling (first
/// support entry fixed to 1). Throws BudgetExceeded when more than 10^7
/// candidates would be examined.
[[nodiscard]] std::optional<FpVector> find_sparse_r_kernel_vector(const SymMatrix& a, std::size_t max_support,
                                                                  std::size_t r, const FpContext& ctx);

}  // namespace symfp
