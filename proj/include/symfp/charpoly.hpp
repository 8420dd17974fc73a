#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symfp/fp.hpp"
#include "symfp/poly.hpp"
#include "symfp/rng.hpp"
#include "symfp/sym_matrix.hpp"

namespace symfp {

using BigInt = boost::multiprecision::cpp_int;

/// det(tI − M) over F_p, monic of degree n. Reduces M to upper Hessenberg
/// form by similarity (row/column swaps and eliminations), then expands
/// the Hessenberg determinant by the usual three-term recurrence. O(n^3).
[[nodiscard]] PolyFp charpoly_mod_p(const SymMatrix& m, const FpContext& ctx);

/// Exact integer coefficients c_0..c_n (c_n = 1) of det(tI − M) by the
/// Faddeev–LeVerrier recurrence. Every division is checked to be exact.
/// Integral matrices only; throws InvalidArgument("use modular computation")
/// for n > 30.
[[nodiscard]] std::vector<BigInt> charpoly_exact(const SymMatrix& m);

/// R_φ(p) = deg gcd(f, x^p − x): the number of distinct roots in F_p.
/// Throws InvalidArgument for the zero polynomial.
[[nodiscard]] std::size_t count_roots_fp(const PolyFp& f, const FpContext& ctx);

/// Rabin's test. Non-monic input is normalized; throws for degree < 1.
[[nodiscard]] bool is_irreducible_fp(const PolyFp& f, const FpContext& ctx);

/// gcd(f, f′) = 1. Throws InvalidArgument for the zero polynomial.
[[nodiscard]] bool is_squarefree_fp(const PolyFp& f, const FpContext& ctx);

struct RootCountReport {
    Residue p = 0;
    std::size_t roots = 0;  ///< R_φ(p)
    bool squarefree_mod_p = false;
};

[[nodiscard]] RootCountReport root_count_report(const SymMatrix& m, const FpContext& ctx);

/// Outcome of searching for a prime modulo which det(tI − M) is
/// irreducible; such a prime proves irreducibility over Z.
struct IrredCertificate {
    std::optional<std::uint64_t> witness;  ///< set iff certified irreducible
    std::vector<std::uint64_t> primes_tried;

    [[nodiscard]] bool certified() const noexcept { return witness.has_value(); }
};

/// Tries the first `budget` primes of `primes` in order and stops at the
/// first one where the characteristic polynomial is irreducible. The primes
/// must be odd; budget >= 1.
[[nodiscard]] IrredCertificate irreducibility_certificate(const SymMatrix& m, std::span<const std::uint64_t> primes,
                                                          std::size_t budget);
/// Same, over the odd primes 3, 5, 7, ... with the default budget of 25.
[[nodiscard]] IrredCertificate irreducibility_certificate(const SymMatrix& m, std::size_t budget = 25);

/// Re-checks a certificate by distinct-degree factorization: true iff the
/// witness exists and φ mod witness has exactly one irreducible factor,
/// of degree n, and is squarefree.
[[nodiscard]] bool verify_certificate(const SymMatrix& m, const IrredCertificate& cert);

/// w_X(t) = 2e^{−X}·t on (X − log 2, X], zero elsewhere. Throws for X <= 0.
[[nodiscard]] double weight_w(double X, double t);

/// Σ R_φ(q)·w_X(log q) over the odd primes of the window (e^X/2, e^X].
/// Throws BudgetExceeded when e^X > 10^7.
[[nodiscard]] double weighted_root_sum(const SymMatrix& m, double X);

struct RootCountStats {
    std::size_t n = 0;
    Residue p = 0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / √trials
    std::vector<std::uint64_t> histogram;  ///< histogram[r] = #{trials with R_φ(p) = r}
    std::uint64_t squarefree = 0;          ///< trials with squarefree φ mod p
};

/// R_φ(p) over `trials` symmetric Rademacher matrices of size n. Requires
/// n >= 8 and trials >= 1.
[[nodiscard]] RootCountStats mean_root_count_experiment(std::size_t n, const FpContext& ctx, std::uint64_t trials,
                                                        const SamplerConfig& cfg, std::size_t workers = 1);

/// block_diag(B, B) with B a symmetric Rademacher matrix of size `half`;
/// its characteristic polynomial is a perfect square.
[[nodiscard]] SymMatrix duplicated_block_matrix(std::size_t half, const SamplerConfig& cfg, std::uint64_t trial);

}  // namespace symfp
