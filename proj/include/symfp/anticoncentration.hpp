#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symfp/fp.hpp"
#include "symfp/linalg.hpp"
#include "symfp/rng.hpp"

namespace symfp {

/// Law of ξ_1 v_1 + … + ξ_n v_n mod p for i.i.d. Rademacher ξ.
struct WalkPmf {
    Residue p = 0;
    std::size_t length = 0;  ///< n, the number of summands
    std::vector<double> prob;
};

/// Exact law by convolution: each coordinate splits the mass at x evenly
/// onto x + v_i and x − v_i.
[[nodiscard]] WalkPmf walk_distribution(std::span<const Residue> v, const FpContext& ctx);

/// Same law from the character sum
///   P[x] = (1/p) Σ_ℓ cos(2πℓx/p) ∏_j cos(2πℓ v_j/p).
[[nodiscard]] WalkPmf walk_distribution_fourier(std::span<const Residue> v, const FpContext& ctx);

/// The walk as exact sign-pattern counts: counts[x] = #{ξ ∈ {±1}^n : Σξ_i v_i ≡ x},
/// summing to 2^n. Requires n <= 126.
[[nodiscard]] std::vector<unsigned __int128> walk_counts(std::span<const Residue> v, const FpContext& ctx);

struct Atom {
    double probability = 0.0;
    Residue residue = 0;  ///< smallest maximizer
};

/// ρ(v) = max_r P[Σ ξ_i v_i = r].
[[nodiscard]] Atom atom_probability(std::span<const Residue> v, const FpContext& ctx);
[[nodiscard]] Atom atom_probability(const WalkPmf& pmf);

/// sup_x |P[Σ ξ_i v_i = x] − 1/p|.
[[nodiscard]] double discrepancy(std::span<const Residue> v, const FpContext& ctx);
[[nodiscard]] double discrepancy(const WalkPmf& pmf);

/// Smallest number of distinct indices a 2k-tuple needs to count towards
/// R_k^*: the least integer strictly greater than 1.01k.
[[nodiscard]] constexpr std::size_t rk_star_min_distinct(unsigned k) noexcept {
    return static_cast<std::size_t>(101ULL * k / 100ULL) + 1;
}

/// Enumeration budget for exact R_k^*, in (index tuple, sign pattern) pairs.
inline constexpr double kRkStarBudget = 1e8;

/// R_k^*(a): number of (ordered index tuple in [n]^{2k}, sign pattern in
/// {±1}^{2k}) with signed sum ≡ 0 mod p and more than 1.01k distinct
/// indices. Iterates tuples in odometer order, signs in Gray-code order.
/// Throws BudgetExceeded("instance too large; use sampling estimate") when
/// n^{2k}·4^k > 10^8.
[[nodiscard]] std::uint64_t rk_star(std::span<const Residue> a, const FpContext& ctx, unsigned k);

/// Unbiased Monte Carlo estimate of R_k^* (uniform tuple and sign pattern,
/// scaled by n^{2k}·4^k). Labeled as an estimate; never exact.
struct RkStarEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};
[[nodiscard]] RkStarEstimate rk_star_estimate(std::span<const Residue> a, const FpContext& ctx, unsigned k,
                                              std::uint64_t samples, TrialRng& rng);

/// Level k, scale L and the caller's stand-in C for the unspecified
/// constant of the Halász-type inequality.
struct HalaszParams {
    unsigned k = 1;
    double L = 1.0;
    double C = 1.0;
};

struct HalaszReport {
    double bound = 0.0;
    /// (R_k^* + (40 k^0.99 n^1.01)^k) / (2^{2k} n^{2k} √L): the factor C multiplies.
    double structure_term = 0.0;
    std::uint64_t rk_star = 0;
    std::size_t support = 0;
    bool support_ok = false;  ///< 30L <= |supp(a)|
    bool size_ok = false;     ///< 80kL <= n
    bool level_ok = false;    ///< k <= n/2
    [[nodiscard]] bool preconditions_hold() const noexcept { return support_ok && size_ok && level_ok; }
};

/// ρ(a) <= 1/p + C·structure_term + e^{−L}, evaluated even when a
/// precondition fails (the flags record which). Throws
/// InvalidArgument("theorem requires nonzero vector") for a = 0.
[[nodiscard]] HalaszReport halasz_bound(std::span<const Residue> a, const FpContext& ctx, const HalaszParams& hp);

/// Least C >= 0 for which the inequality holds at this vector, given its
/// atom probability.
[[nodiscard]] double halasz_minimal_constant(double atom, const HalaszReport& rep, const FpContext& ctx, double L);

struct BadSetParams {
    std::size_t n = 1;
    std::size_t d = 1;
    unsigned k = 1;
    std::size_t s1 = 1;
    std::size_t s2 = 1;
    double t = 1.0;
};

/// Throws InvalidArgument unless 1 <= s1 <= s2 <= d <= n, k >= 1, 1 <= t <= p.
void validate(const BadSetParams& params, const FpContext& ctx);

/// log of binom(n,d)·p^{d+s2}·(0.01t)^{−d + (s1/s2)d}. Only needs t >= 1
/// (the formula is meaningful past t = p, e.g. at t = 100 where the last
/// factor is 1).
[[nodiscard]] double bad_set_log_bound(const BadSetParams& params, const FpContext& ctx);
/// exp(bad_set_log_bound); may be +inf for huge parameters.
[[nodiscard]] double bad_set_bound(const BadSetParams& params, const FpContext& ctx);

/// Exact size of the bad set: vectors a ∈ F_p^n with |supp(a)| = d whose
/// every restriction b to s1..s2 support coordinates has
/// R_k^*(b) >= t·2^{2k}|b|^{2k}/p. Throws BudgetExceeded when p^n > 10^6.
[[nodiscard]] std::uint64_t bad_set_enumerate(const BadSetParams& params, const FpContext& ctx);

struct DaggerResult {
    bool holds = false;
    std::size_t good_chunks = 0;
    std::size_t chunks = 0;
    std::size_t required = 0;  ///< ⌈n/(2m)⌉
    std::vector<double> chunk_discrepancy;
};

/// Splits [n]∖T, in increasing index order, into consecutive chunks of m
/// indices (a short remainder is dropped) and counts chunks S with
/// disc(v|_S) <= C/p². Throws PreconditionViolated if |T| > n/4 and
/// InvalidArgument if m = 0, m > n − |T|, or T has bad indices.
[[nodiscard]] DaggerResult check_dagger(std::span<const Residue> v, const FpContext& ctx,
                                        std::span<const std::size_t> excluded, std::size_t m, double C);

struct StructureOptions {
    std::vector<double> dagger_constants{1.0, 10.0, 100.0};
    std::size_t chunk_size = 8;  ///< m
    std::size_t workers = 1;
};

/// One kernel vector extracted during the structure experiment.
struct KernelObservation {
    std::uint64_t trial = 0;
    std::size_t corank = 0;
    std::size_t index = 0;  ///< position in the kernel basis
    bool in_kernel = false; ///< A·v = 0 re-verified
    std::size_t support = 0;
    double atom = 0.0;              ///< ρ(v)
    std::size_t best_window = 0;    ///< size of the minimizing window
    double best_window_atom = 0.0;  ///< min ρ(v|_S) over scanned windows
    std::size_t dagger_chunks = 0;
    std::size_t dagger_required = 0;
    std::vector<std::size_t> dagger_good_chunks;  ///< one per StructureOptions constant
    std::vector<bool> dagger_holds;               ///< one per StructureOptions constant
};

struct StructureReport {
    std::size_t n = 0;
    Residue p = 0;
    Residue lambda = 0;
    std::uint64_t trials = 0;
    std::uint64_t singular_samples = 0;
    double support_threshold = 0.0;  ///< n / (16 log p)
    double window_min = 0.0;         ///< √(n log n)
    double window_max = 0.0;         ///< n^{3/4}
    std::vector<KernelObservation> observations;

    [[nodiscard]] std::size_t kernel_vectors() const noexcept { return observations.size(); }
    [[nodiscard]] bool all_in_kernel() const noexcept;
    /// 0 when no kernel vector was observed.
    [[nodiscard]] std::size_t min_support() const noexcept;
    [[nodiscard]] std::size_t below_support_threshold() const noexcept;
    /// Fraction of vectors passing the dagger check for constant index c.
    [[nodiscard]] double dagger_pass_rate(std::size_t c) const noexcept;
};

/// Samples Rademacher M per trial, keeps the singular reductions M − λI,
/// and records support, atom probability over contiguous windows of the
/// support with sizes in [√(n log n), n^{3/4}], and dagger checks (with T
/// the first ⌊n/4⌋ indices) for every basis vector of the kernel.
/// Throws InvalidArgument for n < 32.
[[nodiscard]] StructureReport structure_check_experiment(std::size_t n, const FpContext& ctx, Residue lambda,
                                                         std::uint64_t trials, const SamplerConfig& cfg,
                                                         const StructureOptions& options = {});

}  // namespace symfp
