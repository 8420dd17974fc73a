#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symfp/fp.hpp"
#include "symfp/rng.hpp"

namespace symfp {

/// Probability mass over corank k = 0..k_max plus the mass beyond k_max.
struct RankDistribution {
    Residue p = 0;
    std::vector<double> pmf;
    double tail_mass = 0.0;

    [[nodiscard]] std::size_t k_max() const noexcept { return pmf.empty() ? 0 : pmf.size() - 1; }
    /// π_k, or 0 past k_max.
    [[nodiscard]] double operator[](std::size_t k) const noexcept { return k < pmf.size() ? pmf[k] : 0.0; }
};

/// Limiting corank law of symmetric matrices over F_p:
///   π_k = ∏_{i≥0} (1 − p^{−(2i+1)}) / ∏_{i=1}^{k} (p^i − 1).
/// The infinite product stops once the next factor is within `tol` of 1.
/// tail_mass is summed from the same formula beyond k_max (until the terms
/// underflow), not taken as 1 − Σπ_k, so the total mass stays a real check.
[[nodiscard]] RankDistribution limiting_corank_pmf(const FpContext& ctx, std::size_t k_max = 40,
                                                   double tol = 1e-15);

/// The three step probabilities of the corank walk from corank k.
struct TransitionPmf {
    double down = 0.0;
    double stay = 0.0;
    double up = 0.0;
};

/// Exact uniform-model transition law from corank k:
///   (1 − p^{−k}, p^{−k} − p^{−k−1}, p^{−k−1}).
[[nodiscard]] TransitionPmf uniform_transition_pmf(const FpContext& ctx, std::size_t k);

/// Final state of the idealized corank chain started at 0 after `steps`
/// transitions drawn from uniform_transition_pmf. Throws for steps = 0.
[[nodiscard]] std::size_t simulate_corank_chain(const FpContext& ctx, std::size_t steps, const SamplerConfig& cfg,
                                                std::uint64_t trial);

struct CellComparison {
    std::size_t k = 0;
    std::uint64_t count = 0;
    double empirical = 0.0;
    double theoretical = 0.0;
    double std_error = 0.0;  ///< sqrt(π_k(1−π_k)/N)
    double z = 0.0;          ///< (empirical − π_k)/se; 0 when both se and the difference vanish
};

struct ComparisonReport {
    std::uint64_t total = 0;
    std::vector<CellComparison> cells;  ///< k = 0..max(k_max, largest observed k)
    double tv_distance = 0.0;
    double chi_square = 0.0;
    std::size_t chi_square_cells = 0;
    std::size_t degrees_of_freedom = 0;
    double chi_square_p_value = 1.0;
};

/// Compares corank counts (index = k) with a theoretical law. TV sums
/// |freq − π| over all k, with the theory's tail mass counted against
/// observations beyond k_max. Chi-square keeps cells whose expected count
/// N·π_k is at least 5; the rest (and the tail) are pooled into one cell,
/// which is merged into the last kept cell if it is itself below 5.
/// Throws InvalidArgument when all counts are zero.
[[nodiscard]] ComparisonReport compare_distributions(std::span<const std::uint64_t> counts,
                                                     const RankDistribution& theory);

}  // namespace symfp
