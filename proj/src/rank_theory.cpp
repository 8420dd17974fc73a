#include "symfp/rank_theory.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "symfp/error.hpp"

namespace symfp {

RankDistribution limiting_corank_pmf(const FpContext& ctx, std::size_t k_max, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const double p = ctx.p();
    double head = 1.0;
    for (int i = 0;; ++i) {
        const double term = std::pow(p, -(2.0 * i + 1.0));
        if (term < tol) break;
        head *= 1.0 - term;
    }
    RankDistribution d;
    d.p = ctx.p();
    d.pmf.reserve(k_max + 1);
    double pi = head;
    d.pmf.push_back(pi);
    for (std::size_t k = 1; k <= k_max; ++k) {
        pi /= std::pow(p, static_cast<double>(k)) - 1.0;
        d.pmf.push_back(pi);
    }
    for (std::size_t k = k_max + 1; pi > 0.0; ++k) {
        pi /= std::pow(p, static_cast<double>(k)) - 1.0;
        d.tail_mass += pi;
    }
    return d;
}

TransitionPmf uniform_transition_pmf(const FpContext& ctx, std::size_t k) {
    const double p = ctx.p();
    const double pk = std::pow(p, -static_cast<double>(k));
    return {1.0 - pk, pk - pk / p, pk / p};
}

std::size_t simulate_corank_chain(const FpContext& ctx, std::size_t steps, const SamplerConfig& cfg,
                                  std::uint64_t trial) {
    if (steps == 0) throw InvalidArgument("chain needs at least one step");
    TrialRng rng(cfg, trial);
    std::size_t k = 0;
    for (std::size_t s = 0; s < steps; ++s) {
        const auto law = uniform_transition_pmf(ctx, k);
        const double u = rng.uniform01();
        if (u < law.down)
            --k;  // law.down == 0 at k == 0
        else if (u >= law.down + law.stay)
            ++k;
    }
    return k;
}

ComparisonReport compare_distributions(std::span<const std::uint64_t> counts, const RankDistribution& theory) {
    ComparisonReport rep;
    for (auto c : counts) rep.total += c;
    if (rep.total == 0) throw InvalidArgument("empirical counts are all zero");
    const auto N = static_cast<double>(rep.total);
    const std::size_t cells = std::max(counts.size(), theory.pmf.size());

    double tv = 0.0;
    std::uint64_t beyond_count = 0;
    std::vector<CellComparison> beyond;
    for (std::size_t k = 0; k < cells; ++k) {
        const std::uint64_t c = k < counts.size() ? counts[k] : 0;
        if (k >= theory.pmf.size()) {
            // Reported with π = 0; TV and chi-square lump these against the tail.
            beyond_count += c;
            CellComparison cell;
            cell.k = k;
            cell.count = c;
            cell.empirical = static_cast<double>(c) / N;
            cell.z = c > 0 ? INFINITY : 0.0;
            beyond.push_back(cell);
            continue;
        }
        CellComparison cell;
        cell.k = k;
        cell.count = c;
        cell.empirical = static_cast<double>(c) / N;
        cell.theoretical = theory.pmf[k];
        cell.std_error = std::sqrt(cell.theoretical * (1.0 - cell.theoretical) / N);
        const double diff = cell.empirical - cell.theoretical;
        cell.z = cell.std_error > 0.0 ? diff / cell.std_error : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
        tv += std::fabs(diff);
        rep.cells.push_back(cell);
    }
    tv += std::fabs(static_cast<double>(beyond_count) / N - theory.tail_mass);
    rep.tv_distance = std::min(1.0, 0.5 * tv);
    rep.cells.insert(rep.cells.end(), beyond.begin(), beyond.end());

    // Chi-square with pooling of sparse cells.
    std::vector<std::pair<double, double>> kept;  // (observed, expected)
    double pooled_obs = static_cast<double>(beyond_count), pooled_exp = N * theory.tail_mass;
    for (const auto& cell : rep.cells) {
        if (cell.k >= theory.pmf.size()) continue;
        const double expected = N * cell.theoretical;
        if (expected >= 5.0)
            kept.emplace_back(static_cast<double>(cell.count), expected);
        else {
            pooled_obs += static_cast<double>(cell.count);
            pooled_exp += expected;
        }
    }
    if (pooled_exp >= 5.0 || kept.empty())
        kept.emplace_back(pooled_obs, pooled_exp);
    else {
        kept.back().first += pooled_obs;
        kept.back().second += pooled_exp;
    }
    for (const auto& [o, e] : kept)
        if (e > 0.0) rep.chi_square += (o - e) * (o - e) / e;
    rep.chi_square_cells = kept.size();
    rep.degrees_of_freedom = kept.size() > 1 ? kept.size() - 1 : 0;
    rep.chi_square_p_value = rep.degrees_of_freedom > 0
                                 ? boost::math::gamma_q(0.5 * static_cast<double>(rep.degrees_of_freedom),
                                                        0.5 * rep.chi_square)
                                 : 1.0;
    return rep;
}

}  // namespace symfp
