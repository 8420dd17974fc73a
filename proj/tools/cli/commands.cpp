#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "output.hpp"
#include "symfp/anticoncentration.hpp"
#include "symfp/charpoly.hpp"
#include "symfp/error.hpp"
#include "symfp/exposure.hpp"
#include "symfp/fp.hpp"
#include "symfp/linalg.hpp"
#include "symfp/parallel.hpp"
#include "symfp/rank_theory.hpp"
#include "symfp/rng.hpp"
#include "symfp/sym_matrix.hpp"

#ifndef SYMFP_VERSION
#define SYMFP_VERSION "0.0.0"
#endif

namespace symfp::cli {

namespace {

// FNV-1a, so stream ids do not depend on the standard library's hash.
std::uint64_t name_tag(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
    return h;
}

// Each (command, p, lambda, model) configuration draws from its own stream so
// that adding a prime to a list never changes the samples of the others.
SamplerConfig sampler(const Config& c, std::uint64_t p, Residue lambda, std::uint64_t salt = 0) {
    std::uint64_t s = mix64(c.stream ^ name_tag(c.command));
    s = mix64(s ^ p);
    s = mix64(s ^ lambda);
    s = mix64(s ^ salt);
    return {c.seed, s};
}

std::string cname(const char* prefix, double c) { return fmt::format("{}{}", prefix, format_double(c)); }

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

void require_common(const Config& c, bool needs_n = true, bool needs_trials = true) {
    if (needs_n) require(c.n >= 1, "--n must be at least 1");
    if (needs_trials) require(c.trials >= 1, "--trials must be at least 1");
    require(c.workers >= 1, "--workers must be at least 1");
}

std::vector<std::uint64_t> counts_of(const std::vector<std::size_t>& values) {
    std::size_t top = 0;
    for (auto v : values) top = std::max(top, v);
    std::vector<std::uint64_t> counts(top + 1, 0);
    for (auto v : values) ++counts[v];
    return counts;
}

Json pmf_head(const RankDistribution& d, std::size_t upto) {
    Json a = Json::array();
    for (std::size_t k = 0; k <= upto && k < d.pmf.size(); ++k) a.push_back(d.pmf[k]);
    return a;
}

constexpr const char* kPiFormula = "pi_k = prod_{i>=0}(1 - p^-(2i+1)) / prod_{i=1..k}(p^i - 1)";
constexpr const char* kStepFormula = "(down, stay, up) = (1 - p^-k, p^-k - p^-(k+1), p^-(k+1))";

// |emp - theo| <= max(z*se, abs)
bool within(double emp, double theo, double se, const Tolerances& tol) {
    return std::fabs(emp - theo) <= std::max(tol.z * se, tol.abs);
}

Report cmd_rankdist(const Config& c) {
    require_common(c);
    require(!c.primes.empty(), "--p needs at least one prime");
    Report r;
    r.columns = {"p", "n", "lambda", "k", "count", "empirical", "theoretical", "se", "z"};
    Json theory = Json::object();
    Json summary = Json::array();
    for (auto p : c.primes) {
        const FpContext ctx(p);
        const auto pmf = limiting_corank_pmf(ctx, c.k_max);
        theory[std::to_string(p)] = pmf_head(pmf, 5);
        for (auto lam_raw : c.lambdas) {
            const Residue lam = ctx.reduce(lam_raw);
            const auto cfg = sampler(c, p, lam);
            const auto coranks = run_trials(c.trials, c.workers, [&](std::uint64_t t) {
                return c.n - rank_fp(reduce(sample_symmetric_rademacher(c.n, cfg, t), ctx, lam), ctx);
            });
            const auto counts = counts_of(coranks);
            const auto cmp = compare_distributions(counts, pmf);
            const std::size_t shown = std::min<std::size_t>(std::max<std::size_t>(counts.size() - 1, 2), cmp.cells.size() - 1);
            for (std::size_t k = 0; k <= shown; ++k) {
                const auto& cell = cmp.cells[k];
                r.add_row({p, static_cast<std::uint64_t>(c.n), static_cast<std::uint64_t>(lam),
                           static_cast<std::uint64_t>(k), cell.count, cell.empirical, cell.theoretical, cell.std_error,
                           cell.z});
            }
            for (std::size_t k = 0; k <= 2 && k < cmp.cells.size(); ++k) {
                const auto& cell = cmp.cells[k];
                r.checks.push_back({fmt::format("rankdist p={} lambda={} k={}", p, lam, k),
                                    within(cell.empirical, cell.theoretical, cell.std_error, c.tol),
                                    fmt::format("empirical {} theoretical {} tolerance {}", format_double(cell.empirical),
                                                format_double(cell.theoretical),
                                                format_double(std::max(c.tol.z * cell.std_error, c.tol.abs)))});
            }
            summary.push_back({{"p", p},
                               {"lambda", lam},
                               {"tv_distance", cmp.tv_distance},
                               {"chi_square", cmp.chi_square},
                               {"chi_square_cells", cmp.chi_square_cells},
                               {"degrees_of_freedom", cmp.degrees_of_freedom},
                               {"chi_square_p_value", cmp.chi_square_p_value}});
        }
    }
    r.meta["theory"] = {{"formula", kPiFormula}, {"pi_0_to_5", theory}};
    r.summary["configs"] = summary;
    return r;
}

Report cmd_walk(const Config& c) {
    require_common(c);
    require(!c.primes.empty(), "--p needs at least one prime");
    require(c.n >= 2, "--n must be at least 2 for a transition");
    const std::size_t t_min = c.t_min ? c.t_min : c.n / 2;
    const std::size_t t_max = c.t_max ? c.t_max : c.n - 1;
    require(t_min >= 1 && t_min <= t_max && t_max <= c.n - 1, "--t-range must satisfy 1 <= a <= b <= n-1");
    std::vector<std::string> models;
    if (c.model == "both" || c.model == "uniform") models.push_back("uniform");
    if (c.model == "both" || c.model == "rademacher") models.push_back("rademacher");
    require(!models.empty(), "--model must be uniform, rademacher or both");

    Report r;
    r.columns = {"model", "p", "lambda", "k", "step", "count", "frequency", "theoretical", "se"};
    Json theory = Json::object();
    for (auto p : c.primes) {
        const FpContext ctx(p);
        Json rows = Json::array();
        for (std::size_t k = 0; k <= 3; ++k) {
            const auto law = uniform_transition_pmf(ctx, k);
            rows.push_back(Json::array({law.down, law.stay, law.up}));
        }
        theory[std::to_string(p)] = rows;
        for (auto lam_raw : c.lambdas) {
            const Residue lam = ctx.reduce(lam_raw);
            for (const auto& model : models) {
                const bool uniform = model == "uniform";
                const auto cfg = sampler(c, p, lam, uniform ? 1 : 2);
                const auto profiles = run_trials(c.trials, c.workers, [&](std::uint64_t t) {
                    const SymMatrix m = uniform ? sample_symmetric_uniform(c.n, ctx, cfg, t)
                                                : sample_symmetric_rademacher(c.n, cfg, t);
                    return corank_profile(m, ctx, lam);
                });
                const auto table = transition_counts(profiles, t_min, t_max);
                for (const auto& row : table) {
                    const auto law = uniform_transition_pmf(ctx, row.k);
                    const double theo[3] = {law.down, law.stay, law.up};
                    for (std::size_t s = 0; s < 3; ++s) {
                        r.add_row({model, p, static_cast<std::uint64_t>(lam), static_cast<std::uint64_t>(row.k),
                                   static_cast<std::int64_t>(s) - 1, row.counts[s],
                                   row.frequency[s] ? Cell{*row.frequency[s]} : Cell{}, theo[s],
                                   row.std_error[s] ? Cell{*row.std_error[s]} : Cell{}});
                    }
                }
                const double tol = uniform ? c.tol.step_uniform : c.tol.step_rademacher;
                for (std::size_t k = 0; k <= 1; ++k) {
                    const auto law = uniform_transition_pmf(ctx, k);
                    const double theo[3] = {law.down, law.stay, law.up};
                    bool ok = k < table.size() && table[k].total > 0;
                    double worst = 0.0;
                    if (ok)
                        for (std::size_t s = 0; s < 3; ++s) worst = std::max(worst, std::fabs(*table[k].frequency[s] - theo[s]));
                    ok = ok && worst <= tol;
                    r.checks.push_back({fmt::format("walk {} p={} lambda={} k={}", model, p, lam, k), ok,
                                        k < table.size() && table[k].total > 0
                                            ? fmt::format("max deviation {} tolerance {} over {} steps",
                                                          format_double(worst), format_double(tol), table[k].total)
                                            : std::string("no conditioning observations")});
                }
            }
        }
    }
    r.meta["theory"] = {{"formula", kStepFormula}, {"k_0_to_3", theory}};
    r.summary["t_min"] = t_min;
    r.summary["t_max"] = t_max;
    return r;
}

Report cmd_chain(const Config& c) {
    require_common(c, false);
    require(!c.primes.empty(), "--p needs at least one prime");
    require(c.steps >= 1, "--steps must be at least 1");
    Report r;
    r.columns = {"p", "steps", "k", "count", "empirical", "theoretical"};
    Json summary = Json::array();
    Json theory = Json::object();
    for (auto p : c.primes) {
        const FpContext ctx(p);
        const auto pmf = limiting_corank_pmf(ctx, c.k_max);
        theory[std::to_string(p)] = pmf_head(pmf, 5);
        const auto cfg = sampler(c, p, 0);
        const auto finals = run_trials(c.trials, c.workers,
                                       [&](std::uint64_t t) { return simulate_corank_chain(ctx, c.steps, cfg, t); });
        const auto counts = counts_of(finals);
        const auto cmp = compare_distributions(counts, pmf);
        const std::size_t shown = std::min<std::size_t>(std::max<std::size_t>(counts.size() - 1, 2), cmp.cells.size() - 1);
        for (std::size_t k = 0; k <= shown; ++k) {
            const auto& cell = cmp.cells[k];
            r.add_row({p, static_cast<std::uint64_t>(c.steps), static_cast<std::uint64_t>(k), cell.count,
                       cell.empirical, cell.theoretical});
        }
        summary.push_back({{"p", p}, {"tv_distance", cmp.tv_distance}, {"chi_square", cmp.chi_square},
                           {"degrees_of_freedom", cmp.degrees_of_freedom}, {"chi_square_p_value", cmp.chi_square_p_value}});
        r.checks.push_back({fmt::format("chain p={} tv", p), cmp.tv_distance <= c.tol.tv,
                            fmt::format("tv {} tolerance {}", format_double(cmp.tv_distance), format_double(c.tol.tv))});
    }
    r.meta["theory"] = {{"formula", kPiFormula}, {"pi_0_to_5", theory}};
    r.summary["configs"] = summary;
    return r;
}

Report cmd_theory(const Config& c) {
    require(!c.primes.empty(), "--p needs at least one prime");
    Report r;
    r.columns = {"p", "k", "pi_k"};
    Json summary = Json::array();
    for (auto p : c.primes) {
        const FpContext ctx(p);
        const auto pmf = limiting_corank_pmf(ctx, c.k_max);
        double mass = 0.0;
        for (std::size_t k = 0; k < pmf.pmf.size(); ++k) {
            mass += pmf.pmf[k];
            r.add_row({p, static_cast<std::uint64_t>(k), pmf.pmf[k]});
        }
        summary.push_back({{"p", p}, {"mass", mass}, {"tail_mass", pmf.tail_mass}});
        r.checks.push_back({fmt::format("theory p={} mass", p), std::fabs(mass - 1.0) <= c.tol.mass,
                            fmt::format("|sum - 1| = {} tolerance {}", format_double(std::fabs(mass - 1.0)),
                                        format_double(c.tol.mass))});
    }
    r.meta["theory"] = {{"formula", kPiFormula}};
    r.summary["configs"] = summary;
    return r;
}

Report cmd_anticonc(const Config& c) {
    require(!c.primes.empty(), "--p needs at least one prime");
    require(c.k >= 1, "--k must be at least 1");
    require(c.samples >= 1, "--samples must be at least 1");
    if (c.vectors.empty()) require_common(c);
    Report r;
    r.columns = {"p",           "source",    "trial",        "n",       "support",   "atom", "atom_residue",
                 "discrepancy", "fourier_deviation", "k", "rk_star", "rk_star_kind", "rk_star_se"};
    double worst = 0.0;
    for (auto p : c.primes) {
        const FpContext ctx(p);
        std::vector<std::pair<std::string, std::vector<Residue>>> inputs;
        for (const auto& text : c.vectors) {
            std::vector<Residue> v;
            for (auto x : parse_integers(text)) v.push_back(ctx.reduce(x));
            inputs.emplace_back("given", std::move(v));
        }
        const auto cfg = sampler(c, p, 0);
        if (c.vectors.empty())
            for (std::uint64_t t = 0; t < c.trials; ++t) {
                TrialRng rng(cfg, t);
                std::vector<Residue> v(c.n);
                for (auto& x : v) x = static_cast<Residue>(rng.below(p));
                inputs.emplace_back("random", std::move(v));
            }
        const auto est_cfg = sampler(c, p, 0, 3);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const auto& v = inputs[i].second;
            const auto dp = walk_distribution(v, ctx);
            const auto ft = walk_distribution_fourier(v, ctx);
            double dev = 0.0;
            for (std::size_t x = 0; x < p; ++x) dev = std::max(dev, std::fabs(dp.prob[x] - ft.prob[x]));
            worst = std::max(worst, dev);
            const auto atom = atom_probability(dp);
            const auto support = static_cast<std::uint64_t>(std::count_if(v.begin(), v.end(), [](Residue x) { return x != 0; }));
            Cell rk, kind, se;
            try {
                rk = rk_star(v, ctx, c.k);
                kind = std::string("exact");
                se = 0.0;
            } catch (const BudgetExceeded&) {
                TrialRng rng(est_cfg, i);
                const auto est = rk_star_estimate(v, ctx, c.k, c.samples, rng);
                rk = est.estimate;
                kind = std::string("estimate");
                se = est.std_error;
            }
            r.add_row({p, inputs[i].first, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(v.size()), support,
                       atom.probability, static_cast<std::uint64_t>(atom.residue), discrepancy(dp), dev,
                       static_cast<std::uint64_t>(c.k), rk, kind, se});
        }
    }
    r.summary["max_fourier_deviation"] = worst;
    r.checks.push_back({"anticonc fourier agreement", worst <= c.tol.fourier,
                        fmt::format("max deviation {} tolerance {}", format_double(worst), format_double(c.tol.fourier))});
    r.meta["theory"] = {{"atom", "rho(v) = max_r P[sum xi_i v_i = r]"},
                        {"discrepancy", "sup_x |P[sum xi_i v_i = x] - 1/p|"},
                        {"rk_star_min_distinct", rk_star_min_distinct(c.k)}};
    return r;
}

Report cmd_halasz(const Config& c) {
    require_common(c);
    require(!c.primes.empty(), "--p needs at least one prime");
    require(!c.const_C.empty(), "--const-C needs at least one value");
    require(c.L > 0.0, "--L must be positive");
    Report r;
    r.columns = {"trial", "p", "n", "support", "atom", "k", "L", "rk_star", "structure_term", "min_C",
                 "support_ok", "size_ok", "level_ok", "preconditions_ok"};
    for (double C : c.const_C) r.columns.push_back(cname("bound_C", C));
    for (double C : c.const_C) r.columns.push_back(cname("holds_C", C));

    std::vector<std::uint64_t> violations(c.const_C.size(), 0);
    std::uint64_t valid = 0, flagged = 0;
    double max_min_c = 0.0;
    const auto vectors = run_trials(c.trials, c.workers, [&](std::uint64_t t) {
        const std::uint64_t p = c.primes[t % c.primes.size()];
        TrialRng rng(sampler(c, p, 0), t);
        std::vector<Residue> v(c.n);
        for (auto& x : v) x = static_cast<Residue>(rng.below(p));
        const FpContext ctx(p);
        const auto rep = halasz_bound(v, ctx, {c.k, c.L, 0.0});
        return std::make_pair(rep, atom_probability(v, ctx).probability);
    });
    for (std::uint64_t t = 0; t < c.trials; ++t) {
        const std::uint64_t p = c.primes[t % c.primes.size()];
        const FpContext ctx(p);
        const auto& [rep, atom] = vectors[t];
        const double min_c = halasz_minimal_constant(atom, rep, ctx, c.L);
        const bool pre = rep.preconditions_hold();
        std::vector<Cell> row{static_cast<std::uint64_t>(t), p, static_cast<std::uint64_t>(c.n),
                              static_cast<std::uint64_t>(rep.support), atom, static_cast<std::uint64_t>(c.k), c.L,
                              rep.rk_star, rep.structure_term, min_c, rep.support_ok, rep.size_ok, rep.level_ok, pre};
        std::vector<Cell> holds;
        for (std::size_t i = 0; i < c.const_C.size(); ++i) {
            // rep.bound was evaluated with C = 0.
            const double bound = rep.bound + c.const_C[i] * rep.structure_term;
            row.emplace_back(bound);
            const bool ok = atom <= bound;
            holds.emplace_back(ok);
            if (pre && !ok) ++violations[i];
        }
        row.insert(row.end(), holds.begin(), holds.end());
        r.add_row(std::move(row));
        if (pre) {
            ++valid;
            max_min_c = std::max(max_min_c, min_c);
        } else {
            ++flagged;
        }
    }
    r.summary["vectors"] = c.trials;
    r.summary["preconditions_hold"] = valid;
    r.summary["flagged"] = flagged;
    r.summary["minimal_empirical_C"] = max_min_c;
    Json v = Json::object();
    for (std::size_t i = 0; i < c.const_C.size(); ++i) {
        v[format_double(c.const_C[i])] = violations[i];
        r.checks.push_back({cname("halasz C=", c.const_C[i]), violations[i] == 0,
                            fmt::format("{} violations among {} vectors with preconditions", violations[i], valid)});
    }
    r.summary["violations"] = v;
    r.meta["theory"] = {{"bound", "1/p + C (R_k^* + (40 k^0.99 n^1.01)^k) / (2^(2k) n^(2k) sqrt(L)) + exp(-L)"},
                        {"preconditions", "30L <= |supp(a)|, 80kL <= n, k <= n/2"}};
    return r;
}

Report cmd_badset(const Config& c) {
    require(c.n >= 1, "--n must be at least 1");
    require(!c.primes.empty(), "--p needs at least one prime");
    require(!c.thresholds.empty(), "--t needs at least one threshold");
    // Fail before the grid rather than partway through it.
    for (auto p : c.primes)
        if (std::pow(static_cast<double>(p), static_cast<double>(c.n)) > 1e6)
            throw BudgetExceeded("bad-set enumeration needs p^n <= 10^6");
    Report r;
    r.columns = {"p", "n", "d", "k", "s1", "s2", "t", "enumerated", "bound", "log_bound", "holds"};
    std::uint64_t rows = 0, violations = 0;
    for (auto p : c.primes) {
        const FpContext ctx(p);
        for (std::size_t n = 1; n <= c.n; ++n)
            for (std::size_t d = 1; d <= n; ++d)
                for (std::size_t s2 = 1; s2 <= d; ++s2)
                    for (std::size_t s1 = 1; s1 <= s2; ++s1)
                        for (double t : c.thresholds) {
                            const BadSetParams b{n, d, c.k, s1, s2, t};
                            const auto count = bad_set_enumerate(b, ctx);
                            const double log_bound = bad_set_log_bound(b, ctx);
                            const double bound = std::exp(log_bound);
                            const bool ok = static_cast<double>(count) <= bound;
                            ++rows;
                            violations += !ok;
                            r.add_row({p, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d),
                                       static_cast<std::uint64_t>(c.k), static_cast<std::uint64_t>(s1),
                                       static_cast<std::uint64_t>(s2), t, count, bound, log_bound, ok});
                        }
    }
    r.summary["grid_points"] = rows;
    r.summary["violations"] = violations;
    r.checks.push_back({"badset enumerated <= bound", violations == 0,
                        fmt::format("{} violations over {} grid points", violations, rows)});
    r.meta["theory"] = {{"bound", "binom(n,d) p^(d+s2) (0.01 t)^(-d + (s1/s2) d)"},
                        {"bad_condition", "R_k^*(b) >= t 2^(2k) |b|^(2k) / p for every s1 <= |b| <= s2"}};
    return r;
}

Report cmd_roots(const Config& c) {
    require_common(c);
    require(!c.primes.empty(), "--p needs at least one prime");
    require(c.n >= 8, "--n must be at least 8");
    Report r;
    r.columns = {"p", "n", "roots", "count", "frequency"};
    Json summary = Json::array();
    for (auto p : c.primes) {
        const FpContext ctx(p);
        const auto s = mean_root_count_experiment(c.n, ctx, c.trials, sampler(c, p, 0), c.workers);
        for (std::size_t k = 0; k < s.histogram.size(); ++k)
            r.add_row({p, static_cast<std::uint64_t>(c.n), static_cast<std::uint64_t>(k), s.histogram[k],
                       static_cast<double>(s.histogram[k]) / static_cast<double>(s.trials)});
        summary.push_back({{"p", p},
                           {"mean", s.mean},
                           {"std_error", s.std_error},
                           {"squarefree_fraction", static_cast<double>(s.squarefree) / static_cast<double>(s.trials)}});
        r.checks.push_back({fmt::format("roots p={} mean", p), std::fabs(s.mean - 1.0) <= c.tol.mean,
                            fmt::format("mean {} +- {} tolerance [{}, {}]", format_double(s.mean),
                                        format_double(s.std_error), format_double(1.0 - c.tol.mean),
                                        format_double(1.0 + c.tol.mean))});
    }
    r.summary["configs"] = summary;
    r.meta["theory"] = {{"expected_mean", "1 + O(1/p)"}, {"root_count", "deg gcd(phi, x^p - x)"}};
    return r;
}

Report cmd_irred(const Config& c) {
    require_common(c);
    require(c.budget >= 1, "--budget must be at least 1");
    if (c.duplicate) require(c.n % 2 == 0, "--duplicate needs an even --n");
    const auto schedule = c.primes.empty() ? odd_primes(c.budget) : c.primes;
    for (auto q : schedule) require(q % 2 == 1, "certificate primes must be odd");
    Report r;
    r.columns = {"trial", "n", "matrix", "certified", "witness", "primes_tried", "reverified"};
    const SamplerConfig cfg = sampler(c, 0, 0, c.duplicate ? 5 : 4);
    const auto results = run_trials(c.trials, c.workers, [&](std::uint64_t t) {
        const SymMatrix m = c.duplicate ? duplicated_block_matrix(c.n / 2, cfg, t)
                                        : sample_symmetric_rademacher(c.n, cfg, t);
        auto cert = irreducibility_certificate(m, schedule, c.budget);
        const bool verified = cert.certified() && verify_certificate(m, cert);
        return std::make_pair(std::move(cert), verified);
    });
    std::uint64_t certified = 0, verified = 0;
    std::map<std::uint64_t, std::uint64_t> witnesses;
    for (std::uint64_t t = 0; t < c.trials; ++t) {
        const auto& [cert, ok] = results[t];
        if (cert.certified()) {
            ++certified;
            verified += ok;
            ++witnesses[*cert.witness];
        }
        r.add_row({t, static_cast<std::uint64_t>(c.n), std::string(c.duplicate ? "duplicated" : "random"),
                   cert.certified(), cert.certified() ? Cell{*cert.witness} : Cell{},
                   static_cast<std::uint64_t>(cert.primes_tried.size()), cert.certified() ? Cell{ok} : Cell{}});
    }
    Json w = Json::object();
    for (const auto& [q, k] : witnesses) w[std::to_string(q)] = k;
    r.summary["trials"] = c.trials;
    r.summary["certified_irreducible"] = certified;
    r.summary["unknown"] = c.trials - certified;
    r.summary["certified_fraction"] = static_cast<double>(certified) / static_cast<double>(c.trials);
    r.summary["witness_primes"] = w;
    r.summary["reverified"] = verified;
    r.checks.push_back({"irred certificates re-verified", verified == certified,
                        fmt::format("{} of {} certificates confirmed by distinct-degree factorization", verified,
                                    certified)});
    if (c.duplicate)
        r.checks.push_back({"irred duplicated blocks uncertified", certified == 0,
                            fmt::format("{} certificates on perfect-square characteristic polynomials", certified)});
    r.meta["theory"] = {{"certificate", "monic integer polynomial irreducible mod a prime is irreducible over Z"}};
    return r;
}

Report cmd_structure(const Config& c) {
    require_common(c);
    require(!c.primes.empty(), "--p needs at least one prime");
    require(!c.const_C.empty(), "--const-C needs at least one value");
    Report r;
    r.columns = {"p", "lambda", "trial", "corank", "index", "in_kernel", "support", "atom", "best_window",
                 "best_window_atom", "dagger_chunks", "dagger_required"};
    for (double C : c.const_C) r.columns.push_back(cname("good_chunks_C", C));
    for (double C : c.const_C) r.columns.push_back(cname("dagger_C", C));
    Json summary = Json::array();
    for (auto p : c.primes) {
        const FpContext ctx(p);
        for (auto lam_raw : c.lambdas) {
            const Residue lam = ctx.reduce(lam_raw);
            StructureOptions opt;
            opt.dagger_constants = c.const_C;
            opt.chunk_size = c.m;
            opt.workers = c.workers;
            const auto rep = structure_check_experiment(c.n, ctx, lam, c.trials, sampler(c, p, lam), opt);
            for (const auto& o : rep.observations) {
                std::vector<Cell> row{p,
                                      static_cast<std::uint64_t>(lam),
                                      o.trial,
                                      static_cast<std::uint64_t>(o.corank),
                                      static_cast<std::uint64_t>(o.index),
                                      o.in_kernel,
                                      static_cast<std::uint64_t>(o.support),
                                      o.atom,
                                      static_cast<std::uint64_t>(o.best_window),
                                      o.best_window_atom,
                                      static_cast<std::uint64_t>(o.dagger_chunks),
                                      static_cast<std::uint64_t>(o.dagger_required)};
                for (auto g : o.dagger_good_chunks) row.emplace_back(static_cast<std::uint64_t>(g));
                for (bool h : o.dagger_holds) row.emplace_back(h);
                r.add_row(std::move(row));
            }
            Json rates = Json::object();
            for (std::size_t i = 0; i < c.const_C.size(); ++i) rates[format_double(c.const_C[i])] = rep.dagger_pass_rate(i);
            summary.push_back({{"p", p},
                               {"lambda", lam},
                               {"trials", rep.trials},
                               {"singular_samples", rep.singular_samples},
                               {"singular_fraction", static_cast<double>(rep.singular_samples) / static_cast<double>(rep.trials)},
                               {"kernel_vectors", rep.kernel_vectors()},
                               {"min_support", rep.min_support()},
                               {"support_threshold", rep.support_threshold},
                               {"below_support_threshold", rep.below_support_threshold()},
                               {"window_min", rep.window_min},
                               {"window_max", rep.window_max},
                               {"dagger_pass_rate", rates}});
            r.checks.push_back({fmt::format("structure p={} lambda={} kernel", p, lam), rep.all_in_kernel(),
                                fmt::format("A v = 0 re-verified for {} vectors", rep.kernel_vectors())});
            r.checks.push_back({fmt::format("structure p={} lambda={} count", p, lam),
                                rep.kernel_vectors() >= c.min_vectors,
                                fmt::format("{} kernel vectors, required {}", rep.kernel_vectors(), c.min_vectors)});
        }
    }
    r.summary["configs"] = summary;
    r.meta["theory"] = {{"support_threshold", "n / (16 log p)"},
                        {"window", "[sqrt(n log n), n^(3/4)]"},
                        {"dagger", "at least ceil(n/(2m)) chunks of [n] minus T with disc <= C/p^2, T = first n/4 indices"}};
    return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"rankdist", "walk",   "chain", "theory", "anticonc",
                                                "halasz",   "badset", "roots", "irred",  "structure"};
    return names;
}

std::string command_description(const std::string& name) {
    static const std::map<std::string, std::string> d{
        {"rankdist", "Corank distribution of M - lambda I over F_p against the limiting law"},
        {"walk", "Corank step frequencies of the exposure process (uniform and Rademacher models)"},
        {"chain", "Idealized corank chain final-state law against the limiting law"},
        {"theory", "Limiting corank pmf values and total-mass check"},
        {"anticonc", "Atom probability, discrepancy and R_k^* of given or random vectors"},
        {"halasz", "Halasz-type inequality sweep with the minimal empirical constant"},
        {"badset", "Exhaustive bad-set sizes against the counting bound"},
        {"roots", "Mean number of roots of the characteristic polynomial mod p"},
        {"irred", "Irreducibility certificates of characteristic polynomials"},
        {"structure", "Support, atom and dagger statistics of extracted kernel vectors"}};
    return d.at(name);
}

Config default_config(const std::string& name) {
    Config c;
    c.command = name;
    if (name == "rankdist") {
        c.n = 200;
        c.primes = {3};
        c.trials = 20000;
    } else if (name == "walk") {
        c.n = 300;
        c.primes = {3};
        c.trials = 2000;
    } else if (name == "chain") {
        c.primes = {3};
        c.trials = 50000;
    } else if (name == "theory") {
        c.primes = {3};
    } else if (name == "anticonc") {
        c.n = 16;
        c.primes = {101};
        c.trials = 10;
    } else if (name == "halasz") {
        c.n = 480;
        c.primes = primes_between(5, 101);
        c.trials = 1000;
        c.const_C = {100.0};
    } else if (name == "badset") {
        c.n = 7;
        c.primes = {3};
        c.thresholds = {1.0, 2.0, 3.0};
    } else if (name == "roots") {
        c.n = 50;
        c.primes = {101};
        c.trials = 3000;
    } else if (name == "irred") {
        c.n = 16;
        c.trials = 500;
    } else if (name == "structure") {
        c.n = 100;
        c.primes = {3};
        c.trials = 2000;
        c.const_C = {1.0, 10.0, 100.0};
    } else {
        throw InvalidArgument("unknown command " + name);
    }
    return c;
}

std::vector<std::uint64_t> parse_primes(const std::vector<std::string>& tokens) {
    std::vector<std::uint64_t> out;
    for (const auto& tok : tokens) {
        std::stringstream ss(tok);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part.empty()) continue;
            const auto colon = part.find(':');
            if (colon == std::string::npos) {
                std::size_t pos = 0;
                std::uint64_t v = 0;
                try {
                    v = std::stoull(part, &pos);
                } catch (const std::logic_error&) {
                    throw InvalidArgument("bad prime '" + part + "'");
                }
                require(pos == part.size() && part[0] != '-', "bad prime '" + part + "'");
                out.push_back(v);
            } else {
                const auto [lo, hi] = parse_range(part);
                for (auto q : primes_between(lo, hi))
                    if (q > 2) out.push_back(q);
            }
        }
    }
    for (auto q : out) FpContext check(q);
    return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    require(colon != std::string::npos, "range '" + s + "' must look like a:b");
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    try {
        const auto lo = std::stoull(a, &p1);
        const auto hi = std::stoull(b, &p2);
        require(p1 == a.size() && p2 == b.size() && lo <= hi, "range '" + s + "' must look like a:b with a <= b");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw InvalidArgument("range '" + s + "' must look like a:b with a <= b");
    }
}

std::vector<std::int64_t> parse_integers(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(part, &pos));
            require(pos == part.size(), "bad integer '" + part + "'");
        } catch (const std::logic_error&) {
            throw InvalidArgument("bad integer '" + part + "'");
        }
    }
    return out;
}

Json config_json(const Config& c) {
    return {{"command", c.command},
            {"n", c.n},
            {"p", c.primes},
            {"lambda", c.lambdas},
            {"trials", c.trials},
            {"seed", c.seed},
            {"stream", c.stream},
            {"workers", c.workers},
            {"out", c.out},
            {"format", c.format},
            {"check", c.check},
            {"no_clock", c.no_clock},
            {"const_C", c.const_C},
            {"k", c.k},
            {"L", c.L},
            {"m", c.m},
            {"t_range", Json::array({c.t_min, c.t_max})},
            {"steps", c.steps},
            {"k_max", c.k_max},
            {"vectors", c.vectors},
            {"t", c.thresholds},
            {"budget", c.budget},
            {"samples", c.samples},
            {"duplicate", c.duplicate},
            {"model", c.model},
            {"min_vectors", c.min_vectors},
            {"tol",
             {{"z", c.tol.z},
              {"abs", c.tol.abs},
              {"step_uniform", c.tol.step_uniform},
              {"step_rademacher", c.tol.step_rademacher},
              {"tv", c.tol.tv},
              {"mean", c.tol.mean},
              {"fourier", c.tol.fourier},
              {"mass", c.tol.mass}}}};
}

Report run_command(const Config& cfg) {
    Report r;
    if (cfg.command == "rankdist")
        r = cmd_rankdist(cfg);
    else if (cfg.command == "walk")
        r = cmd_walk(cfg);
    else if (cfg.command == "chain")
        r = cmd_chain(cfg);
    else if (cfg.command == "theory")
        r = cmd_theory(cfg);
    else if (cfg.command == "anticonc")
        r = cmd_anticonc(cfg);
    else if (cfg.command == "halasz")
        r = cmd_halasz(cfg);
    else if (cfg.command == "badset")
        r = cmd_badset(cfg);
    else if (cfg.command == "roots")
        r = cmd_roots(cfg);
    else if (cfg.command == "irred")
        r = cmd_irred(cfg);
    else if (cfg.command == "structure")
        r = cmd_structure(cfg);
    else
        throw InvalidArgument("unknown command " + cfg.command);
    r.command = cfg.command;
    Json meta = Json::object();
    meta["tool"] = "symfp";
    meta["version"] = SYMFP_VERSION;
    meta["seed"] = cfg.seed;
    meta["config"] = config_json(cfg);
    for (auto& [key, value] : r.meta.items()) meta[key] = value;
    r.meta = std::move(meta);
    return r;
}

}  // namespace symfp::cli
