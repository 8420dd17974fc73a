#include "symfp/anticoncentration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "symfp/error.hpp"
#include "symfp/parallel.hpp"
#include "symfp/sym_matrix.hpp"

namespace symfp {

namespace {

Residue reduce_entry(Residue x, const FpContext& ctx) { return x % ctx.p(); }

double int_pow(double base, unsigned e) {
    double r = 1.0;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

WalkPmf walk_distribution(std::span<const Residue> v, const FpContext& ctx) {
    const std::size_t p = ctx.p();
    WalkPmf out{ctx.p(), v.size(), std::vector<double>(p, 0.0)};
    out.prob[0] = 1.0;
    std::vector<double> next(p);
    for (Residue raw : v) {
        const std::size_t a = reduce_entry(raw, ctx);
        if (a == 0) continue;
        for (std::size_t x = 0; x < p; ++x) {
            const std::size_t minus = x >= a ? x - a : x + p - a;
            const std::size_t plus = x + a >= p ? x + a - p : x + a;
            next[x] = 0.5 * (out.prob[minus] + out.prob[plus]);
        }
        out.prob.swap(next);
    }
    return out;
}

WalkPmf walk_distribution_fourier(std::span<const Residue> v, const FpContext& ctx) {
    const std::size_t p = ctx.p();
    std::vector<double> cosine(p);
    for (std::size_t r = 0; r < p; ++r)
        cosine[r] = std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
    std::vector<double> product(p, 1.0);
    for (std::size_t l = 1; l < p; ++l)
        for (Residue raw : v) product[l] *= cosine[(l * reduce_entry(raw, ctx)) % p];
    WalkPmf out{ctx.p(), v.size(), std::vector<double>(p, 0.0)};
    for (std::size_t x = 0; x < p; ++x) {
        double s = 0.0;
        for (std::size_t l = 0; l < p; ++l) s += cosine[(l * x) % p] * product[l];
        out.prob[x] = s / static_cast<double>(p);
    }
    return out;
}

std::vector<unsigned __int128> walk_counts(std::span<const Residue> v, const FpContext& ctx) {
    if (v.size() > 126) throw InvalidArgument("walk_counts supports at most 126 coordinates");
    const std::size_t p = ctx.p();
    std::vector<unsigned __int128> cur(p, 0), next(p);
    cur[0] = 1;
    for (Residue raw : v) {
        const std::size_t a = reduce_entry(raw, ctx);
        for (std::size_t x = 0; x < p; ++x) {
            const std::size_t minus = (x + p - a) % p;
            const std::size_t plus = (x + a) % p;
            next[x] = cur[minus] + cur[plus];
        }
        cur.swap(next);
    }
    return cur;
}

Atom atom_probability(const WalkPmf& pmf) {
    Atom best{-1.0, 0};
    for (std::size_t x = 0; x < pmf.prob.size(); ++x)
        if (pmf.prob[x] > best.probability) best = {pmf.prob[x], static_cast<Residue>(x)};
    return best;
}

Atom atom_probability(std::span<const Residue> v, const FpContext& ctx) {
    return atom_probability(walk_distribution(v, ctx));
}

double discrepancy(const WalkPmf& pmf) {
    const double uniform = 1.0 / static_cast<double>(pmf.p);
    double d = 0.0;
    for (double x : pmf.prob) d = std::max(d, std::fabs(x - uniform));
    return d;
}

double discrepancy(std::span<const Residue> v, const FpContext& ctx) {
    return discrepancy(walk_distribution(v, ctx));
}

std::uint64_t rk_star(std::span<const Residue> a, const FpContext& ctx, unsigned k) {
    if (k == 0) throw InvalidArgument("R_k^* needs k >= 1");
    const std::size_t n = a.size();
    const unsigned len = 2 * k;
    if (std::pow(static_cast<double>(n), len) * int_pow(4.0, k) > kRkStarBudget)
        throw BudgetExceeded("instance too large; use sampling estimate");
    if (n == 0) return 0;
    const std::size_t need = rk_star_min_distinct(k);
    if (need > len) return 0;
    std::vector<Residue> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = reduce_entry(a[i], ctx);
    std::vector<std::size_t> idx(len, 0);
    std::vector<std::size_t> mult(n, 0);
    mult[0] = len;
    std::size_t distinct = 1;
    const std::uint64_t patterns = std::uint64_t{1} << len;
    std::uint64_t total = 0;
    for (;;) {
        if (distinct >= need) {
            // Gray code: pattern g differs from g-1 in bit ctz(g); bit set = minus sign.
            Residue sum = 0;
            for (unsigned j = 0; j < len; ++j) sum = ctx.add(sum, vals[idx[j]]);
            std::uint64_t code = 0;
            total += sum == 0;
            for (std::uint64_t g = 1; g < patterns; ++g) {
                const unsigned bit = static_cast<unsigned>(__builtin_ctzll(g));
                const Residue twice = ctx.add(vals[idx[bit]], vals[idx[bit]]);
                code ^= std::uint64_t{1} << bit;
                sum = (code >> bit) & 1 ? ctx.sub(sum, twice) : ctx.add(sum, twice);
                total += sum == 0;
            }
        }
        // Odometer step over [n]^{2k}.
        unsigned pos = 0;
        for (; pos < len; ++pos) {
            if (--mult[idx[pos]] == 0) --distinct;
            if (idx[pos] + 1 < n) {
                ++idx[pos];
                if (mult[idx[pos]]++ == 0) ++distinct;
                break;
            }
            idx[pos] = 0;
            if (mult[0]++ == 0) ++distinct;
        }
        if (pos == len) break;
    }
    return total;
}

RkStarEstimate rk_star_estimate(std::span<const Residue> a, const FpContext& ctx, unsigned k, std::uint64_t samples,
                                TrialRng& rng) {
    if (k == 0) throw InvalidArgument("R_k^* needs k >= 1");
    if (samples == 0) throw InvalidArgument("estimate needs at least one sample");
    const std::size_t n = a.size();
    RkStarEstimate est;
    est.samples = samples;
    if (n == 0) return est;
    const unsigned len = 2 * k;
    const std::size_t need = rk_star_min_distinct(k);
    std::vector<std::size_t> idx(len);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Residue sum = 0;
        for (unsigned j = 0; j < len; ++j) {
            idx[j] = rng.below(n);
            const Residue x = reduce_entry(a[idx[j]], ctx);
            sum = rng.sign() > 0 ? ctx.add(sum, x) : ctx.sub(sum, x);
        }
        std::sort(idx.begin(), idx.end());
        const auto distinct = static_cast<std::size_t>(std::unique(idx.begin(), idx.end()) - idx.begin());
        hits += (distinct >= need && sum == 0);
    }
    const double scale = std::pow(static_cast<double>(n), len) * int_pow(4.0, k);
    const double q = static_cast<double>(hits) / static_cast<double>(samples);
    est.estimate = scale * q;
    est.std_error = scale * std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
    return est;
}

HalaszReport halasz_bound(std::span<const Residue> a, const FpContext& ctx, const HalaszParams& hp) {
    const std::size_t n = a.size();
    HalaszReport rep;
    rep.support = static_cast<std::size_t>(
        std::count_if(a.begin(), a.end(), [&](Residue x) { return reduce_entry(x, ctx) != 0; }));
    if (rep.support == 0) throw InvalidArgument("theorem requires nonzero vector");
    if (!(hp.L > 0.0)) throw InvalidArgument("L must be positive");
    const auto nd = static_cast<double>(n);
    rep.support_ok = 30.0 * hp.L <= static_cast<double>(rep.support);
    rep.size_ok = 80.0 * hp.k * hp.L <= nd;
    rep.level_ok = 2 * static_cast<std::size_t>(hp.k) <= n;
    rep.rk_star = hp.k == 0 ? 0 : rk_star(a, ctx, hp.k);
    const double k = hp.k;
    const double correction = hp.k == 0 ? 1.0 : std::pow(40.0 * std::pow(k, 0.99) * std::pow(nd, 1.01), k);
    const double denom = int_pow(4.0, hp.k) * std::pow(nd, 2.0 * k) * std::sqrt(hp.L);
    rep.structure_term = (static_cast<double>(rep.rk_star) + correction) / denom;
    rep.bound = 1.0 / static_cast<double>(ctx.p()) + hp.C * rep.structure_term + std::exp(-hp.L);
    return rep;
}

double halasz_minimal_constant(double atom, const HalaszReport& rep, const FpContext& ctx, double L) {
    const double slack = atom - 1.0 / static_cast<double>(ctx.p()) - std::exp(-L);
    return slack <= 0.0 ? 0.0 : slack / rep.structure_term;
}

namespace {

void validate_shape(const BadSetParams& b) {
    if (!(1 <= b.s1 && b.s1 <= b.s2 && b.s2 <= b.d && b.d <= b.n))
        throw InvalidArgument("bad-set parameters need 1 <= s1 <= s2 <= d <= n");
    if (b.k < 1) throw InvalidArgument("bad-set parameters need k >= 1");
    if (!(b.t >= 1.0)) throw InvalidArgument("bad-set threshold t must be at least 1");
}

}  // namespace

void validate(const BadSetParams& b, const FpContext& ctx) {
    validate_shape(b);
    if (!(b.t <= static_cast<double>(ctx.p()))) throw InvalidArgument("bad-set threshold t must lie in [1, p]");
}

double bad_set_log_bound(const BadSetParams& b, const FpContext& ctx) {
    validate_shape(b);
    const auto n = static_cast<double>(b.n), d = static_cast<double>(b.d);
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(d + 1.0) - std::lgamma(n - d + 1.0);
    const double exponent = -d + static_cast<double>(b.s1) / static_cast<double>(b.s2) * d;
    return log_binom + (d + static_cast<double>(b.s2)) * std::log(static_cast<double>(ctx.p())) +
           exponent * std::log(0.01 * b.t);
}

double bad_set_bound(const BadSetParams& b, const FpContext& ctx) { return std::exp(bad_set_log_bound(b, ctx)); }

std::uint64_t bad_set_enumerate(const BadSetParams& b, const FpContext& ctx) {
    validate(b, ctx);
    const std::uint64_t p = ctx.p();
    if (std::pow(static_cast<double>(p), static_cast<double>(b.n)) > 1e6)
        throw BudgetExceeded("bad-set enumeration needs p^n <= 10^6");
    const long double coeff = static_cast<long double>(b.t) * std::pow(4.0L, b.k);
    std::map<std::vector<Residue>, std::uint64_t> cache;  // R_k^* is permutation invariant
    auto rk_of = [&](std::vector<Residue> sub) {
        std::sort(sub.begin(), sub.end());
        auto it = cache.find(sub);
        if (it != cache.end()) return it->second;
        const auto r = rk_star(sub, ctx, b.k);
        cache.emplace(std::move(sub), r);
        return r;
    };

    std::vector<Residue> a(b.n, 0);
    std::vector<Residue> supp_vals;
    std::vector<Residue> sub;
    std::uint64_t bad = 0;
    for (;;) {
        supp_vals.clear();
        for (Residue x : a)
            if (x != 0) supp_vals.push_back(x);
        if (supp_vals.size() == b.d) {
            bool all = true;
            const std::uint32_t full = 1u << b.d;
            for (std::uint32_t mask = 1; mask < full && all; ++mask) {
                const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
                if (size < b.s1 || size > b.s2) continue;
                sub.clear();
                for (std::size_t i = 0; i < b.d; ++i)
                    if (mask >> i & 1) sub.push_back(supp_vals[i]);
                const long double rhs = coeff * std::pow(static_cast<long double>(size), 2.0L * b.k);
                // R >= t·4^k·|b|^{2k}/p, multiplied through by p.
                all = static_cast<long double>(rk_of(sub)) * static_cast<long double>(p) >= rhs;
            }
            bad += all;
        }
        std::size_t pos = 0;
        for (; pos < b.n; ++pos) {
            if (++a[pos] < p) break;
            a[pos] = 0;
        }
        if (pos == b.n) break;
    }
    return bad;
}

DaggerResult check_dagger(std::span<const Residue> v, const FpContext& ctx, std::span<const std::size_t> excluded,
                          std::size_t m, double C) {
    const std::size_t n = v.size();
    if (m == 0) throw InvalidArgument("chunk size m must be positive");
    std::vector<bool> skip(n, false);
    for (std::size_t i : excluded) {
        if (i >= n || skip[i]) throw InvalidArgument("excluded set has an out-of-range or repeated index");
        skip[i] = true;
    }
    if (4 * excluded.size() > n) throw PreconditionViolated("excluded set T must have size at most n/4");
    const std::size_t available = n - excluded.size();
    if (m > available) throw InvalidArgument("chunk size m exceeds |[n] \\ T|");

    DaggerResult res;
    res.required = (n + 2 * m - 1) / (2 * m);
    const double threshold = C / (static_cast<double>(ctx.p()) * static_cast<double>(ctx.p()));
    std::vector<Residue> chunk;
    chunk.reserve(m);
    for (std::size_t i = 0; i < n; ++i) {
        if (skip[i]) continue;
        chunk.push_back(v[i]);
        if (chunk.size() == m) {
            const double d = discrepancy(chunk, ctx);
            res.chunk_discrepancy.push_back(d);
            res.good_chunks += d <= threshold;
            chunk.clear();
        }
    }
    res.chunks = res.chunk_discrepancy.size();
    res.holds = res.good_chunks >= res.required;
    return res;
}

bool StructureReport::all_in_kernel() const noexcept {
    return std::all_of(observations.begin(), observations.end(), [](const auto& o) { return o.in_kernel; });
}

std::size_t StructureReport::min_support() const noexcept {
    std::size_t best = 0;
    for (const auto& o : observations)
        if (best == 0 || o.support < best) best = o.support;
    return best;
}

std::size_t StructureReport::below_support_threshold() const noexcept {
    return static_cast<std::size_t>(std::count_if(observations.begin(), observations.end(), [&](const auto& o) {
        return static_cast<double>(o.support) < support_threshold;
    }));
}

double StructureReport::dagger_pass_rate(std::size_t c) const noexcept {
    if (observations.empty()) return 0.0;
    std::size_t pass = 0;
    for (const auto& o : observations) pass += c < o.dagger_holds.size() && o.dagger_holds[c];
    return static_cast<double>(pass) / static_cast<double>(observations.size());
}

StructureReport structure_check_experiment(std::size_t n, const FpContext& ctx, Residue lambda, std::uint64_t trials,
                                           const SamplerConfig& cfg, const StructureOptions& options) {
    if (n < 32) throw InvalidArgument("structure experiment needs n >= 32");
    StructureReport rep;
    rep.n = n;
    rep.p = ctx.p();
    rep.lambda = ctx.reduce(lambda);
    rep.trials = trials;
    const double nd = static_cast<double>(n);
    rep.support_threshold = nd / (16.0 * std::log(static_cast<double>(ctx.p())));
    rep.window_min = std::sqrt(nd * std::log(nd));
    rep.window_max = std::pow(nd, 0.75);
    const auto w_lo = static_cast<std::size_t>(std::ceil(rep.window_min));
    const auto w_hi = static_cast<std::size_t>(std::floor(rep.window_max));

    std::vector<std::size_t> excluded(n / 4);
    for (std::size_t i = 0; i < excluded.size(); ++i) excluded[i] = i;

    auto per_trial = [&](std::uint64_t trial) {
        std::vector<KernelObservation> obs;
        const SymMatrix a = reduce(sample_symmetric_rademacher(n, cfg, trial), ctx, lambda);
        const auto basis = kernel_basis(a, ctx);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const auto& v = basis[b];
            KernelObservation o;
            o.trial = trial;
            o.corank = basis.size();
            o.index = b;
            const auto image = mat_vec(a, v, ctx);
            o.in_kernel = std::all_of(image.begin(), image.end(), [](Residue x) { return x == 0; });
            std::vector<Residue> supp;
            for (Residue x : v)
                if (x != 0) supp.push_back(x);
            o.support = supp.size();
            o.atom = atom_probability(v, ctx).probability;
            // Contiguous windows of the support; the whole support if it is
            // shorter than the window range.
            o.best_window_atom = 2.0;
            const std::size_t lo = std::min(w_lo, supp.size());
            const std::size_t hi = std::min(w_hi, supp.size());
            for (std::size_t w = std::max<std::size_t>(lo, 1); w <= hi; ++w)
                for (std::size_t s = 0; s + w <= supp.size(); ++s) {
                    const double r =
                        atom_probability(std::span<const Residue>(supp).subspan(s, w), ctx).probability;
                    if (r < o.best_window_atom) {
                        o.best_window_atom = r;
                        o.best_window = w;
                    }
                }
            if (o.best_window == 0) {
                o.best_window = supp.size();
                o.best_window_atom = o.atom;
            }
            const auto dag = check_dagger(v, ctx, excluded, options.chunk_size, 0.0);
            o.dagger_chunks = dag.chunks;
            o.dagger_required = dag.required;
            const double p2 = static_cast<double>(ctx.p()) * static_cast<double>(ctx.p());
            for (double C : options.dagger_constants) {
                const auto good = static_cast<std::size_t>(std::count_if(
                    dag.chunk_discrepancy.begin(), dag.chunk_discrepancy.end(), [&](double d) { return d <= C / p2; }));
                o.dagger_good_chunks.push_back(good);
                o.dagger_holds.push_back(good >= dag.required);
            }
            obs.push_back(std::move(o));
        }
        return obs;
    };
    const auto results = run_trials(trials, options.workers, per_trial);
    for (const auto& r : results) {
        if (!r.empty()) ++rep.singular_samples;
        rep.observations.insert(rep.observations.end(), r.begin(), r.end());
    }
    return rep;
}

}  // namespace symfp
