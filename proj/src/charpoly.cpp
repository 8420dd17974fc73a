#include "symfp/charpoly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "symfp/error.hpp"
#include "symfp/parallel.hpp"

namespace symfp {

PolyFp charpoly_mod_p(const SymMatrix& m, const FpContext& ctx) {
    const std::size_t n = m.dim();
    std::vector<Residue> h = m.dense(ctx);
    auto at = [&](std::size_t i, std::size_t j) -> Residue& { return h[i * n + j]; };

    // Similarity reduction to upper Hessenberg form.
    for (std::size_t c = 0; c + 2 < n; ++c) {
        const std::size_t r = c + 1;
        std::size_t piv = r;
        while (piv < n && at(piv, c) == 0) ++piv;
        if (piv == n) continue;  // column already reduced; move to the trailing block
        if (piv != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(r, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(at(i, piv), at(i, r));
        }
        const Residue inv = ctx.inv(at(r, c));
        for (std::size_t i = r + 1; i < n; ++i) {
            if (at(i, c) == 0) continue;
            const Residue u = ctx.mul(at(i, c), inv);
            // row_i -= u·row_r, then col_r += u·col_i keeps the similarity.
            for (std::size_t j = c; j < n; ++j) at(i, j) = ctx.sub(at(i, j), ctx.mul(u, at(r, j)));
            for (std::size_t k = 0; k < n; ++k) at(k, r) = ctx.add(at(k, r), ctx.mul(u, at(k, i)));
        }
    }

    // chars[k] = det(tI − H[0..k, 0..k]).
    std::vector<std::vector<Residue>> chars(n + 1);
    chars[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t kk = k - 1;
        std::vector<Residue> next(k + 1, 0);
        const auto& prev = chars[k - 1];
        for (std::size_t d = 0; d < prev.size(); ++d) {
            next[d + 1] = ctx.add(next[d + 1], prev[d]);
            next[d] = ctx.sub(next[d], ctx.mul(at(kk, kk), prev[d]));
        }
        Residue sub_prod = 1;
        for (std::size_t i = kk; i-- > 0;) {
            sub_prod = ctx.mul(sub_prod, at(i + 1, i));
            if (sub_prod == 0) break;
            const Residue coef = ctx.mul(at(i, kk), sub_prod);
            if (coef == 0) continue;
            const auto& lower = chars[i];
            for (std::size_t d = 0; d < lower.size(); ++d) next[d] = ctx.sub(next[d], ctx.mul(coef, lower[d]));
        }
        chars[k] = std::move(next);
    }
    return {ctx.p(), std::move(chars[n])};
}

std::vector<BigInt> charpoly_exact(const SymMatrix& m) {
    if (!m.is_integral()) throw InvalidArgument("exact characteristic polynomial needs an integer matrix");
    const std::size_t n = m.dim();
    if (n > 30) throw InvalidArgument("use modular computation");
    std::vector<BigInt> c(n + 1);
    c[n] = 1;
    // M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k, with M_0 = 0.
    std::vector<BigInt> mk(n * n), prod(n * n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k == 1) {
            for (std::size_t i = 0; i < n; ++i) mk[i * n + i] = 1;
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    BigInt s = 0;
                    for (std::size_t l = 0; l < n; ++l) {
                        const std::int32_t a = m(i, l);
                        if (a != 0) s += a * mk[l * n + j];
                    }
                    prod[i * n + j] = std::move(s);
                }
            mk.swap(prod);
            for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += c[n - k + 1];
        }
        BigInt trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                const std::int32_t a = m(i, l);
                if (a != 0) trace += a * mk[l * n + i];
            }
        const BigInt kk = static_cast<unsigned>(k);
        if (trace % kk != 0) throw std::logic_error("Faddeev-LeVerrier division is not exact");
        c[n - k] = -(trace / kk);
    }
    return c;
}

std::size_t count_roots_fp(const PolyFp& f, const FpContext& ctx) {
    if (f.is_zero()) throw InvalidArgument("root count of the zero polynomial");
    if (f.degree() == 0) return 0;
    const PolyFp x = PolyFp::monomial(1, ctx);
    const PolyFp xp = powmod(x, ctx.p(), f, ctx);
    return static_cast<std::size_t>(gcd(f, sub(xp, x, ctx), ctx).degree());
}

bool is_irreducible_fp(const PolyFp& f_in, const FpContext& ctx) {
    if (f_in.is_zero()) throw InvalidArgument("irreducibility of the zero polynomial");
    if (f_in.degree() < 1) throw InvalidArgument("irreducibility needs degree >= 1");
    const PolyFp f = make_monic(f_in, ctx);
    const auto n = static_cast<std::size_t>(f.degree());
    if (n == 1) return true;

    std::vector<std::size_t> prime_divisors;
    for (std::size_t q = 2, r = n; q <= r; ++q)
        if (r % q == 0) {
            prime_divisors.push_back(q);
            while (r % q == 0) r /= q;
        }

    const PolyFp x = PolyFp::monomial(1, ctx);
    std::vector<PolyFp> frob(n + 1);  // frob[k] = x^{p^k} mod f
    frob[0] = mod(x, f, ctx);
    for (std::size_t k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], ctx.p(), f, ctx);
    if (frob[n] != frob[0]) return false;
    for (std::size_t q : prime_divisors)
        if (gcd(f, sub(frob[n / q], x, ctx), ctx).degree() != 0) return false;
    return true;
}

bool is_squarefree_fp(const PolyFp& f, const FpContext& ctx) {
    if (f.is_zero()) throw InvalidArgument("squarefreeness of the zero polynomial");
    return gcd(f, derivative(f, ctx), ctx).degree() == 0;
}

RootCountReport root_count_report(const SymMatrix& m, const FpContext& ctx) {
    const PolyFp f = charpoly_mod_p(m, ctx);
    return {ctx.p(), count_roots_fp(f, ctx), is_squarefree_fp(f, ctx)};
}

IrredCertificate irreducibility_certificate(const SymMatrix& m, std::span<const std::uint64_t> primes,
                                            std::size_t budget) {
    if (budget == 0) throw InvalidArgument("certificate budget must be at least 1");
    IrredCertificate cert;
    for (std::size_t i = 0; i < primes.size() && i < budget; ++i) {
        const FpContext ctx(primes[i]);
        cert.primes_tried.push_back(primes[i]);
        if (is_irreducible_fp(charpoly_mod_p(m, ctx), ctx)) {
            cert.witness = primes[i];
            break;
        }
    }
    return cert;
}

IrredCertificate irreducibility_certificate(const SymMatrix& m, std::size_t budget) {
    const auto primes = odd_primes(budget);
    return irreducibility_certificate(m, primes, budget);
}

bool verify_certificate(const SymMatrix& m, const IrredCertificate& cert) {
    if (!cert.witness) return false;
    const FpContext ctx(*cert.witness);
    const PolyFp f = charpoly_mod_p(m, ctx);
    if (!is_squarefree_fp(f, ctx)) return false;
    const auto factors = distinct_degree_factorization(f, ctx);
    return factors.size() == 1 && static_cast<long>(factors[0].degree) == f.degree() &&
           factors[0].product == f;
}

double weight_w(double X, double t) {
    if (!(X > 0.0)) throw InvalidArgument("w_X needs X > 0");
    return (t > X - std::numbers::ln2 && t <= X) ? 2.0 * std::exp(-X) * t : 0.0;
}

double weighted_root_sum(const SymMatrix& m, double X) {
    if (!(X > 0.0)) throw InvalidArgument("w_X needs X > 0");
    if (window_upper({X}) > 1e7) throw BudgetExceeded("prime window bound e^X exceeds 10^7");
    double total = 0.0;
    const double scale = 2.0 * std::exp(-X);
    for (std::uint64_t q : primes_in_window({X})) {
        if (q == 2) continue;
        const FpContext ctx(q);
        // Membership is decided by the window itself, which snaps e^X to an
        // integer; evaluating w_X here would re-test log q against X in floating point.
        total += static_cast<double>(count_roots_fp(charpoly_mod_p(m, ctx), ctx)) * scale *
                 std::log(static_cast<double>(q));
    }
    return total;
}

RootCountStats mean_root_count_experiment(std::size_t n, const FpContext& ctx, std::uint64_t trials,
                                          const SamplerConfig& cfg, std::size_t workers) {
    if (n < 8) throw InvalidArgument("mean root count experiment needs n >= 8");
    if (trials == 0) throw InvalidArgument("trials must be positive");
    const auto reports = run_trials(trials, workers, [&](std::uint64_t trial) {
        return root_count_report(sample_symmetric_rademacher(n, cfg, trial), ctx);
    });
    RootCountStats s;
    s.n = n;
    s.p = ctx.p();
    s.trials = trials;
    s.histogram.assign(n + 1, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& r : reports) {
        ++s.histogram[r.roots];
        s.squarefree += r.squarefree_mod_p;
        sum += static_cast<double>(r.roots);
        sum_sq += static_cast<double>(r.roots) * static_cast<double>(r.roots);
    }
    const auto N = static_cast<double>(trials);
    s.mean = sum / N;
    const double var = trials > 1 ? std::max(0.0, (sum_sq - N * s.mean * s.mean) / (N - 1.0)) : 0.0;
    s.std_error = std::sqrt(var / N);
    while (s.histogram.size() > 1 && s.histogram.back() == 0) s.histogram.pop_back();
    return s;
}

SymMatrix duplicated_block_matrix(std::size_t half, const SamplerConfig& cfg, std::uint64_t trial) {
    const SymMatrix b = sample_symmetric_rademacher(half, cfg, trial);
    const SymMatrix blocks[] = {b, b};
    return block_diagonal(blocks);
}

}  // namespace symfp
