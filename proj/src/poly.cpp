#include "symfp/poly.hpp"

#include <algorithm>

#include "symfp/error.hpp"

namespace symfp {

namespace {

void trim(std::vector<Residue>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

PolyFp::PolyFp(Residue p, std::vector<Residue> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (Residue x : c_)
        if (x >= p) throw InvalidArgument("polynomial coefficient is not a residue");
    trim(c_);
}

PolyFp PolyFp::from_integers(const std::vector<std::int64_t>& coeffs, const FpContext& ctx) {
    std::vector<Residue> c(coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.reduce(coeffs[i]);
    return {ctx.p(), std::move(c)};
}

PolyFp PolyFp::monomial(std::size_t d, const FpContext& ctx) {
    std::vector<Residue> c(d + 1, 0);
    c[d] = 1;
    return {ctx.p(), std::move(c)};
}

PolyFp add(const PolyFp& a, const PolyFp& b, const FpContext& ctx) {
    std::vector<Residue> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(a[i], b[i]);
    return {ctx.p(), std::move(c)};
}

PolyFp sub(const PolyFp& a, const PolyFp& b, const FpContext& ctx) {
    std::vector<Residue> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.sub(a[i], b[i]);
    return {ctx.p(), std::move(c)};
}

PolyFp mul(const PolyFp& a, const PolyFp& b, const FpContext& ctx) {
    if (a.is_zero() || b.is_zero()) return {ctx.p(), {}};
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    const std::size_t len = x.size() + y.size() - 1;
    std::vector<Residue> c(len);
    const std::uint64_t budget = ctx.lazy_budget();
    const Residue p = ctx.p();
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t lo = k >= y.size() ? k - y.size() + 1 : 0;
        const std::size_t hi = std::min(k, x.size() - 1);
        std::uint64_t acc = 0, pending = 0;
        for (std::size_t i = lo; i <= hi; ++i) {
            acc += static_cast<std::uint64_t>(x[i]) * y[k - i];
            if (++pending == budget) {
                acc %= p;
                pending = 0;
            }
        }
        c[k] = static_cast<Residue>(acc % p);
    }
    return {p, std::move(c)};
}

PolyFp scale(const PolyFp& a, Residue s, const FpContext& ctx) {
    std::vector<Residue> c(a.coeffs());
    for (auto& x : c) x = ctx.mul(x, s);
    return {ctx.p(), std::move(c)};
}

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b, const FpContext& ctx) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    if (a.degree() < b.degree()) return {PolyFp(ctx.p(), {}), a};
    std::vector<Residue> r(a.coeffs());
    const auto& d = b.coeffs();
    const std::size_t db = d.size() - 1;
    const Residue lead_inv = ctx.inv(b.lead());
    std::vector<Residue> q(r.size() - db, 0);
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        const Residue f = ctx.mul(r[i], lead_inv);
        q[i - db] = f;
        const std::size_t base = i - db;
        for (std::size_t j = 0; j <= db; ++j) r[base + j] = ctx.sub(r[base + j], ctx.mul(f, d[j]));
    }
    r.resize(db);
    return {PolyFp(ctx.p(), std::move(q)), PolyFp(ctx.p(), std::move(r))};
}

PolyFp mod(const PolyFp& a, const PolyFp& b, const FpContext& ctx) { return divmod(a, b, ctx).second; }

PolyFp make_monic(const PolyFp& a, const FpContext& ctx) {
    if (a.is_zero() || a.is_monic()) return a;
    return scale(a, ctx.inv(a.lead()), ctx);
}

PolyFp gcd(PolyFp a, PolyFp b, const FpContext& ctx) {
    while (!b.is_zero()) {
        PolyFp r = mod(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, ctx);
}

PolyFp derivative(const PolyFp& a, const FpContext& ctx) {
    if (a.degree() < 1) return {ctx.p(), {}};
    std::vector<Residue> c(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = ctx.mul(a[i], ctx.reduce(static_cast<std::int64_t>(i)));
    return {ctx.p(), std::move(c)};
}

PolyFp powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m, const FpContext& ctx) {
    if (m.is_zero()) throw InvalidArgument("polynomial modulus is zero");
    PolyFp result = mod(PolyFp(ctx.p(), {1}), m, ctx);
    PolyFp b = mod(base, m, ctx);
    while (e > 0) {
        if (e & 1) result = mod(mul(result, b, ctx), m, ctx);
        e >>= 1;
        if (e > 0) b = mod(mul(b, b, ctx), m, ctx);
    }
    return result;
}

Residue eval(const PolyFp& a, Residue x, const FpContext& ctx) {
    Residue acc = 0;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), a[i]);
    return acc;
}

std::vector<DegreeFactor> distinct_degree_factorization(const PolyFp& f, const FpContext& ctx) {
    if (f.degree() < 1) throw InvalidArgument("factorization needs degree >= 1");
    std::vector<DegreeFactor> out;
    PolyFp rest = make_monic(f, ctx);
    const PolyFp x = PolyFp::monomial(1, ctx);
    PolyFp frob = x;  // x^{p^d} mod rest
    for (std::size_t d = 1; 2 * static_cast<long>(d) <= rest.degree(); ++d) {
        frob = powmod(frob, ctx.p(), rest, ctx);
        const PolyFp g = gcd(rest, sub(frob, x, ctx), ctx);
        if (g.degree() > 0) {
            out.push_back({d, g});
            rest = divmod(rest, g, ctx).first;
            frob = mod(frob, rest, ctx);
        }
    }
    if (rest.degree() > 0) out.push_back({static_cast<std::size_t>(rest.degree()), rest});
    return out;
}

}  // namespace symfp
