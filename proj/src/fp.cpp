#include "symfp/fp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "symfp/error.hpp"

namespace symfp {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

FpContext::FpContext(std::uint64_t p) {
    if (p < 3 || p >= (std::uint64_t{1} << 31) || !is_prime(p))
        throw InvalidArgument("modulus must be an odd prime in [3, 2^31): " + std::to_string(p));
    p_ = static_cast<Residue>(p);
    const std::uint64_t sq = static_cast<std::uint64_t>(p_ - 1) * (p_ - 1);
    lazy_budget_ = (std::numeric_limits<std::uint64_t>::max() - p_) / sq;
}

Residue FpContext::inv(Residue a) const { return mod_inv(a, *this); }

Residue FpContext::pow(Residue base, std::uint64_t e) const noexcept {
    return static_cast<Residue>(powmod64(base, e, p_));
}

Residue FpContext::dot(std::span<const Residue> a, std::span<const Residue> b) const noexcept {
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    std::uint64_t acc = 0;
    std::size_t i = 0;
    while (i < n) {
        const std::size_t stop = (n - i) > lazy_budget_ ? i + lazy_budget_ : n;
        for (; i < stop; ++i) acc += static_cast<std::uint64_t>(a[i]) * b[i];
        acc %= p_;
    }
    return static_cast<Residue>(acc);
}

Residue mod_inv(std::int64_t a, const FpContext& ctx) {
    const std::int64_t p = ctx.p();
    std::int64_t r0 = p, r1 = ctx.reduce(a);
    if (r1 == 0) throw InvalidArgument("non-invertible residue");
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return ctx.reduce(s0);
}

bool is_prime(std::uint64_t m) {
    if (m < 2) throw InvalidArgument("out of range");
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (m == q) return true;
        if (m % q == 0) return false;
    }
    std::uint64_t d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a proven deterministic set below 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod64(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    std::vector<bool> composite(hi + 1, false);
    for (std::uint64_t i = 2; i * i <= hi; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
    for (std::uint64_t q = lo < 2 ? 2 : lo; q <= hi; ++q)
        if (!composite[q]) out.push_back(q);
    return out;
}

double window_upper(WeightWindow w) {
    const double e = std::exp(w.X);
    const double r = std::nearbyint(e);
    return std::fabs(e - r) <= 1e-9 * e ? r : e;
}

std::vector<std::uint64_t> primes_in_window(WeightWindow w) {
    const double upper = window_upper(w);
    if (upper < 2.0) return {};
    const auto hi = static_cast<std::uint64_t>(std::floor(upper));
    // q > upper/2  <=>  2q > upper, exact once upper is snapped.
    std::vector<std::uint64_t> out;
    for (std::uint64_t q : primes_between(static_cast<std::uint64_t>(std::floor(upper / 2.0)), hi))
        if (2.0 * static_cast<double>(q) > upper) out.push_back(q);
    return out;
}

std::vector<std::uint64_t> odd_primes(std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 3; out.size() < count; q += 2)
        if (is_prime(q)) out.push_back(q);
    return out;
}

}  // namespace symfp
