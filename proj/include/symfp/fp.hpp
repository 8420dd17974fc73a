#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace symfp {

using Residue = std::uint32_t;

/// Arithmetic modulo an odd prime 3 <= p < 2^31.
///
/// Residues are kept in [0, p). Products of two residues fit in 64 bits, so
/// every helper reduces with a single `%` on a 64-bit intermediate.
class FpContext {
public:
    /// Throws InvalidArgument unless `p` is an odd prime below 2^31.
    explicit FpContext(std::uint64_t p);

    [[nodiscard]] Residue p() const noexcept { return p_; }

    [[nodiscard]] Residue reduce(std::int64_t x) const noexcept {
        auto r = x % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    [[nodiscard]] Residue add(Residue a, Residue b) const noexcept {
        auto s = a + b;  // < 2^32
        return s >= p_ ? s - p_ : s;
    }
    [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    [[nodiscard]] Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// Throws InvalidArgument("non-invertible residue") for a ≡ 0.
    [[nodiscard]] Residue inv(Residue a) const;
    [[nodiscard]] Residue pow(Residue base, std::uint64_t e) const noexcept;

    /// Sum of a[i]*b[i] mod p, with lazy reduction in 64-bit chunks.
    [[nodiscard]] Residue dot(std::span<const Residue> a, std::span<const Residue> b) const noexcept;

    /// Number of products (each < (p-1)^2) that can be accumulated in a
    /// uint64 on top of a value below p without overflow.
    [[nodiscard]] std::uint64_t lazy_budget() const noexcept { return lazy_budget_; }

    friend bool operator==(const FpContext& a, const FpContext& b) noexcept { return a.p_ == b.p_; }

private:
    Residue p_;
    std::uint64_t lazy_budget_;
};

/// Inverse of `a` modulo the context prime by the extended Euclidean
/// algorithm. Throws InvalidArgument("non-invertible residue") if a ≡ 0.
[[nodiscard]] Residue mod_inv(std::int64_t a, const FpContext& ctx);

/// Deterministic Miller-Rabin, exact for every m < 2^64.
/// Throws InvalidArgument("out of range") for m < 2.
[[nodiscard]] bool is_prime(std::uint64_t m);

/// Prime window induced by the weighting function w_X: primes q with
/// log q in (X - log 2, X], i.e. e^X/2 < q <= e^X.
struct WeightWindow {
    double X;
};

/// Primes of the window in ascending order. When e^X lies within 1e-9
/// (relative) of an integer it is snapped to that integer, so windows given
/// as X = log N behave as (N/2, N] exactly.
[[nodiscard]] std::vector<std::uint64_t> primes_in_window(WeightWindow w);

/// Upper end e^X of the window after snapping; used for budget checks.
[[nodiscard]] double window_upper(WeightWindow w);

/// The first `count` odd primes, ascending from 3.
[[nodiscard]] std::vector<std::uint64_t> odd_primes(std::size_t count);

/// All primes in [lo, hi], ascending, by a segmented-free simple sieve.
[[nodiscard]] std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

}  // namespace symfp
