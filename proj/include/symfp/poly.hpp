#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "symfp/fp.hpp"

namespace symfp {

/// Dense polynomial over F_p, coefficients low to high. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
class PolyFp {
public:
    PolyFp() = default;
    /// Trims trailing zeros; coefficients must already be residues.
    PolyFp(Residue p, std::vector<Residue> coeffs);
    /// Coefficients reduced from arbitrary integers.
    static PolyFp from_integers(const std::vector<std::int64_t>& coeffs, const FpContext& ctx);
    /// x^d.
    static PolyFp monomial(std::size_t d, const FpContext& ctx);

    [[nodiscard]] Residue modulus() const noexcept { return p_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] Residue lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    [[nodiscard]] bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    [[nodiscard]] Residue operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    [[nodiscard]] const std::vector<Residue>& coeffs() const noexcept { return c_; }

    friend bool operator==(const PolyFp&, const PolyFp&) = default;

private:
    Residue p_ = 0;
    std::vector<Residue> c_;
};

[[nodiscard]] PolyFp add(const PolyFp& a, const PolyFp& b, const FpContext& ctx);
[[nodiscard]] PolyFp sub(const PolyFp& a, const PolyFp& b, const FpContext& ctx);
[[nodiscard]] PolyFp mul(const PolyFp& a, const PolyFp& b, const FpContext& ctx);
[[nodiscard]] PolyFp scale(const PolyFp& a, Residue c, const FpContext& ctx);
/// Quotient and remainder; throws InvalidArgument on division by zero.
[[nodiscard]] std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b, const FpContext& ctx);
[[nodiscard]] PolyFp mod(const PolyFp& a, const PolyFp& b, const FpContext& ctx);
/// Monic gcd (zero iff both inputs are zero).
[[nodiscard]] PolyFp gcd(PolyFp a, PolyFp b, const FpContext& ctx);
[[nodiscard]] PolyFp derivative(const PolyFp& a, const FpContext& ctx);
[[nodiscard]] PolyFp make_monic(const PolyFp& a, const FpContext& ctx);
/// base^e mod m by square-and-multiply.
[[nodiscard]] PolyFp powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m, const FpContext& ctx);
[[nodiscard]] Residue eval(const PolyFp& a, Residue x, const FpContext& ctx);

/// One factor group of a distinct-degree factorization: the product of all
/// irreducible factors of the given degree.
struct DegreeFactor {
    std::size_t degree = 0;
    PolyFp product;
};

/// Distinct-degree factorization of a monic squarefree polynomial.
[[nodiscard]] std::vector<DegreeFactor> distinct_degree_factorization(const PolyFp& f, const FpContext& ctx);

}  // namespace symfp
