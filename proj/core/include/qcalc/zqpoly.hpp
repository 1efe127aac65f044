#pragma once
#include "qcalc/integer.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcalc {

/* Dense Laurent polynomials $\sum_k c_k q^k$ over the integers. The exponent
 * range may dip below zero; `low()` is the smallest exponent with a nonzero
 * coefficient. The zero polynomial has empty support. */
class ZqPoly {
public:
    ZqPoly() = default;
    ZqPoly(const Int& c);
    ZqPoly(long c) : ZqPoly(Int(c)) {}
    static ZqPoly monomial(const Int& c, long k);
    static ZqPoly from_coeffs(long low, std::vector<Int> coeffs);

    bool is_zero() const { return c_.empty(); }
    long low() const { return off_; }
    long high() const { return off_ + static_cast<long>(c_.size()) - 1; }
    long degree_span() const { return is_zero() ? 0 : high() - low() + 1; }
    bool has_negative_exponents() const { return !is_zero() && off_ < 0; }
    Int coeff(long k) const;
    const Int& leading_coeff() const;

    ZqPoly& operator+=(const ZqPoly& o);
    ZqPoly& operator-=(const ZqPoly& o);
    ZqPoly& operator*=(const ZqPoly& o);
    friend ZqPoly operator+(ZqPoly a, const ZqPoly& b) { return a += b; }
    friend ZqPoly operator-(ZqPoly a, const ZqPoly& b) { return a -= b; }
    friend ZqPoly operator*(ZqPoly a, const ZqPoly& b) { return a *= b; }
    ZqPoly operator-() const;
    bool operator==(const ZqPoly& o) const { return off_ == o.off_ && c_ == o.c_; }
    bool operator!=(const ZqPoly& o) const { return !(*this == o); }

    ZqPoly shifted(long k) const;            // multiply by q^k
    ZqPoly scaled(const Int& c) const;
    ZqPoly substitute_qpow(long e) const;    // q -> q^e, e != 0
    ZqPoly pow(unsigned long e) const;
    ZqPoly derivative() const;
    Int eval_int(const Int& x) const;        // requires low() >= 0
    Int eval_at_one() const;
    Int content() const;                     // gcd of coefficients, >= 0

    // Reduce every coefficient into [0, m).
    ZqPoly reduced_mod(const Int& m) const;

    /* Division with remainder by a divisor whose leading coefficient is a unit
     * in the coefficient ring after rationalisation; quotient and remainder are
     * computed over $\mathbb{Q}$ and deg(rem) < deg(divisor). Throws
     * std::domain_error when either output fails to be integral, or when the
     * divisor is zero or genuinely Laurent. */
    std::pair<ZqPoly, ZqPoly> divmod(const ZqPoly& d) const;

    // Exact division; throws std::domain_error on nonzero remainder.
    ZqPoly divexact(const ZqPoly& d) const;

    /* Lowest-degree-first printing with explicit q^k tokens: the q-factorial of
     * 3 prints as "1+2q+2q^2+q^3", and q^{-1} prints as "q^-1". */
    std::string str() const;
    static std::optional<ZqPoly> parse(std::string_view s);

private:
    long off_ = 0;
    std::vector<Int> c_;  // coefficient of q^{off_+i}; trimmed at both ends
    void trim();
};

}  // namespace qcalc
