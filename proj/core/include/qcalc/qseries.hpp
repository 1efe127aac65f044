#pragma once
#include <string>
#include <vector>

#include "qcalc/integer.hpp"

namespace qcalc {

/* Truncated power series in t = q-1 with exact rational coefficients.
 * Arithmetic truncates at a fixed length; denominators are expected to be
 * p-powers for the prime of the ambient computation (checked on demand, not
 * enforced per operation). */
class QSeries {
  public:
    QSeries() = default;
    explicit QSeries(unsigned long len) : c_(len, Rat(0)) {}
    QSeries(unsigned long len, const Rat& c0) : c_(len, Rat(0)) {
        if (len > 0) c_[0] = c0;
    }
    static QSeries from_coeffs(std::vector<Rat> cs);
    static QSeries one(unsigned long len) { return QSeries(len, Rat(1)); }
    static QSeries t_power(unsigned long len, unsigned long k);

    unsigned long length() const { return c_.size(); }
    const Rat& coeff(size_t j) const { return c_[j]; }
    void set_coeff(size_t j, const Rat& v);
    bool is_zero() const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const QSeries& o);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }
    QSeries operator-() const;
    bool operator==(const QSeries& o) const;
    bool operator!=(const QSeries& o) const { return !(*this == o); }

    QSeries scaled(const Rat& r) const;
    QSeries shifted_t(unsigned long k) const;  // multiply by t^k, truncating
    QSeries truncated(unsigned long len) const;

    // Multiplicative inverse; requires a nonzero constant term.
    QSeries inverse() const;

    // t -> (1+t)^e - 1, the effect of q -> q^e on a series in q-1.
    QSeries compose_qpow(unsigned long e) const;

    // Smallest index with a nonzero coefficient; length() when zero.
    unsigned long t_order() const;

    bool p_integral(const Int& p) const;
    bool denominators_p_power(const Int& p) const;
    // Least p-valuation over nonzero coefficients; 0 for the zero series.
    long min_p_valuation(const Int& p) const;

    std::string str() const;  // "1-2t+1/3t^2" style, t = q-1

  private:
    std::vector<Rat> c_;
};

// [p]_q = ((1+t)^p - 1)/t as a truncated series in t.
QSeries q_integer_series(unsigned long p, unsigned long len);

// u with [p]_q = p*u + t^(p-1); integral, u = 1 mod t.
QSeries unit_u_series(unsigned long p, unsigned long len);

}  // namespace qcalc
