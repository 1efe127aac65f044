#pragma once
#include <map>
#include <string>
#include <vector>

#include "qcalc/integer.hpp"
#include "qcalc/qseries.hpp"

namespace qcalc {

/* A monomial in the symbols d^j x_r (j-fold delta applied to the r-th
 * generator), stored as factors (r, j, e) sorted by (r, j) with e >= 1.
 * j = 0 is the plain generator x_r. */
struct DeltaMono {
    struct Factor {
        unsigned r;  // generator index, 1-based
        unsigned j;  // delta depth
        unsigned long e;
        auto operator<=>(const Factor&) const = default;
    };
    std::vector<Factor> fs;

    static DeltaMono one() { return {}; }
    static DeltaMono symbol(unsigned r, unsigned j, unsigned long e = 1);

    unsigned long total_degree() const;
    bool is_one() const { return fs.empty(); }
    DeltaMono operator*(const DeltaMono& o) const;
    DeltaMono pow(unsigned long e) const;
    bool operator==(const DeltaMono& o) const { return fs == o.fs; }
    // Graded order: total degree first, then lexicographic on the factor list.
    bool operator<(const DeltaMono& o) const;
    std::string str() const;  // "x1^2*d1x1" with dj prefix for delta depth
};

/* Polynomial in the symbols d^j x_r over truncated (q-1)-series with rational
 * coefficients.  The prime is carried along because every operator built on
 * top (Frobenius lift, delta, the divided-power maps) depends on it. */
class DeltaPoly {
  public:
    DeltaPoly(Int p, unsigned gens, unsigned long trunc);

    static DeltaPoly constant(const Int& p, unsigned gens, unsigned long trunc, QSeries c);
    static DeltaPoly constant(const Int& p, unsigned gens, unsigned long trunc, const Rat& c);
    static DeltaPoly generator(const Int& p, unsigned gens, unsigned long trunc, unsigned r,
                               unsigned j = 0);
    // t^k as an element, t = q-1.
    static DeltaPoly t_power(const Int& p, unsigned gens, unsigned long trunc, unsigned long k);

    const Int& prime() const { return p_; }
    unsigned gens() const { return g_; }
    unsigned long trunc() const { return trunc_; }
    const std::map<DeltaMono, QSeries>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const DeltaPoly& o) const;
    bool operator!=(const DeltaPoly& o) const { return !(*this == o); }

    DeltaPoly& operator+=(const DeltaPoly& o);
    DeltaPoly& operator-=(const DeltaPoly& o);
    DeltaPoly& operator*=(const DeltaPoly& o);
    friend DeltaPoly operator+(DeltaPoly a, const DeltaPoly& b) { return a += b; }
    friend DeltaPoly operator-(DeltaPoly a, const DeltaPoly& b) { return a -= b; }
    friend DeltaPoly operator*(DeltaPoly a, const DeltaPoly& b) { return a *= b; }
    DeltaPoly operator-() const;

    DeltaPoly pow(unsigned long e) const;
    DeltaPoly scaled(const Rat& r) const;
    DeltaPoly scaled(const QSeries& s) const;

    void add_term(const DeltaMono& m, const QSeries& c);
    const QSeries& coeff(const DeltaMono& m) const;  // zero series if absent

    bool p_integral() const;
    long min_p_valuation() const;
    // Least t-adic order over all coefficients; trunc() for zero.
    unsigned long min_t_order() const;

    std::string str() const;

  private:
    void check_compatible(const DeltaPoly& o) const;
    Int p_;
    unsigned g_ = 1;
    unsigned long trunc_ = 1;
    std::map<DeltaMono, QSeries> terms_;  // invariant: no zero series stored
};

}  // namespace qcalc
