#pragma once
#include "qcalc/precision.hpp"
#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* Residue in Z[q] / (p^a, f(q)^N) with f = Phi_m or q^m - 1, as dictated by
 * the Precision.  The stored representative is canonical: degree below
 * deg(f^N), every coefficient in [0, p^a) when a characteristic part is set.
 * q is invertible here (q^m = 1 + nilpotent), so Laurent input is accepted. */
class LocalElement {
  public:
    LocalElement() = default;
    LocalElement(Precision pr, const ZqPoly& value);

    const Precision& precision() const { return pr_; }
    const ZqPoly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    LocalElement& operator+=(const LocalElement& o);
    LocalElement& operator-=(const LocalElement& o);
    LocalElement& operator*=(const LocalElement& o);
    friend LocalElement operator+(LocalElement a, const LocalElement& b) { return a += b; }
    friend LocalElement operator-(LocalElement a, const LocalElement& b) { return a -= b; }
    friend LocalElement operator*(LocalElement a, const LocalElement& b) { return a *= b; }
    LocalElement operator-() const;
    LocalElement scaled(const Int& c) const;
    bool operator==(const LocalElement& o) const;
    bool operator!=(const LocalElement& o) const { return !(*this == o); }

    bool is_unit() const;
    LocalElement inverted() const;  // throws NotAUnit
    LocalElement pow(long e) const; // negative e via inversion

    static LocalElement q_power(const Precision& pr, long k);
    static LocalElement from_int(const Precision& pr, const Int& c);

  private:
    Precision pr_;
    ZqPoly rep_;  // canonical; zero polynomial for 0

    void reduce_(const ZqPoly& raw);
};

/* The q-integer [p]_q splits as p*u + (q-1)^(p-1) with u a unit congruent to
 * 1 mod (q-1).  Returns u = ([p]_q - (q-1)^(p-1))/p as a residue mod (q-1)^N;
 * the division by p is exact and asserted. */
LocalElement unit_decompose(const Int& p, unsigned long N);

}  // namespace qcalc
