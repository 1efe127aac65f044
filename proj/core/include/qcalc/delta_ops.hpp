#pragma once
#include "qcalc/delta_poly.hpp"

namespace qcalc {

/* Operators on DeltaPoly for its fixed prime p.  Throughout, t = q-1 and the
 * series truncation of the input is preserved. */

// The ring endomorphism with phi(d^j x_r) = (d^j x_r)^p + p d^(j+1) x_r and
// q -> q^p on series coefficients.
DeltaPoly frobenius(const DeltaPoly& f);

// delta(f) = (phi(f) - f^p)/p.  For p-integral f the result is again
// p-integral; a violation raises DivisionNotExact.
DeltaPoly delta(const DeltaPoly& f);

// gamma(f) = f^p / p.
DeltaPoly gamma(const DeltaPoly& f);

// gamma_q(f) = phi(f)/[p]_q - delta(f).
DeltaPoly gamma_q(const DeltaPoly& f);

struct SumRuleReport {
    DeltaPoly gamma_q_residual;  // gamma_q(a+b) - gamma_q(a) - gamma_q(b) - cross
    DeltaPoly delta_residual;    // delta(a+b) - delta(a) - delta(b) + cross
    bool ok() const { return gamma_q_residual.is_zero() && delta_residual.is_zero(); }
};

// cross = sum_{i=1}^{p-1} (1/p) C(p,i) a^i b^(p-i); gamma_q adds it, delta
// subtracts it.
SumRuleReport verify_sum_rules(const DeltaPoly& a, const DeltaPoly& b);

// gamma(f) - gamma_q(f) - (([p]_q - p)/p) * (gamma_q(f) + delta(f)); zero for
// every f.
DeltaPoly gamma_split_residual(const DeltaPoly& f);

// gamma_q(q-1) in closed form: -(q-1)^2 sum_{i=2}^{p-1} (1/p) C(p,i) (q-1)^(i-2).
QSeries gammaq_qminus1_closed_form(unsigned long p, unsigned long len);

// ([p]_q - p)/p and p/[p]_q as truncated series; both used by the split
// identities and the witness constructions.
QSeries qint_minus_p_over_p(unsigned long p, unsigned long len);
QSeries p_over_q_integer(unsigned long p, unsigned long len);

}  // namespace qcalc
