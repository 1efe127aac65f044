#pragma once
#include "qcalc/qseries.hpp"

namespace qcalc {

/* The q-derivative of x^k through the logarithm: with T the substitution
 * x -> qx, the operator (1/(q-1)) (exp(log(q) x d/dx) - 1) applied to x^k has
 * coefficient (1/t) (exp(k log(1+t)) - 1) in t = q-1, and the claim is that
 * the rational series collapses to the integral polynomial [k]_q.  Both
 * sides are computed independently and compared to the given truncation. */
struct QPartialReport {
    long k = 0;
    unsigned long trunc = 0;
    QSeries applied;   // exp-log route, rational intermediate steps
    QSeries expected;  // [k]_q expanded in t
    bool match = false;
};

QPartialReport rational_qpartial(unsigned long trunc, long k);

}  // namespace qcalc
