#pragma once
#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* m-th cyclotomic polynomial, computed by exact division
 * $\Phi_m(q) = (q^m-1) / \prod_{d \mid m,\, d<m} \Phi_d(q)$ and memoised.
 * Throws std::invalid_argument for m = 0. */
const ZqPoly& cyclotomic(unsigned long m);

// Euler's totient, the degree of cyclotomic(m).
unsigned long totient(unsigned long m);

}  // namespace qcalc
