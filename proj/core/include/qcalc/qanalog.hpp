#pragma once
#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* $[k]_q = (q^k-1)/(q-1)$. For $k \geq 0$ this is $1+q+\dots+q^{k-1}$; for
 * negative $k$ the same rational function gives the Laurent polynomial
 * $-q^k[-k]_q$, e.g. $[-1]_q = -q^{-1}$. */
ZqPoly q_integer(long k);

// [n]_q! = [1]_q [2]_q ... [n]_q
ZqPoly q_factorial(unsigned long n);

/* Gaussian binomial $\binom{m}{k}_q$, computed by the $q$-Pascal recursion
 * $\binom{m}{k}_q = \binom{m-1}{k-1}_q + q^k\binom{m-1}{k}_q$. Zero when
 * k > m. */
ZqPoly q_binomial(unsigned long m, unsigned long k);

// (q;q)_n = prod_{i=1}^{n} (1 - q^i)
ZqPoly q_pochhammer(unsigned long n);

}  // namespace qcalc
