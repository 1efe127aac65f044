#pragma once
#include <vector>

#include "qcalc/env_expr.hpp"

namespace qcalc {

/* Witness decompositions of divided-power iterates.
 *
 * decompose_gamma_iterate writes the n-th iterate of gamma(f) = f^p/p,
 * applied to a generator x, as
 *
 *   gamma^(n)(x) = y_0 + sum_{i=1}^{n} p^{-E_i} t^{w_i} y_i,
 *       E_i = 2(p^{i-1}+...+p+1),  w_i = (p-2)+i,  t = q-1,
 *
 * where each y_i is integral and y_0 carries a q-divided-power certificate
 * (an EnvExpr in the gamma_q closure).  decompose_gammaq_iterate does the
 * reverse: the same shape for gamma_q^(n)(x), with y_0 certified in the
 * classical divided-power closure and the denominators produced by expanding
 * p/[p]_q.  Both follow the inductive constructions: sums are expanded by the
 * twisted addition laws and every resulting term is classified into the
 * bucket (E_i, w_i) it fits. */

struct WitnessTerm {
    unsigned long exponent;  // E_i
    unsigned long t_order;   // w_i
    EnvExpr y;
};

struct DividedPowerWitness {
    unsigned n = 0;
    Int p;
    unsigned long trunc = 1;   // series length N in t = q-1
    unsigned long budget = 0;  // admissible denominator exponent a
    bool reverse = false;      // true: decomposition of gamma_q^(n)
    EnvExpr y0;
    std::vector<WitnessTerm> terms;

    // y0 + sum p^{-E_i} t^{w_i} y_i.
    DeltaPoly combined() const;
    // Certificate recheck: y0 in the right closure, every tree sound.
    bool verify_certificates() const;
};

DividedPowerWitness decompose_gamma_iterate(unsigned n, unsigned long p, unsigned long N,
                                            unsigned long a);
// K bounds the number of witness terms kept; terms that vanish at truncation
// are dropped, and a nonzero term beyond K raises InsufficientTruncation.
DividedPowerWitness decompose_gammaq_iterate(unsigned n, unsigned long p, unsigned long N,
                                             unsigned long a, unsigned long K);

// Largest i with (p-2)+i < N: witness terms beyond this vanish at truncation.
unsigned long gammaq_witness_length(unsigned long p, unsigned long N);

// Direct iterates for cross-checking the witnesses.
DeltaPoly gamma_iterate_direct(unsigned n, unsigned long p, unsigned long N);
DeltaPoly gammaq_iterate_direct(unsigned n, unsigned long p, unsigned long N);

}  // namespace qcalc
