#pragma once
#include <string>
#include <vector>

#include "qcalc/delta_poly.hpp"

namespace qcalc {

/* Twisted divided powers of pure powers x^alpha of a single delta-variable.
 * gamma_q(x^alpha) lifts x^{alpha p}/p at q = 1 but its coefficients fall
 * outside the span generated by x-degree >= alpha*(p - c) at each (q-1)-order
 * c.  build_gamma_q_tilde corrects it by a legal modification (p-integral,
 * vanishing at q = 1):
 *
 *   gtilde = gamma_q(x^a) - (1/u - 1) delta(x^a) + t^{p-1}/u^2 * rho_a,
 *   rho_a  = (delta(x^a) - a x^{p(a-1)} delta x)/p,   [p]_q = p u + t^{p-1},
 *
 * which collapses to x^{ap}/[p]_q - a t^{p-1} x^{p(a-1)} dx/([p]_q u)
 * + t^{2(p-1)} rho_a/([p]_q u^2), every piece of which meets the degree
 * condition. */

struct GammaQTildeReport {
    GammaQTildeReport(DeltaPoly e, DeltaPoly m)
        : element(std::move(e)), modification(std::move(m)) {}
    unsigned long alpha = 0, p = 0, trunc = 0, budget = 0;
    DeltaPoly element;       // gtilde itself
    DeltaPoly modification;  // gtilde - gamma_q(x^alpha)
    bool lifts_divided_power = false;    // gtilde = x^{alpha p}/p + O(t)
    bool legal_modification = false;     // modification p-integral, O(t)
    bool in_combined_filtration = false; // degree condition at every (q-1)-order
    bool pass() const {
        return lifts_divided_power && legal_modification && in_combined_filtration;
    }
};

GammaQTildeReport build_gamma_q_tilde(unsigned long alpha, unsigned long p, unsigned long trunc,
                                      unsigned long budget);

struct ObstructionCoordinate {
    DeltaMono mono;
    unsigned long t_order = 0;
    Rat residue;      // class mod the quotient; exact value for t-order 0
    long valuation = 0;
    std::string str() const;
};

struct ObstructionReport {
    unsigned long p = 0, trunc = 0, budget = 0, basis_bound = 0;
    std::vector<ObstructionCoordinate> residues;  // nonzero residues only
    bool nonzero() const { return !residues.empty(); }
};

/* Residues of f in the quotient by (filtration span) + t*(integral span):
 * coordinates with x-degree >= alpha*max(p - c, 0) at (q-1)-order c die
 * entirely (they lie in the p-inverted filtration span), the remaining
 * coordinates at order c >= 1 are reduced mod Z_p (only the p-fractional part
 * survives), and order-0 coordinates keep their full coefficient.  Monomials
 * of delta-depth beyond basis_bound raise InsufficientTruncation. */
ObstructionReport filtration_quotient_residues(const DeltaPoly& f, unsigned long alpha,
                                               unsigned long budget, unsigned long basis_bound);

/* The alpha = 1 phenomenon: gamma_q(x) itself is NOT a legal modification of
 * anything in the alpha = 1 filtration — a residue of p-valuation -1 survives
 * at dx (q-1)^{p-1}.  There is no correction to build at alpha = 1; the
 * nonzero report is the point. */
ObstructionReport alpha_one_obstruction(unsigned long p, unsigned long trunc, unsigned long budget,
                                        unsigned long basis_bound);

struct ClosedFormReport {
    unsigned long p = 0, trunc = 0;
    QSeries direct;  // gamma_q applied to the element q-1
    QSeries closed;  // -(q-1)^2 sum_{i=2}^{p-1} C(p,i)/p (q-1)^{i-2}
    bool match = false;
};

ClosedFormReport verify_gammaq_qminus1(unsigned long p, unsigned long trunc);

}  // namespace qcalc
