#pragma once
#include <map>
#include <vector>

#include "qcalc/toric.hpp"

namespace qcalc {

/* Decalage along q-1.  For a complex whose scalars vanish at q = 1 (the
 * q-Hodge flavor) the subcomplex eta^j = (q-1)^j C^j is isomorphic to C^j
 * with the differential divided by q-1, so the construction is carried out
 * as exact division of every scalar; each quotient is checked against the
 * q-integer it must equal.  Requires a torsion-free base: throws
 * TorsionAmbient on a truncated base ring, DivisionNotExact when a scalar is
 * not divisible (a scalar with a unit value at q = 1). */
QKoszul decalage(const QKoszul& K);

/* The multiplicative filtration fil^i = (q-1)^{max(i-j, 0)} C^j of a
 * qdeRham-flavor complex over Z[q]/(q-1)^L.  fil^0 is everything, and
 * (q-1) fil^i lands in fil^{i+1} because the exponent rises by at most one
 * per level. */
struct FilteredQComplex {
    QKoszul K;
    unsigned level = 0;

    unsigned multiplier(unsigned j) const { return level > j ? level - j : 0; }
    // (q-1) * fil^{level} inside fil^{level+1}: exponent bookkeeping per degree.
    bool shift_lands_in(const FilteredQComplex& next) const;
};

FilteredQComplex filtered_complex(const QKoszul& K, unsigned level);

struct GrSummary {
    unsigned long free_rank = 0;
    std::vector<Int> torsion;
    bool operator==(const GrSummary& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

/* Cohomology of the i-th graded piece, computed from representatives in the
 * truncated model: the graded differential and the multiplication-by-(q-1)
 * comparison map gr^{i-1} -> gr^i are extracted coordinate-wise, and the
 * graded piece is read through the cone of that comparison.  Expected
 * outcome per multidegree: concentrated in degree i with free rank equal to
 * the rank of the degree-i term. */
struct FiltrationReport {
    unsigned level = 0;
    std::map<std::pair<std::vector<long>, unsigned>, GrSummary> graded;
    bool concentrated = false;   // H^j = 0 for every j != level
    bool matches_forms = false;  // H^level free of rank C(n, level), torsion-free
    bool pass() const { return concentrated && matches_forms; }
};

/* Preconditions: qdeRham flavor, base Z[q]/(q-1)^L; L must exceed level + n
 * (throws InsufficientTruncation otherwise, invalid_argument for the rest). */
FiltrationReport qhodge_filtration(const QKoszul& K, unsigned level);

}  // namespace qcalc
