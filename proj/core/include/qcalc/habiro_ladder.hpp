#pragma once
#include <vector>

#include "qcalc/integer.hpp"
#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* Finitely presented module over Z[q^{+/-1}]: the cokernel of the map whose
 * columns are the given relations.  Each relation lists one Laurent
 * polynomial per generator. */
struct LaurentPresentation {
    size_t gens = 0;
    std::vector<std::vector<ZqPoly>> relations;
};

// Free rank and invariant factors (> 1, in divisibility order) of a finitely
// generated abelian group.
struct ModuleInvariants {
    unsigned long free_rank = 0;
    std::vector<Int> torsion;
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const ModuleInvariants& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

/* Underlying abelian group of coker(P) tensored with Z[q^{+/-1}]/(g),
 * computed by
 * replacing q with the companion matrix of g.  Requires g to bound the
 * q-degree in both directions: positive degree with unit leading and
 * constant coefficients.  Otherwise the quotient need not have finite rank
 * over Z and UnboundedDegree is thrown. */
ModuleInvariants quotient_invariants(const LaurentPresentation& P, const ZqPoly& g);

// Stage n of the descending ladder: invariants of coker(P)/(q;q)_n.
ModuleInvariants ladder_stage(const LaurentPresentation& P, unsigned long n);

/* Directed system of free rank-one modules M_0 -> M_1 -> ... , the map out
 * of stage w being multiplication by steps[w].  Used for rings that are not
 * finitely presented over Z[q^{+/-1}] but arise as such a colimit; the
 * stored window is finite and certificates quantify over it. */
struct LadderSystem {
    std::vector<ZqPoly> steps;
};

// Window of the defining system of Z[q^{+/-1}][(1 - q^j)^{-1} : j >= 1]:
// stage w includes into stage w+1 via multiplication by 1 - q^{w+1}.
LadderSystem localisation_ladder(unsigned long stages);

/* Certificate that the colimit of M_w/(g) vanishes: every stage is killed
 * once the accumulated transition polynomial from stage 0 becomes divisible
 * by g.  stages_used is the smallest such prefix length. */
struct LadderVanishing {
    bool vanishes = false;
    unsigned long stages_used = 0;
};
LadderVanishing ladder_vanishes_mod(const LadderSystem& L, const ZqPoly& g);
LadderVanishing ladder_stage_vanishes(const LadderSystem& L, unsigned long n);  // g = (q;q)_n

/* Residue survey: the module against Phi_m for each requested m, plus the
 * descending ladder stages up to the largest requested index.  trivial is
 * set only when every probed quotient and every ladder stage vanishes. */
struct NakayamaReport {
    std::vector<std::pair<unsigned long, ModuleInvariants>> quotients;
    std::vector<std::pair<unsigned long, ModuleInvariants>> ladder;
    bool trivial = false;
};
NakayamaReport nakayama_probe(const LaurentPresentation& P,
                              const std::vector<unsigned long>& m_list);

struct NakayamaSystemReport {
    std::vector<std::pair<unsigned long, LadderVanishing>> quotients;
    std::vector<std::pair<unsigned long, LadderVanishing>> ladder;
    bool trivial = false;
};
NakayamaSystemReport nakayama_probe(const LadderSystem& L,
                                    const std::vector<unsigned long>& m_list);

/* Finite window 0..n_max of the two-term resolution of the fully localised
 * ring by free modules: the first arrow sends (a_i) to (a_i - (1 - q^i) a_{i-1}),
 * the second sends (a_i) to sum_i a_i / (q;q)_i.  All identities are checked
 * by exact polynomial arithmetic over the common denominator (q;q)_{n_max}. */
struct ResolutionReport {
    unsigned long n_max = 0;
    bool ladder_factors = false;   // (q;q)_{i+1} = (q;q)_i (1 - q^{i+1})
    bool composite_zero = false;   // second arrow kills the image of the first
    bool injective = false;        // window matrix of the first arrow has determinant 1
    ZqPoly window_det;
    bool lift_found = false;       // 1/(q;q)_{n_max} has a preimage under the second arrow
    std::vector<ZqPoly> lift;
    bool pass() const { return ladder_factors && composite_zero && injective && lift_found; }
};
ResolutionReport resolution_window_check(unsigned long n_max);

}  // namespace qcalc
