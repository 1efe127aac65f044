#pragma once
#include <map>
#include <optional>
#include <vector>

#include "qcalc/linalg.hpp"
#include "qcalc/toric.hpp"

namespace qcalc {

/* Z-model of Z[q]/(q^m-1)^power: column vectors over the basis 1, q, ...,
 * q^{D-1} with D = m*power, multiplication by q as the companion matrix of
 * (q^m-1)^power.  The matrix is unimodular (constant term is a unit), so
 * Laurent scalars act integrally too. */
class CompanionRing {
  public:
    CompanionRing(unsigned long m, unsigned long power);

    unsigned long m() const { return m_; }
    unsigned long power() const { return power_; }
    size_t dim() const { return dim_; }
    const IntMat& mul_q() const { return q_; }

    IntMat poly_matrix(const ZqPoly& s) const;      // s(q)·(-) as a D x D matrix
    std::vector<Int> reduce(const ZqPoly& s) const; // coordinates of s
    ZqPoly unreduce(const std::vector<Int>& v) const;

  private:
    unsigned long m_, power_;
    size_t dim_;
    IntMat q_, q_inv_;
};

/* Basis data for H = ker(out)/im(in) inside Z^N: a kernel basis, the Smith form
 * of the relation expression, and sign-normalised class representatives.
 * Classes with invariant factor 1 are dropped; the rest keep the Smith chain
 * order (torsion ascending, then free). */
class HBasis {
  public:
    HBasis(const IntMat& d_out, const IntMat& d_in);

    unsigned long free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    size_t classes() const { return orders_.size(); }
    const Int& order(size_t i) const { return orders_[i]; }  // 0 for free classes

    std::vector<Int> class_rep(size_t i) const;  // cycle in Z^N
    // Coordinates of a cycle in the class basis; torsion entries mod order.
    std::vector<Int> coords(const std::vector<Int>& cycle) const;
    /* Matrix of a chain-level operator restricted to cohomology: columns are
     * coords(op * class_rep(i)) in the target basis. */
    static IntMat induced_map(const HBasis& src, const HBasis& dst, const IntMat& op);
    // a == b as maps to this H (entrywise mod torsion orders).
    bool maps_equal(const IntMat& a, const IntMat& b) const;

  private:
    IntMat ker_;
    IntMat u_, u_inv_;
    std::vector<Int> invariants_;  // full Smith chain, padded with 0s
    std::vector<size_t> keep_;
    std::vector<int> sign_;
    std::vector<Int> orders_, torsion_;
    unsigned long free_rank_ = 0;
    std::optional<SpanSolver> ker_solver_;
};

struct CohomEntry {
    unsigned long free_rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility order
    IntMat q_action;
    std::optional<IntMat> bockstein;  // into (a, j+1) of the same table
    bool operator==(const CohomEntry& o) const {
        return free_rank == o.free_rank && torsion == o.torsion && q_action == o.q_action &&
               bockstein == o.bockstein;
    }
};

struct CohomologyTable {
    unsigned long m = 1, power = 1;
    bool bockstein_square_zero = true;  // meaningful when bocksteins are present
    std::map<std::pair<std::vector<long>, unsigned>, CohomEntry> entries;

    const CohomEntry& at(const std::vector<long>& a, unsigned j) const;
};

/* Koszul differential d_j at one multidegree, flattened over the companion
 * model; rows C(n, j+1) blocks, columns C(n, j) blocks. */
IntMat koszul_differential(const CompanionRing& R, const std::vector<ZqPoly>& scalars,
                           unsigned j);

/* Exact cohomology of K specialised to Z[q]/(q^m-1)^power, per multidegree
 * and cohomological degree, by integer Smith normal form.  Deterministic;
 * multidegrees are processed by a parallel map and merged in canonical
 * order. */
CohomologyTable cohomology_mod(const QKoszul& K, unsigned long m, unsigned long power = 1);

/* cohomology_mod(K, m, 1) augmented with the connecting maps of
 *   0 -> C/(q^m-1) -> C/(q^m-1)^2 -> C/(q^m-1) -> 0
 * and the verification that they square to zero. */
CohomologyTable bockstein(const QKoszul& K, unsigned long m);

struct TransitionReport {
    unsigned long m = 0, d = 0;
    CohomologyTable source, target;  // both carry Bockstein matrices
    // per (a, j): matrix of the reduction-induced map on cohomology
    std::map<std::pair<std::vector<long>, unsigned>, IntMat> maps;
    bool intertwines_bockstein = false;  // beta_d F = (m/d) F beta_m throughout
};

/* The reduction Z[q]/(q^m-1) -> Z[q]/(q^d-1) on cohomology, with the
 * Bockstein intertwining checked on the computed tables. */
TransitionReport frobenius_transition(const QKoszul& K, unsigned long m, unsigned long d);

}  // namespace qcalc
