#pragma once
#include <vector>

#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* Monomial algebra in n variables, Laurent or polynomial per variable, with a
 * finite multidegree box.  Everything downstream decomposes per multidegree,
 * so the window is just the set of multidegrees that get computed. */
struct ToricAlgebraSpec {
    unsigned n = 0;
    std::vector<bool> laurent;  // per variable
    std::vector<long> lo, hi;   // inclusive box; non-Laurent variables need lo >= 0

    void validate() const;  // throws WindowTooSmall / invalid_argument
    // All multidegrees of the box in lexicographic order.
    std::vector<std::vector<long>> multidegrees() const;
    bool contains(const std::vector<long>& a) const;
};

enum class Flavor { qdeRham, qHodge };

// Z[q] when truncated == false, else Z[q]/(q^m - 1)^power.
struct BaseRing {
    bool truncated = false;
    unsigned long m = 0, power = 1;

    static BaseRing integral() { return {}; }
    static BaseRing mod_qm(unsigned long m, unsigned long power = 1) {
        return {true, m, power};
    }
    bool operator==(const BaseRing& o) const {
        return truncated == o.truncated && (!truncated || (m == o.m && power == o.power));
    }
};

/* The q-de Rham / q-Hodge complex of a toric spec in its per-multidegree
 * Koszul form.  In multidegree a the complex is the Koszul complex of the
 * commuting scalars s_i(a) — [a_i]_q for the q-de Rham flavor, q^{a_i}-1 for
 * q-Hodge — with basis e_S standing for the monomial summand x^{a-e_S} dx_S.
 * Differential: d(e_S) = sum_{i not in S} (-1)^{|{j in S : j < i}|} s_i(a)
 * e_{S+i}, which makes tensor product = concatenation of scalar tuples. */
class QKoszul {
  public:
    QKoszul(ToricAlgebraSpec spec, Flavor flavor, BaseRing base);

    const ToricAlgebraSpec& spec() const { return spec_; }
    Flavor flavor() const { return flavor_; }
    const BaseRing& base() const { return base_; }

    ZqPoly scalar(const std::vector<long>& a, unsigned i) const;  // i is 0-based
    std::vector<ZqPoly> scalars(const std::vector<long>& a) const;

    /* Symbolic d_{j+1} d_j = 0 over Z[q] for every j, at one multidegree.
     * Quotient bases inherit the identity. */
    bool verify_d_squared(const std::vector<long>& a) const;

  private:
    ToricAlgebraSpec spec_;
    Flavor flavor_;
    BaseRing base_;
};

QKoszul build_complex(const ToricAlgebraSpec& spec, Flavor flavor, BaseRing base);

// Koszul complex on the concatenated tuples; requires equal flavor and base.
QKoszul tensor(const QKoszul& k1, const QKoszul& k2);

/* Subsets of {0..n-1} of size j as bitmasks in increasing numeric order — the
 * canonical basis order of the degree-j term, shared by every consumer. */
std::vector<unsigned> koszul_subsets(unsigned n, unsigned j);

// (-1)^{|{j in S : j < i}|}, the sign of inserting i into the subset S.
int koszul_sign(unsigned mask_s, unsigned i);

}  // namespace qcalc
