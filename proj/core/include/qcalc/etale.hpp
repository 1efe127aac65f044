#pragma once
#include <map>
#include <string>
#include <vector>

#include "qcalc/integer.hpp"
#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* Coefficient ring R = Z[x]/(g) with delta inverted.  g must be monic and
 * separable, and every prime of disc(g) must divide delta, so that R is
 * etale over Z[1/delta] and carries a canonical Frobenius lift at each
 * remaining prime. */
class EtaleAlgebraSpec {
  public:
    // coefficients ascending, leading coefficient 1
    EtaleAlgebraSpec(std::vector<Int> g_coeffs, Int delta);
    /* {"g": ["-1", "-1", "1"], "delta": "5"}: coefficient strings ascending. */
    static EtaleAlgebraSpec from_json(const std::string& text);

    unsigned long degree() const { return g_.size() - 1; }
    const std::vector<Int>& g() const { return g_; }
    const Int& delta() const { return delta_; }
    const Int& discriminant() const { return disc_; }

  private:
    std::vector<Int> g_;
    Int delta_;
    Int disc_;
};

/* The ring map of (Z/p^a)[x]/(g) determined by x -> phi, where phi is the
 * Newton limit of the seed x^p.  It is the unique endomorphism reducing to
 * Frobenius mod p; uniqueness is re-certified by running the iteration again
 * from a perturbed seed.  exact_root records whether the balanced lift of
 * phi is a root of g over Z already (true for all the bundled examples). */
struct FrobeniusLift {
    unsigned long p = 0;
    unsigned long a = 0;
    std::vector<Int> phi;  // coordinates in 1, x, ..., x^{deg-1}, reduced into [0, p^a)
    bool reduces_to_frobenius = false;  // phi == x^p mod (p, g)
    bool exact_root = false;
    bool perturbed_seed_agrees = false;
};

// Throws NonEtaleAtP when g'(x) is not a unit mod (p, g).
FrobeniusLift frobenius_lift(const EtaleAlgebraSpec& spec, unsigned long p, unsigned long a);

struct GluedComponent {
    unsigned long d = 0;      // divisor of the level
    unsigned long trunc = 0;  // power of Phi_d retained
};

/* Level-m product of the components R[q]/Phi_d^{N_d} over divisors d | m,
 * together with the p-adic identifications between adjacent components.
 * The identification at p acts on coefficients through the Frobenius lift;
 * primes dividing delta are skipped because the p-completion of R is zero
 * there.  The gluing data is validated at construction -- commutation of
 * the composite identifications along divisor chains -- not solved for. */
class GluedRing {
  public:
    GluedRing(EtaleAlgebraSpec spec, unsigned long m, unsigned long prime_exp,
              unsigned long trunc);

    const EtaleAlgebraSpec& spec() const { return spec_; }
    unsigned long level() const { return m_; }
    unsigned long prime_exponent() const { return prime_exp_; }
    const std::vector<GluedComponent>& components() const { return comps_; }
    const std::vector<unsigned long>& glued_primes() const { return glued_primes_; }
    const std::vector<unsigned long>& skipped_primes() const { return skipped_primes_; }
    const FrobeniusLift& gluing(unsigned long p) const;  // NotADivisor if p is not glued
    bool squares_commute() const { return squares_commute_; }

  private:
    EtaleAlgebraSpec spec_;
    unsigned long m_;
    unsigned long prime_exp_;
    std::vector<GluedComponent> comps_;
    std::vector<unsigned long> glued_primes_;
    std::vector<unsigned long> skipped_primes_;
    std::map<unsigned long, FrobeniusLift> frob_;
    bool squares_commute_ = false;
};

GluedRing build_relative_habiro(const EtaleAlgebraSpec& spec, unsigned long m,
                                unsigned long prime_exp, unsigned long trunc = 1);

/* One residue per component, each a q-polynomial of degree < phi(d) * N_d
 * whose coefficients are coordinate vectors in R.  Residues handed to the
 * constructor must admit a common global lift over Z -- checked by an exact
 * integral solve -- otherwise the element is rejected. */
class GluedElement {
  public:
    using Residue = std::vector<std::vector<Int>>;  // [q-degree][x-coordinate]

    GluedElement(const GluedRing& G, std::map<unsigned long, Residue> residues);
    static GluedElement from_poly(const GluedRing& G, const Residue& f);

    const Residue& at(unsigned long d) const;  // NotADivisor if absent

  private:
    std::map<unsigned long, Residue> residues_;
};

// Projection onto the Phi_d component.  NotADivisor when d does not divide
// the level.
GluedElement::Residue ghost(const GluedRing& G, const GluedElement& e, unsigned long d);

struct QwittComponent {
    unsigned long d = 0;
    bool cyclotomic_annihilates = false;  // Phi_d vanishes on the mod-Phi_d fibre
    bool power_basis_free = false;        // 1, q, ..., q^{phi(d)-1} is a basis
};

/* Componentwise comparison with the expected shape: each fibre mod Phi_d is
 * R[q]/Phi_d with its tautological power basis, and each gluing map reduces
 * mod p to the p-power Frobenius of R/p. */
struct QwittReport {
    unsigned long m = 0;
    std::vector<QwittComponent> components;
    std::vector<std::pair<unsigned long, bool>> frobenius_mod_p;
    bool pass() const;
};

QwittReport compare_qwitt(const GluedRing& G);

}  // namespace qcalc
