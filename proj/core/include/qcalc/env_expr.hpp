#pragma once
#include <memory>
#include <string>
#include <vector>

#include "qcalc/delta_poly.hpp"

namespace qcalc {

/* Construction tree certifying membership of a DeltaPoly value in the
 * p-integral span of a divided-power closure.  Two closures are tracked side
 * by side: the q-flavoured one (seed {x_r, t*(integral)}, closed under
 * gamma_q, + and *) and the classical one (same seed, closed under gamma).
 * Every node is integral in the ambient envelope; the divided_power_q /
 * divided_power_classical flags record the stronger memberships.
 *
 * The trees are the integrality certificates for the witness decompositions:
 * leaves are checkable (explicit p-integral polynomials), and each interior
 * node applies one closure rule.  verify() re-evaluates the tree bottom-up
 * and re-checks every side condition. */
class EnvExpr {
  public:
    enum class Kind { atom, gen, t_shift, gamma_q, gamma, phi, delta, sum, prod, scale };

    // Empty handle; using it other than by assignment throws.
    EnvExpr() = default;
    bool empty() const { return n_ == nullptr; }

    // Explicit polynomial with p-integral coefficients (checked).
    static EnvExpr atom(DeltaPoly z);
    // The generator x_r; in both closures.
    static EnvExpr gen(const Int& p, unsigned gens, unsigned long trunc, unsigned r = 1);
    // t^k * e; k >= 1 promotes any integral e into both closures (k = 0 is the
    // identity).
    static EnvExpr t_shift(unsigned long k, EnvExpr e);
    static EnvExpr gamma_q_of(EnvExpr e);  // requires divided_power_q
    static EnvExpr gamma_of(EnvExpr e);    // requires divided_power_classical
    static EnvExpr phi_of(EnvExpr e);
    static EnvExpr delta_of(EnvExpr e);
    static EnvExpr sum(std::vector<EnvExpr> es);  // nonempty
    static EnvExpr prod(std::vector<EnvExpr> es);
    // c * e for a p-integral series c (checked).
    static EnvExpr scale(EnvExpr e, QSeries c);
    static EnvExpr scale(EnvExpr e, const Rat& c);

    const DeltaPoly& value() const;
    Kind kind() const;
    bool divided_power_q() const;
    bool divided_power_classical() const;
    size_t node_count() const;
    std::string describe() const;

    // Recomputes every value bottom-up and re-checks all construction rules.
    bool verify() const;

  private:
    struct Node;
    explicit EnvExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

}  // namespace qcalc
