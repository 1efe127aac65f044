#include "qcalc/qpd_tilde.hpp"

#include <sstream>

#include "qcalc/delta_ops.hpp"
#include "qcalc/errors.hpp"

namespace qcalc {

namespace {

unsigned long x_degree(const DeltaMono& m) {
    unsigned long d = 0;
    for (const auto& f : m.fs)
        if (f.r == 1 && f.j == 0) d += f.e;
    return d;
}

unsigned long delta_depth(const DeltaMono& m) {
    unsigned long d = 0;
    for (const auto& f : m.fs)
        if (f.j > d) d = f.j;
    return d;
}

bool meets_degree_condition(const DeltaMono& m, unsigned long c, unsigned long alpha,
                            unsigned long p) {
    unsigned long need = c < p ? alpha * (p - c) : 0;
    return x_degree(m) >= need;
}

}  // namespace

GammaQTildeReport build_gamma_q_tilde(unsigned long alpha, unsigned long p, unsigned long trunc,
                                      unsigned long budget) {
    if (alpha < 2) throw std::invalid_argument("alpha must be >= 2; see alpha_one_obstruction");
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    Int P(static_cast<long>(p));

    DeltaPoly x = DeltaPoly::generator(P, 1, trunc, 1);
    DeltaPoly dx = DeltaPoly::generator(P, 1, trunc, 1, 1);
    DeltaPoly xa = x.pow(alpha);
    DeltaPoly dxa = delta(xa);
    DeltaPoly gq = gamma_q(xa);

    // rho = (delta(x^a) - a x^{p(a-1)} dx)/p collects the C(a,k) p^{k-2}
    // x^{p(a-k)} dx^k terms, k >= 2; the division is exact.
    DeltaPoly rho = (dxa - (x.pow(p * (alpha - 1)) * dx).scaled(Rat(static_cast<long>(alpha))))
                        .scaled(Rat(1, static_cast<long>(p)));
    if (!rho.p_integral())
        throw DivisionNotExact("division-not-exact: rho correction is not p-integral");

    QSeries u_inv = unit_u_series(p, trunc).inverse();
    QSeries one = QSeries::one(trunc);
    DeltaPoly modification =
        dxa.scaled(one - u_inv) + rho.scaled((u_inv * u_inv).shifted_t(p - 1));

    GammaQTildeReport rep(gq + modification, modification);
    rep.alpha = alpha;
    rep.p = p;
    rep.trunc = trunc;
    rep.budget = budget;

    if (rep.element.min_p_valuation() < -static_cast<long>(budget))
        throw ValuationBudgetExceeded(
            "valuation-budget-exceeded: gtilde needs more p-denominators than allowed");

    DeltaPoly lift_diff = rep.element - x.pow(alpha * p).scaled(Rat(1, static_cast<long>(p)));
    rep.lifts_divided_power = lift_diff.is_zero() || lift_diff.min_t_order() >= 1;
    rep.legal_modification =
        modification.p_integral() && (modification.is_zero() || modification.min_t_order() >= 1);

    rep.in_combined_filtration = true;
    for (const auto& [mono, series] : rep.element.terms())
        for (unsigned long c = 0; c < series.length(); ++c) {
            if (series.coeff(c) == 0) continue;
            if (!meets_degree_condition(mono, c, alpha, p)) {
                rep.in_combined_filtration = false;
                break;
            }
        }
    return rep;
}

std::string ObstructionCoordinate::str() const {
    std::ostringstream os;
    os << (mono.is_one() ? std::string("1") : mono.str());
    if (t_order > 0) os << "*t^" << t_order;
    os << " : " << residue.get_str() << " (val " << valuation << ")";
    return os.str();
}

ObstructionReport filtration_quotient_residues(const DeltaPoly& f, unsigned long alpha,
                                               unsigned long budget, unsigned long basis_bound) {
    unsigned long p = f.prime().get_ui();
    ObstructionReport rep;
    rep.p = p;
    rep.trunc = f.trunc();
    rep.budget = budget;
    rep.basis_bound = basis_bound;

    if (f.min_p_valuation() < -static_cast<long>(budget))
        throw ValuationBudgetExceeded(
            "valuation-budget-exceeded: element needs more p-denominators than allowed");

    for (const auto& [mono, series] : f.terms()) {
        if (delta_depth(mono) > basis_bound)
            throw InsufficientTruncation(
                "insufficient-truncation: delta-depth beyond the tracked basis");
        for (unsigned long c = 0; c < series.length(); ++c) {
            const Rat& v = series.coeff(c);
            if (v == 0) continue;
            if (meets_degree_condition(mono, c, alpha, p)) continue;  // dies in the quotient
            Rat residue;
            if (c == 0) {
                residue = v;  // order-0 coordinates survive whole
            } else {
                /* reduce mod Z_p: keep the p-fractional part.  Denominators
                 * prime to p are units there and get absorbed. */
                Int den = v.get_den(), num = v.get_num();
                unsigned long k = vp(den, f.prime());
                if (k == 0) continue;
                Int pk = ipow(f.prime(), k);
                Int unit = exact_div(den, pk);
                residue = Rat(mod_floor(num * inv_mod(unit, pk), pk), pk);
                residue.canonicalize();
                if (residue == 0) continue;
            }
            ObstructionCoordinate oc;
            oc.mono = mono;
            oc.t_order = c;
            oc.residue = residue;
            oc.valuation = vp_rat(residue, f.prime());
            rep.residues.push_back(std::move(oc));
        }
    }
    return rep;
}

ObstructionReport alpha_one_obstruction(unsigned long p, unsigned long trunc, unsigned long budget,
                                        unsigned long basis_bound) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    DeltaPoly x = DeltaPoly::generator(Int(static_cast<long>(p)), 1, trunc, 1);
    return filtration_quotient_residues(gamma_q(x), 1, budget, basis_bound);
}

ClosedFormReport verify_gammaq_qminus1(unsigned long p, unsigned long trunc) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    Int P(static_cast<long>(p));
    DeltaPoly t = DeltaPoly::t_power(P, 1, trunc, 1);
    ClosedFormReport rep;
    rep.p = p;
    rep.trunc = trunc;
    rep.direct = gamma_q(t).coeff(DeltaMono::one());
    rep.closed = gammaq_qminus1_closed_form(p, trunc);
    rep.match = rep.direct == rep.closed;
    return rep;
}

}  // namespace qcalc
