#include "qcalc/delta_ops.hpp"

#include "qcalc/errors.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

namespace {

unsigned long small_prime(const DeltaPoly& f) {
    if (!f.prime().fits_ulong_p())
        throw std::invalid_argument("DeltaPoly prime too large for operator evaluation");
    return f.prime().get_ui();
}

}  // namespace

DeltaPoly frobenius(const DeltaPoly& f) {
    unsigned long p = small_prime(f);
    DeltaPoly out(f.prime(), f.gens(), f.trunc());
    for (const auto& [m, c] : f.terms()) {
        DeltaPoly term = DeltaPoly::constant(f.prime(), f.gens(), f.trunc(), c.compose_qpow(p));
        for (const auto& fac : m.fs) {
            DeltaPoly sym =
                DeltaPoly::generator(f.prime(), f.gens(), f.trunc(), fac.r, fac.j).pow(p);
            sym += DeltaPoly::generator(f.prime(), f.gens(), f.trunc(), fac.r, fac.j + 1)
                       .scaled(Rat(f.prime()));
            term *= sym.pow(fac.e);
        }
        out += term;
    }
    return out;
}

DeltaPoly delta(const DeltaPoly& f) {
    unsigned long p = small_prime(f);
    DeltaPoly num = frobenius(f) - f.pow(p);
    DeltaPoly out = num.scaled(Rat(1, static_cast<long>(p)));
    if (f.p_integral() && !out.p_integral())
        throw DivisionNotExact("division-not-exact: delta of a p-integral element");
    return out;
}

DeltaPoly gamma(const DeltaPoly& f) {
    unsigned long p = small_prime(f);
    return f.pow(p).scaled(Rat(1, static_cast<long>(p)));
}

DeltaPoly gamma_q(const DeltaPoly& f) {
    unsigned long p = small_prime(f);
    QSeries inv_qint = q_integer_series(p, f.trunc()).inverse();
    return frobenius(f).scaled(inv_qint) - delta(f);
}

SumRuleReport verify_sum_rules(const DeltaPoly& a, const DeltaPoly& b) {
    unsigned long p = small_prime(a);
    DeltaPoly cross(a.prime(), a.gens(), a.trunc());
    for (unsigned long i = 1; i < p; ++i) {
        Rat coeff = Rat(binomial(p, i)) / Rat(Int(p));
        coeff.canonicalize();
        cross += (a.pow(i) * b.pow(p - i)).scaled(coeff);
    }
    DeltaPoly sum = a + b;
    SumRuleReport rep{gamma_q(sum) - gamma_q(a) - gamma_q(b) - cross,
                      delta(sum) - delta(a) - delta(b) + cross};
    return rep;
}

DeltaPoly gamma_split_residual(const DeltaPoly& f) {
    unsigned long p = small_prime(f);
    QSeries w = qint_minus_p_over_p(p, f.trunc());
    DeltaPoly gq = gamma_q(f);
    return gamma(f) - gq - (gq + delta(f)).scaled(w);
}

QSeries gammaq_qminus1_closed_form(unsigned long p, unsigned long len) {
    QSeries s(len);
    for (unsigned long i = 2; i < p; ++i) {
        if (i >= len) break;
        Rat c = -Rat(binomial(p, i)) / Rat(Int(p));
        c.canonicalize();
        s.set_coeff(i, c);
    }
    return s;
}

QSeries qint_minus_p_over_p(unsigned long p, unsigned long len) {
    QSeries s = q_integer_series(p, len);
    if (len > 0) s.set_coeff(0, s.coeff(0) - Rat(Int(p)));
    QSeries out(len);
    for (unsigned long i = 0; i < len; ++i) {
        Rat r = s.coeff(i) / Rat(Int(p));
        r.canonicalize();
        out.set_coeff(i, r);
    }
    return out;
}

QSeries p_over_q_integer(unsigned long p, unsigned long len) {
    return q_integer_series(p, len).inverse().scaled(Rat(Int(p)));
}

}  // namespace qcalc
