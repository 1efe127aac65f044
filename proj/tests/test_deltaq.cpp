#include <random>

#include "doctest.h"
#include "qcalc/decompose.hpp"
#include "qcalc/delta_ops.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/qanalog.hpp"

using namespace qcalc;

namespace {

DeltaMono msym(unsigned r, unsigned j, unsigned long e = 1) { return DeltaMono::symbol(r, j, e); }

QSeries series_of(unsigned long len, std::vector<long> cs) {
    QSeries s(len);
    for (size_t i = 0; i < cs.size() && i < len; ++i) s.set_coeff(i, Rat(cs[i]));
    return s;
}

// Random polynomial in x1, d1x1, d2x1 with small integer series coefficients.
DeltaPoly random_poly(std::mt19937& rng, unsigned long p, unsigned long trunc,
                      unsigned max_monos = 5) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<unsigned> nmono(1, max_monos);
    std::uniform_int_distribution<unsigned> depth(0, 2);
    std::uniform_int_distribution<unsigned long> expo(0, 2);
    DeltaPoly f(Int(static_cast<long>(p)), 1, trunc);
    unsigned n = nmono(rng);
    for (unsigned i = 0; i < n; ++i) {
        DeltaMono m = DeltaMono::one();
        for (unsigned d = 0; d <= 2; ++d) {
            unsigned long e = expo(rng);
            if (e > 0) m = m * msym(1, depth(rng), e);
        }
        QSeries c(trunc);
        for (unsigned long j = 0; j < std::min<unsigned long>(trunc, 3); ++j)
            c.set_coeff(j, Rat(coeff(rng)));
        if (!c.is_zero()) f.add_term(m, c);
    }
    return f;
}

}  // namespace

TEST_CASE("series arithmetic in q-1") {
    QSeries a = series_of(6, {1, 2, 0, -3});
    QSeries b = series_of(6, {2, -1, 1});
    CHECK((a * b) == series_of(6, {2, 3, -1, -4, 3, -3}));
    CHECK((a + b - b) == a);

    // inverse: a * a^{-1} = 1 truncated
    QSeries inv = a.inverse();
    CHECK((a * inv) == QSeries::one(6));
    CHECK_THROWS_AS(QSeries(4).inverse(), NotAUnit);

    // q -> q^3 on t = q-1 is t -> (1+t)^3 - 1
    QSeries t = QSeries::t_power(5, 1);
    CHECK(t.compose_qpow(3) == series_of(5, {0, 3, 3, 1}));
    // composing twice with q->q^2 equals q->q^4
    QSeries s = series_of(5, {1, -1, 2, 0, 1});
    CHECK(s.compose_qpow(2).compose_qpow(2) == s.compose_qpow(4));

    // [p]_q = p*u + t^(p-1) with u integral and u(0) = 1
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        QSeries qi = q_integer_series(p, 10);
        QSeries u = unit_u_series(p, 10);
        CHECK(u.p_integral(Int(static_cast<long>(p))));
        CHECK(u.coeff(0) == 1);
        QSeries rhs = u.scaled(Rat(static_cast<long>(p))) + QSeries::t_power(10, p - 1);
        CHECK(qi == rhs);
        // p/[p]_q really is the inverse: product with [p]_q gives p
        CHECK((p_over_q_integer(p, 10) * qi) == QSeries(10, Rat(static_cast<long>(p))));
    }
}

TEST_CASE("frobenius lift on delta-polynomials") {
    // phi(x) = x^p + p*dx
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Int P(static_cast<long>(p));
        DeltaPoly x = DeltaPoly::generator(P, 1, 4, 1);
        DeltaPoly expected(P, 1, 4);
        expected.add_term(msym(1, 0, p), QSeries::one(4));
        expected.add_term(msym(1, 1), QSeries(4, Rat(static_cast<long>(p))));
        CHECK(frobenius(x) == expected);
    }

    // phi(q-1) = q^p - 1 on constants: p=3 gives 3t+3t^2+t^3
    DeltaPoly t3 = DeltaPoly::t_power(Int(3), 1, 4, 1);
    DeltaPoly im = frobenius(t3);
    CHECK(im.terms().size() == 1);
    CHECK(im.coeff(DeltaMono::one()) == series_of(4, {0, 3, 3, 1}));

    // phi(x^2) for p=2: (x^2+2dx)^2 = x^4 + 4x^2 dx + 4 dx^2
    DeltaPoly x2 = DeltaPoly::generator(Int(2), 1, 4, 1).pow(2);
    DeltaPoly fx2 = frobenius(x2);
    CHECK(fx2.coeff(msym(1, 0, 4)) == QSeries::one(4));
    CHECK(fx2.coeff(msym(1, 0, 2) * msym(1, 1)) == QSeries(4, Rat(4)));
    CHECK(fx2.coeff(msym(1, 1, 2)) == QSeries(4, Rat(4)));

    // ring homomorphism on random pairs
    std::mt19937 rng(411);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        for (int rep = 0; rep < 12; ++rep) {
            DeltaPoly f = random_poly(rng, p, 5);
            DeltaPoly g = random_poly(rng, p, 5);
            CHECK(frobenius(f * g) == frobenius(f) * frobenius(g));
            CHECK(frobenius(f + g) == frobenius(f) + frobenius(g));
            // phi(f) = f^p mod p
            DeltaPoly diff = frobenius(f) - f.pow(p);
            CHECK(diff.scaled(Rat(1, static_cast<long>(p))).p_integral());
        }
    }
}

TEST_CASE("delta operator: pinned values and the product law") {
    // delta(x^2) = 2 x^p dx + p dx^2
    for (unsigned long p : {2ul, 3ul}) {
        Int P(static_cast<long>(p));
        DeltaPoly x2 = DeltaPoly::generator(P, 1, 4, 1).pow(2);
        DeltaPoly d = delta(x2);
        DeltaPoly expected(P, 1, 4);
        expected.add_term(msym(1, 0, p) * msym(1, 1), QSeries(4, Rat(2)));
        expected.add_term(msym(1, 1, 2), QSeries(4, Rat(static_cast<long>(p))));
        CHECK(d == expected);
    }

    // delta(fg) = f^p delta(g) + g^p delta(f) + p delta(f) delta(g)
    std::mt19937 rng(412);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Rat P(static_cast<long>(p));
        for (int rep = 0; rep < 10; ++rep) {
            DeltaPoly f = random_poly(rng, p, 4);
            DeltaPoly g = random_poly(rng, p, 4);
            DeltaPoly lhs = delta(f * g);
            DeltaPoly rhs = f.pow(p) * delta(g) + g.pow(p) * delta(f) +
                            (delta(f) * delta(g)).scaled(P);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("twisted divided power gamma_q: pinned values") {
    // gamma_q(q-1) for p=3, N=4 is -(q-1)^2
    DeltaPoly t = DeltaPoly::t_power(Int(3), 1, 4, 1);
    DeltaPoly g = gamma_q(t);
    CHECK(g.terms().size() == 1);
    CHECK(g.coeff(DeltaMono::one()) == series_of(4, {0, 0, -1, 0}));
    CHECK(g.coeff(DeltaMono::one()) == gammaq_qminus1_closed_form(3, 4));

    // closed form against the operator for p in {2,3,5,7}
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        unsigned long N = 8;
        DeltaPoly tp = DeltaPoly::t_power(Int(static_cast<long>(p)), 1, N, 1);
        DeltaPoly img = gamma_q(tp);
        QSeries closed = gammaq_qminus1_closed_form(p, N);
        if (closed.is_zero())
            CHECK(img.is_zero());
        else
            CHECK(img.coeff(DeltaMono::one()) == closed);
    }

    // p=2: empty sum, so gamma_q(q-1) = 0
    CHECK(gammaq_qminus1_closed_form(2, 6).is_zero());
}

TEST_CASE("sum rules for gamma_q and delta") {
    std::mt19937 rng(413);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        // pinned small pair first
        Int P(static_cast<long>(p));
        DeltaPoly x = DeltaPoly::generator(P, 1, 5, 1);
        DeltaPoly dx = DeltaPoly::generator(P, 1, 5, 1, 1);
        auto rep = verify_sum_rules(x, dx);
        CHECK(rep.ok());

        for (int r = 0; r < 10; ++r) {
            DeltaPoly f = random_poly(rng, p, 5);
            DeltaPoly g = random_poly(rng, p, 5);
            auto rr = verify_sum_rules(f, g);
            CHECK(rr.gamma_q_residual.is_zero());
            CHECK(rr.delta_residual.is_zero());
        }
    }
}

TEST_CASE("splitting gamma through gamma_q and delta") {
    // gamma(f) = gamma_q(f) + (([p]_q - p)/p)(gamma_q(f) + delta(f))
    CHECK(gamma_split_residual(DeltaPoly::generator(Int(2), 1, 6, 1)).is_zero());
    CHECK(gamma_split_residual(DeltaPoly::generator(Int(5), 1, 4, 1)).is_zero());
    CHECK(gamma_split_residual(DeltaPoly::generator(Int(3), 1, 4, 1).pow(2)).is_zero());

    std::mt19937 rng(414);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        for (int r = 0; r < 6; ++r) {
            DeltaPoly f = random_poly(rng, p, 8, 3);
            CHECK(gamma_split_residual(f).is_zero());
        }
    }
}

TEST_CASE("integral span stability under delta and gamma_q") {
    // For e = t^n * (integral generator): delta(e) stays in t^n * (integral),
    // gamma_q(e) lands in t^(n+1) * (integral).
    for (unsigned long p : {2ul, 3ul}) {
        Int P(static_cast<long>(p));
        unsigned long N = 9;
        std::vector<DeltaPoly> gens;
        gens.push_back(DeltaPoly::constant(P, 1, N, Rat(1)));
        gens.push_back(DeltaPoly::generator(P, 1, N, 1));
        gens.push_back(DeltaPoly::generator(P, 1, N, 1, 1));
        gens.push_back(DeltaPoly::generator(P, 1, N, 1).pow(2));
        gens.push_back(DeltaPoly::generator(P, 1, N, 1) * DeltaPoly::generator(P, 1, N, 1, 1));
        for (unsigned long n = 1; n <= 4; ++n) {
            for (const auto& g : gens) {
                DeltaPoly e = g.scaled(QSeries::t_power(N, n));
                DeltaPoly de = delta(e);
                CHECK(de.p_integral());
                CHECK(de.min_t_order() >= n);
                DeltaPoly gq = gamma_q(e);
                CHECK(gq.p_integral());
                CHECK(gq.min_t_order() >= n + 1);
            }
        }
    }
}

TEST_CASE("witness decomposition of iterated gamma") {
    // n=1: gamma(x) = y_0 + p^{-2} t^{p-1} y_1 with
    // y_0 = gamma_q(x) + (u-1)(gamma_q(x)+delta(x)), y_1 = p(gamma_q(x)+delta(x)).
    for (unsigned long p : {2ul, 3ul}) {
        unsigned long N = 6;
        Int P(static_cast<long>(p));
        auto w = decompose_gamma_iterate(1, p, N, 6);
        REQUIRE(w.terms.size() == 1);
        CHECK(w.terms[0].exponent == 2);
        CHECK(w.terms[0].t_order == p - 1);

        DeltaPoly x = DeltaPoly::generator(P, 1, N, 1);
        DeltaPoly mixed = gamma_q(x) + delta(x);
        QSeries um1 = unit_u_series(p, N);
        um1.set_coeff(0, um1.coeff(0) - 1);
        CHECK(w.y0.value() == gamma_q(x) + mixed.scaled(um1));
        CHECK(w.terms[0].y.value() == mixed.scaled(Rat(static_cast<long>(p))));

        CHECK(w.combined() == gamma_iterate_direct(1, p, N));
        CHECK(w.verify_certificates());
        CHECK(w.y0.divided_power_q());
    }

    // deeper examples, re-verified against direct expansion of gamma iterates
    {
        auto w = decompose_gamma_iterate(1, 3, 6, 6);
        CHECK((w.combined() - gamma_iterate_direct(1, 3, 6)).is_zero());
        CHECK(w.verify_certificates());
    }
    {
        auto w = decompose_gamma_iterate(2, 2, 8, 10);
        REQUIRE(w.terms.size() == 2);
        CHECK(w.terms[1].exponent == 6);
        CHECK((w.combined() - gamma_iterate_direct(2, 2, 8)).is_zero());
        CHECK(w.verify_certificates());
    }
    {
        auto w = decompose_gamma_iterate(2, 3, 8, 10);
        CHECK((w.combined() - gamma_iterate_direct(2, 3, 8)).is_zero());
        CHECK(w.verify_certificates());
    }

    // too small a denominator budget is refused
    CHECK_THROWS_AS(decompose_gamma_iterate(2, 2, 8, 3), ValuationBudgetExceeded);
}

TEST_CASE("witness decomposition of iterated gamma_q") {
    struct Case {
        unsigned n;
        unsigned long p, N, a;
    };
    for (Case c : {Case{1, 3, 5, 8}, Case{1, 2, 6, 8}, Case{2, 2, 6, 16}}) {
        CAPTURE(c.p);
        CAPTURE(c.n);
        unsigned long K = gammaq_witness_length(c.p, c.N);
        auto w = decompose_gammaq_iterate(c.n, c.p, c.N, c.a, K);
        CHECK(w.terms.size() == K);
        CHECK((w.combined() - gammaq_iterate_direct(c.n, c.p, c.N)).is_zero());
        CHECK(w.verify_certificates());
        CHECK(w.y0.divided_power_classical());
        // asking for more terms than representable is harmless
        auto w2 = decompose_gammaq_iterate(c.n, c.p, c.N, c.a, K + 4);
        CHECK(w2.terms.size() == K);
    }

    // truncating away a nonzero term is an error
    CHECK_THROWS_AS(decompose_gammaq_iterate(1, 2, 6, 8, 0), InsufficientTruncation);
}
