#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/local_element.hpp"
#include "qcalc/qanalog.hpp"
#include "qcalc/root_series.hpp"
#include "qcalc/zqpoly.hpp"

using namespace qcalc;

namespace {

ZqPoly qp(const char* s) {
    auto v = ZqPoly::parse(s);
    REQUIRE(v.has_value());
    return *v;
}

ZqPoly q_minus_1() { return qp("q-1"); }

// Deterministic polynomial sample with degree <= deg and coefficients in [-9, 9].
ZqPoly random_poly(std::mt19937_64& rng, long deg) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::vector<Int> cs;
    for (long i = 0; i <= deg; ++i) cs.emplace_back(coeff(rng));
    return ZqPoly::from_coeffs(0, cs);
}

}  // namespace

TEST_CASE("Laurent polynomial arithmetic and printing") {
    CHECK(qp("1+2q+2q^2+q^3").str() == "1+2q+2q^2+q^3");
    CHECK(qp("q^-1").str() == "q^-1");
    CHECK(qp("-q^-2-q^-1").str() == "-q^-2-q^-1");
    CHECK((q_minus_1() * qp("q+1")).str() == "-1+q^2");
    CHECK(qp("3-3q").divexact(qp("-3")).str() == "-1+q");

    ZqPoly f = qp("q^3-1");
    auto [quo, rem] = f.divmod(q_minus_1());
    CHECK(quo == qp("1+q+q^2"));
    CHECK(rem.is_zero());

    // Laurent exact division: q - q^-1 = q^-1 (q^2 - 1)
    CHECK((qp("q") - qp("q^-1")).divexact(qp("q^-1")) == qp("-1+q^2"));
    CHECK_THROWS_AS(qp("q^2+1").divexact(q_minus_1()), DivisionNotExact);

    CHECK(qp("1+q").substitute_qpow(3) == qp("1+q^3"));
    CHECK(qp("1+q+q^2").eval_at_one() == 3);
    CHECK(qp("q^-3+q^3").substitute_qpow(-1) == qp("q^-3+q^3"));
}

TEST_CASE("q-integers, q-factorials, Gaussian binomials") {
    CHECK(q_integer(3).str() == "1+q+q^2");
    CHECK(q_integer(1).str() == "1");
    CHECK(q_integer(0).is_zero());
    CHECK(q_integer(-2).str() == "-q^-2-q^-1");
    // (q^k - 1)/(q - 1) for negative k, cross-checked by clearing denominators
    for (long k = -6; k <= 6; ++k)
        CHECK(q_integer(k) * q_minus_1() == ZqPoly::monomial(1, k) - ZqPoly(1));

    CHECK(q_factorial(3).str() == "1+2q+2q^2+q^3");
    CHECK(q_pochhammer(2).str() == "1-q-q^2+q^3");

    for (unsigned long n = 0; n <= 30; ++n) {
        ZqPoly prod(Int(1));
        for (unsigned long k = 1; k <= n; ++k) prod *= q_integer(static_cast<long>(k));
        CHECK(q_factorial(n) == prod);
    }
    // binom(n,k)_q [k]_q! [n-k]_q! = [n]_q!, independent of the Pascal recursion
    for (unsigned long n = 0; n <= 30; ++n)
        for (unsigned long k = 0; k <= n; ++k)
            CHECK(q_binomial(n, k) * q_factorial(k) * q_factorial(n - k) == q_factorial(n));
    // specialisation at q = 1
    CHECK(q_binomial(7, 3).eval_at_one() == binomial(7, 3));
    CHECK(q_binomial(12, 5).eval_at_one() == binomial(12, 5));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1).str() == "-1+q");
    CHECK(cyclotomic(2).str() == "1+q");
    // independent route for m = 6: divide q^6-1 by the proper-divisor product
    ZqPoly expected6 =
        (ZqPoly::monomial(1, 6) - ZqPoly(1)).divexact(qp("q-1") * qp("q+1") * qp("1+q+q^2"));
    CHECK(cyclotomic(6) == expected6);
    CHECK(cyclotomic(6).str() == "1-q+q^2");

    for (unsigned long m = 1; m <= 200; ++m) {
        ZqPoly prod(Int(1));
        for (unsigned long d : divisors(m)) prod *= cyclotomic(d);
        CHECK(prod == ZqPoly::monomial(1, static_cast<long>(m)) - ZqPoly(1));
        CHECK(totient(m) == static_cast<unsigned long>(cyclotomic(m).high()));
    }
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul})
        CHECK(cyclotomic(p) == q_integer(static_cast<long>(p)));
    // prime powers: Phi_{p^k}(q) = Phi_p(q^{p^{k-1}})
    CHECK(cyclotomic(8) == cyclotomic(2).substitute_qpow(4));
    CHECK(cyclotomic(27) == cyclotomic(3).substitute_qpow(9));
}

TEST_CASE("[p]_q = p u + (q-1)^(p-1) with u = 1 mod (q-1)") {
    CHECK(unit_decompose(2, 4).rep().str() == "1");
    CHECK(unit_decompose(3, 4).rep().str() == "q");
    CHECK(unit_decompose(5, 2).rep().str() == "-1+2q");

    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        for (unsigned long N = 1; N <= 16; ++N) {
            Precision pr = Precision::cyclo(1, N);
            LocalElement u = unit_decompose(p, N);
            ZqPoly lhs = u.rep().scaled(p) + q_minus_1().pow(p - 1);
            CHECK(LocalElement(pr, lhs) == LocalElement(pr, q_integer(static_cast<long>(p))));
            CHECK(LocalElement(Precision::cyclo(1, 1), u.rep() - ZqPoly(1)).is_zero());
        }
    }
}

TEST_CASE("inversion through the nilpotent filtration") {
    Precision pr1 = Precision::cyclo(1, 3);
    CHECK(LocalElement::from_int(pr1, 1).inverted() == LocalElement::from_int(pr1, 1));
    CHECK_THROWS_AS(LocalElement(pr1, q_minus_1()).inverted(), NotAUnit);
    CHECK_THROWS_AS(LocalElement::from_int(pr1, 2).inverted(), NotAUnit);  // 1/2 not integral
    CHECK(LocalElement(pr1, qp("q")).is_unit());

    Precision pr2 = Precision::cyclo(3, 3, 1, 2);  // mod (27, (q-1)^2)
    LocalElement q2(pr2, qp("q"));
    CHECK(q2 * q2.inverted() == LocalElement::from_int(pr2, 1));
    LocalElement two = LocalElement::from_int(pr2, 2);
    CHECK(two * two.inverted() == LocalElement::from_int(pr2, 1));
    CHECK_THROWS_AS(LocalElement(pr2, qp("3")).inverted(), NotAUnit);
    CHECK_THROWS_AS(LocalElement(pr2, q_minus_1()).inverted(), NotAUnit);

    // q^-1 agrees with the Laurent reduction built into the representative
    for (unsigned long m : {1ul, 2ul, 3ul, 4ul, 6ul}) {
        for (unsigned long N : {1ul, 2ul, 3ul}) {
            Precision pc = Precision::cyclo(m, N);
            CHECK(LocalElement::q_power(pc, -1) == LocalElement(pc, qp("q")).inverted());
            Precision pw = Precision::qpow(m, N);
            CHECK(LocalElement::q_power(pw, -5) * LocalElement::q_power(pw, 5) ==
                  LocalElement::from_int(pw, 1));
        }
    }

    // q^m - 1 is nilpotent of order exactly N mod (q^m-1)^N
    Precision pw = Precision::qpow(2, 3);
    LocalElement w(pw, qp("q^2-1"));
    CHECK(!(w * w).is_zero());
    CHECK((w * w * w).is_zero());

    // [p]_q is congruent to 0 mod (p, q-1), hence never a unit there
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Precision pp = Precision::cyclo(p, 2, 1, p);
        CHECK(!LocalElement(pp, q_integer(static_cast<long>(p))).is_unit());
        LocalElement u(pp, unit_decompose(p, p).rep());
        CHECK(u * u.inverted() == LocalElement::from_int(pp, 1));
    }
}

namespace {

// Polynomials in q with coefficients in Z[z]/Phi_m, for reconstruction checks.
using QOverRoot = std::vector<LocalElement>;

QOverRoot to_qpoly(const ZqPoly& f, const Precision& cpr) {
    QOverRoot v;
    if (f.is_zero()) return v;
    REQUIRE(f.low() >= 0);
    for (long k = 0; k <= f.high(); ++k) v.push_back(LocalElement::from_int(cpr, f.coeff(k)));
    return v;
}

void add_into(QOverRoot& a, const QOverRoot& b) {
    if (a.size() < b.size()) a.resize(b.size(), LocalElement(b[0].precision(), ZqPoly()));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

// multiply by (q - z), z the residue of the root generator
QOverRoot mul_q_minus_root(const QOverRoot& a, const Precision& cpr) {
    LocalElement z = LocalElement::q_power(cpr, 1);
    QOverRoot out(a.size() + 1, LocalElement(cpr, ZqPoly()));
    for (size_t i = 0; i < a.size(); ++i) {
        out[i + 1] += a[i];
        out[i] -= a[i] * z;
    }
    return out;
}

void trim_zeros(QOverRoot& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

}  // namespace

TEST_CASE("Taylor expansion at a root of unity reconstructs the polynomial") {
    SUBCASE("pinned expansions") {
        RootSeries s = taylor_at_root(q_minus_1(), 1, 3);
        CHECK(s.coeffs[0].is_zero());
        CHECK(s.coeffs[1].rep().str() == "1");
        CHECK(s.coeffs[2].is_zero());
        CHECK(s.exact_tail);

        RootSeries s2 = taylor_at_root(q_minus_1(), 2, 3);
        CHECK(s2.coeffs[0].rep().str() == "-2");
        CHECK(s2.coeffs[1].rep().str() == "1");

        // (q;q)_2 = 1-q-q^2+q^3 at q = zeta_2 + t: value 0, slope 4
        RootSeries s3 = taylor_at_root(q_pochhammer(2), 2, 2);
        CHECK(s3.coeffs[0].is_zero());
        CHECK(s3.coeffs[1].rep().str() == "4");
    }

    SUBCASE("reconstruction oracle") {
        std::mt19937_64 rng(20260826);
        std::vector<ZqPoly> fs = {q_pochhammer(4), cyclotomic(6) * cyclotomic(6),
                                  qp("7-3q^2+q^5")};
        for (int i = 0; i < 3; ++i) fs.push_back(random_poly(rng, 20));
        for (unsigned long m : {1ul, 2ul, 3ul, 4ul, 6ul}) {
            Precision cpr = Precision::cyclo(m, 1);
            for (const ZqPoly& f : fs) {
                unsigned long K = f.is_zero() ? 1 : static_cast<unsigned long>(f.high()) + 1;
                RootSeries s = taylor_at_root(f, m, K);
                REQUIRE(s.exact_tail);
                QOverRoot acc;
                QOverRoot pw = {LocalElement::from_int(cpr, 1)};  // (q-z)^k
                for (unsigned long k = 0; k < K; ++k) {
                    QOverRoot term = pw;
                    for (auto& t : term) t *= s.coeffs[k];
                    add_into(acc, term);
                    pw = mul_q_minus_root(pw, cpr);
                }
                trim_zeros(acc);
                QOverRoot want = to_qpoly(f, cpr);
                trim_zeros(want);
                CHECK(acc.size() == want.size());
                for (size_t k = 0; k < acc.size(); ++k) CHECK(acc[k] == want[k]);
            }
        }
    }

    SUBCASE("Laurent input via geometric tails") {
        // 1/(z+t) = z^-1 - z^-2 t + z^-3 t^2 - ...
        for (unsigned long m : {3ul, 4ul}) {
            Precision cpr = Precision::cyclo(m, 1);
            RootSeries s = taylor_at_root(qp("q^-1"), m, 6);
            LocalElement zinv = LocalElement::q_power(cpr, 1).inverted();
            for (unsigned long k = 0; k < 6; ++k) {
                LocalElement want = zinv.pow(static_cast<long>(k) + 1);
                if (k % 2 == 1) want = -want;
                CHECK(s.coeffs[k] == want);
            }
            CHECK(!s.exact_tail);
        }
        // multiplicativity: expanding f*q term-by-term matches the convolution
        RootSeries f = taylor_at_root(qp("q^-2+3q"), 6, 5);
        RootSeries g = taylor_at_root(qp("q^-1+3q^2"), 6, 5);
        Precision cpr = Precision::cyclo(6, 1);
        LocalElement z = LocalElement::q_power(cpr, 1);
        for (unsigned long k = 0; k < 4; ++k) {
            // q = z + t, so (f*q)_k = z f_k + f_{k-1}
            LocalElement want = f.coeffs[k] * z;
            if (k > 0) want += f.coeffs[k - 1];
            CHECK(g.coeffs[k] == want);
        }
    }
}

TEST_CASE("compatible-root embedding exponents") {
    CHECK(embed_exponent(1, 12) == 0);
    CHECK(embed_exponent(2, 4) == 2);
    CHECK(embed_exponent(3, 6) == 4);

    // Phi_3(zeta_6^4) = 0 exactly
    Precision p6 = Precision::cyclo(6, 1);
    CHECK(LocalElement(p6, cyclotomic(3).substitute_qpow(4)).is_zero());

    for (unsigned long m = 1; m <= 12; ++m) {
        for (unsigned long p : {2ul, 3ul, 5ul}) {
            unsigned long M = p * m;
            unsigned long e = embed_exponent(m, M);
            unsigned long pv = 1;
            while (M % (pv * p) == 0) pv *= p;
            CHECK(e % pv == p % pv);
            CHECK(e % (M / pv) == 1 % (M / pv));
            // zeta_M^e has exact order m
            unsigned long g = std::gcd(e == 0 ? M : e, M);
            CHECK(M / g == m);
            // and satisfies the m-th cyclotomic polynomial
            Precision pM = Precision::cyclo(M, 1);
            ZqPoly img = e == 0 ? ZqPoly(cyclotomic(m).eval_at_one())
                                : cyclotomic(m).substitute_qpow(static_cast<long>(e));
            CHECK(LocalElement(pM, img).is_zero());
        }
    }

    // transitivity along divisor chains
    for (unsigned long m : {1ul, 2ul, 3ul, 4ul, 6ul}) {
        for (unsigned long M1 : {6ul, 12ul}) {
            if (M1 % m != 0) continue;
            for (unsigned long M2 : {12ul, 24ul, 36ul}) {
                if (M2 % M1 != 0) continue;
                unsigned long lhs = embed_exponent(m, M2);
                unsigned long rhs =
                    (embed_exponent(M1, M2) * embed_exponent(m, M1)) % M2;
                CHECK(lhs == rhs);
            }
        }
    }

    CHECK_THROWS_AS(embed_exponent(5, 12), IndexMismatch);
}

TEST_CASE("recentering a root-of-unity expansion one level down") {
    SUBCASE("pinned substitutions") {
        // constant series
        RootSeries one = taylor_at_root(ZqPoly(1), 2, 3);
        RootSeries r = reexpand_root(one, 2, 2, 3);
        CHECK(r.center == 1);
        CHECK(r.coeffs[0].rep().str() == "1");
        CHECK(r.coeffs[1].is_zero());

        // q - zeta_2 recentered at zeta_1: t + (1 - zeta_2) = t + 2 mod 4
        RootSeries lin = taylor_at_root(qp("q+1"), 2, 2);
        RootSeries rl = reexpand_root(lin, 2, 2, 2);
        CHECK(rl.coeffs[0].rep().str() == "2");
        CHECK(rl.coeffs[1].rep().str() == "1");

        // (q - zeta_2)^2 -> t^2 + 4t + 4 mod 8
        RootSeries sq = taylor_at_root(qp("q^2+2q+1"), 2, 3);
        REQUIRE(sq.exact_tail);
        RootSeries rs = reexpand_root(sq, 2, 3, 3);
        CHECK(rs.coeffs[0].rep().str() == "4");
        CHECK(rs.coeffs[1].rep().str() == "4");
        CHECK(rs.coeffs[2].rep().str() == "1");

        // same input with the exact-tail marker cleared must refuse
        sq.exact_tail = false;
        CHECK_THROWS_AS(reexpand_root(sq, 2, 3, 3), InsufficientInputPrecision);
    }

    SUBCASE("recentering agrees with expanding directly, mod p^a") {
        std::mt19937_64 rng(424242);
        std::vector<ZqPoly> fs = {qp("1+q"), q_pochhammer(3), qp("q^4-5")};
        for (int i = 0; i < 2; ++i) fs.push_back(random_poly(rng, 20));
        const unsigned long N = 5;
        for (const ZqPoly& f : fs) {
            for (unsigned long m = 1; m <= 6; ++m) {
                for (unsigned long p : {2ul, 3ul}) {
                    for (unsigned long a = 1; a <= 5; ++a) {
                        unsigned long K =
                            f.is_zero() ? 1 : static_cast<unsigned long>(f.high()) + 1;
                        RootSeries deep = taylor_at_root(f, p * m, K);
                        RootSeries lhs = reexpand_root(deep, p, a, N);
                        RootSeries shallow = taylor_at_root(f, m, N);
                        RootSeries rhs = reduce_char(embed_coefficients(shallow, p * m), p, a);
                        CHECK(root_series_mismatch(lhs, rhs, N) == -1);

                        // corrupting one coefficient must be detected
                        RootSeries bad = rhs;
                        bad.coeffs[2] += LocalElement::from_int(bad.cpr, 1);
                        CHECK(root_series_mismatch(lhs, bad, N) == 2);
                    }
                }
            }
        }
    }
}
