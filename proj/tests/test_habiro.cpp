#include "doctest.h"

#include <array>
#include <map>
#include <vector>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/etale.hpp"
#include "qcalc/habiro_element.hpp"
#include "qcalc/habiro_ladder.hpp"
#include "qcalc/qanalog.hpp"

using namespace qcalc;

namespace {

ZqPoly qp(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return ZqPoly::from_coeffs(0, std::move(v));
}

std::vector<Int> iv(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return v;
}

LocalElement le(const RootSeries& s, long v) { return LocalElement::from_int(s.cpr, v); }

bool all_pass(const std::vector<ConsistencyRecord>& ledger) {
    for (const auto& r : ledger)
        if (!r.pass) return false;
    return !ledger.empty();
}

// 1, 2, ..., n as a divisor-closed index family.
std::vector<unsigned long> upto(unsigned long n) {
    std::vector<unsigned long> v;
    for (unsigned long m = 1; m <= n; ++m) v.push_back(m);
    return v;
}

const EtaleAlgebraSpec& gauss_spec() {
    static EtaleAlgebraSpec s(iv({1, 0, 1}), Int(2));  // Z[i][1/2]
    return s;
}
const EtaleAlgebraSpec& golden_spec() {
    static EtaleAlgebraSpec s(iv({-1, -1, 1}), Int(5));  // Z[x]/(x^2-x-1)[1/5]
    return s;
}
const EtaleAlgebraSpec& rational_spec() {
    static EtaleAlgebraSpec s(iv({0, 1}), Int(1));  // Z itself
    return s;
}

}  // namespace

TEST_CASE("expansions of constants and of q at small roots") {
    HabiroElement one = habiro_from_poly(ZqPoly(Int(1)), upto(4), 3);
    for (unsigned long m : one.indices()) {
        const RootSeries& s = one.component(m);
        REQUIRE(s.exact_tail);
        CHECK(s.coeffs[0] == le(s, 1));
        for (size_t k = 1; k < s.coeffs.size(); ++k) CHECK(s.coeffs[k].is_zero());
    }
    CHECK(one.consistent());

    // q = 1 + (q - 1) = -1 + (q + 1): coefficients (1, 1) and (-1, 1).
    HabiroElement x = habiro_from_poly(ZqPoly::monomial(Int(1), 1), {1, 2}, 2, 3);
    const RootSeries& at1 = x.component(1);
    CHECK(at1.coeffs[0] == le(at1, 1));
    CHECK(at1.coeffs[1] == le(at1, 1));
    const RootSeries& at2 = x.component(2);
    CHECK(at2.coeffs[0] == le(at2, -1));
    CHECK(at2.coeffs[1] == le(at2, 1));
    CHECK(x.consistent());
    ConsistencyRecord r = consistency_check(x, 2, 1, 3, 2);
    CHECK(r.pass);
    CHECK(r.first_mismatch == -1);
}

TEST_CASE("index families must be divisor-closed and fully populated") {
    CHECK_THROWS_AS(habiro_from_poly(qp({1, 1}), {2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(habiro_from_poly(qp({1, 1}), {1, 4}, 3), std::invalid_argument);
    CHECK_THROWS_AS(habiro_from_poly(qp({1, 1}), {}, 3), std::invalid_argument);

    HabiroElement e = habiro_from_poly(qp({1, 1}), {1, 2}, 3);
    CHECK_THROWS_AS(e.component(5), IndexMismatch);
    CHECK_THROWS_AS(consistency_check(e, 3, 1, 2, 2), IndexMismatch);  // 3 not indexed
    CHECK_THROWS_AS(consistency_check(e, 4, 1, 2, 2), std::invalid_argument);  // not prime

    std::map<unsigned long, RootSeries> comps;
    comps.emplace(1, taylor_at_root(qp({1, 1}), 1, 3));
    comps.emplace(2, taylor_at_root(qp({1, 1}), 1, 3));  // centered at the wrong root
    CHECK_THROWS_AS(HabiroElement(std::vector<unsigned long>{1, 2}, std::move(comps)),
                    std::invalid_argument);
}

TEST_CASE("adjacent-pair checks pass on polynomial families") {
    HabiroElement a = habiro_from_poly(qp({-1, 0, 1}), {1, 3}, 4);  // q^2 - 1
    ConsistencyRecord r = consistency_check(a, 3, 1, 3, 3);
    CHECK(r.pass);

    HabiroElement b = habiro_from_poly(q_pochhammer(4), {1, 2, 4}, 4, 4);
    ConsistencyRecord r2 = consistency_check(b, 2, 2, 4, 4);
    CHECK(r2.pass);
    CHECK(all_pass(b.ledger()));

    HabiroElement c = habiro_from_poly(q_pochhammer(3), upto(6), 5);
    CHECK(c.consistent());
    // one record per (prime, index) pair with both ends present: 2,3,4,5 have
    // one prime edge each, 6 has two.
    CHECK(c.ledger().size() == 6);
}

TEST_CASE("a corrupted coefficient is located by the first differing index") {
    ZqPoly f = q_pochhammer(3);
    HabiroElement good = habiro_from_poly(f, {1, 2}, 5, 4);

    for (size_t bad = 0; bad < 4; ++bad) {
        std::map<unsigned long, RootSeries> comps;
        for (unsigned long m : good.indices()) comps.emplace(m, good.component(m));
        RootSeries& s = comps.at(1);
        s.coeffs[bad] += LocalElement::from_int(s.cpr, 1);
        HabiroElement broken(good.indices(), std::move(comps));
        ConsistencyRecord r = consistency_check(broken, 2, 1, 4, 4);
        CHECK_FALSE(r.pass);
        CHECK(r.first_mismatch == static_cast<long>(bad));
        broken.validate(4, 4);
        CHECK_FALSE(broken.consistent());
    }
}

TEST_CASE("arithmetic is componentwise and preserves consistency") {
    ZqPoly f1 = q_pochhammer(2);          // degree 3
    ZqPoly f2 = qp({1, -1, 0, 1});        // 1 - q + q^3
    auto M = upto(8);
    HabiroElement e1 = habiro_from_poly(f1, M, 4, 4);
    HabiroElement e2 = habiro_from_poly(f2, M, 4, 4);

    HabiroElement sum = e1 + e2;
    HabiroElement prod = e1 * e2;
    CHECK(all_pass(sum.validate(4, 4)));
    CHECK(all_pass(prod.validate(3, 6)));

    // componentwise against the expanded polynomials
    ZqPoly fs = f1 + f2, fp = f1 * f2;
    for (unsigned long m : M) {
        RootSeries ts = taylor_at_root(fs, m, 8);
        RootSeries tp = taylor_at_root(fp, m, 8);
        CHECK(root_series_mismatch(sum.component(m), ts, 8) == -1);
        CHECK(root_series_mismatch(prod.component(m), tp, 8) == -1);
        CHECK(sum.component(m).exact_tail);
        CHECK(prod.component(m).exact_tail);
    }

    HabiroElement small = habiro_from_poly(f1, {1, 2}, 3);
    CHECK_THROWS_AS(e1 + small, IndexMismatch);
}

TEST_CASE("quotients by degree-bounding moduli flatten to exact invariants") {
    // Z[q]/(q-1): the first descending stage is the module itself.
    LaurentPresentation P1{1, {{qp({-1, 1})}}};
    ModuleInvariants s1 = ladder_stage(P1, 1);
    CHECK(s1.free_rank == 1);
    CHECK(s1.torsion.empty());

    // (q;q)_3 is divisible by Phi_3, so stage 3 of Z[q]/Phi_3 is the whole
    // rank-two module; stability continues upward from there.
    CHECK(q_pochhammer(3).divexact(cyclotomic(3)) * cyclotomic(3) == q_pochhammer(3));
    LaurentPresentation P3{1, {{cyclotomic(3)}}};
    for (unsigned long n = 3; n <= 5; ++n) {
        ModuleInvariants s = ladder_stage(P3, n);
        CHECK(s.free_rank == 2);
        CHECK(s.torsion.empty());
    }

    // torsion example: Z[q]/(q-1, 5) = Z/5 survives stage 1 as pure torsion
    LaurentPresentation P5{1, {{qp({-1, 1})}, {qp({5})}}};
    ModuleInvariants s5 = ladder_stage(P5, 1);
    CHECK(s5.free_rank == 0);
    REQUIRE(s5.torsion.size() == 1);
    CHECK(s5.torsion[0] == 5);

    // Laurent relations are handled through the inverted companion matrix
    LaurentPresentation PL{1, {{ZqPoly::monomial(Int(1), -1) - ZqPoly(Int(1))}}};
    ModuleInvariants sL = ladder_stage(PL, 1);  // q^{-1} - 1 cuts the same ideal as q - 1
    CHECK(sL.free_rank == 1);
    CHECK(sL.torsion.empty());

    SUBCASE("moduli that do not bound the degree are rejected") {
        LaurentPresentation P{1, {{qp({-1, 1})}}};
        CHECK_THROWS_AS(quotient_invariants(P, ZqPoly(Int(0))), UnboundedDegree);
        CHECK_THROWS_AS(quotient_invariants(P, ZqPoly(Int(2))), UnboundedDegree);
        CHECK_THROWS_AS(quotient_invariants(P, qp({-2, 2})), UnboundedDegree);
        CHECK_THROWS_AS(quotient_invariants(P, qp({3, 1, 1})), UnboundedDegree);
        // a unit modulus kills the ring outright
        CHECK(quotient_invariants(P, ZqPoly::monomial(Int(1), 5)).is_zero());
        CHECK(quotient_invariants(P, ZqPoly(Int(-1))).is_zero());
    }

    SUBCASE("relation rows must match the generator count") {
        LaurentPresentation bad{2, {{qp({1})}}};
        CHECK_THROWS_AS(quotient_invariants(bad, qp({-1, 1})), std::invalid_argument);
    }
}

TEST_CASE("the localisation ladder vanishes with the predicted prefix") {
    LadderSystem L = localisation_ladder(12);
    REQUIRE(L.steps.size() == 12);
    CHECK(L.steps[0] == qp({1, -1}));
    CHECK(L.steps[3] == ZqPoly(Int(1)) - ZqPoly::monomial(Int(1), 4));

    /* (q;q)_n divides the product of the first k steps exactly when k >= n,
     * because the steps themselves accumulate to (q;q)_k. */
    for (unsigned long n = 1; n <= 4; ++n) {
        LadderVanishing v = ladder_stage_vanishes(L, n);
        CHECK(v.vanishes);
        CHECK(v.stages_used == n);
    }
    // an exhausted window yields no certificate
    LadderVanishing none = ladder_stage_vanishes(localisation_ladder(2), 4);
    CHECK_FALSE(none.vanishes);
}

TEST_CASE("residue survey flags only the fully localised ring") {
    LaurentPresentation phi5{1, {{cyclotomic(5)}}};
    NakayamaReport r5 = nakayama_probe(phi5, {1, 5});
    CHECK_FALSE(r5.trivial);
    REQUIRE(r5.quotients.size() == 2);
    // against Phi_1 the relation becomes Phi_5(1) = 5
    CHECK(cyclotomic(5).eval_int(Int(1)) == 5);
    CHECK(r5.quotients[0].second.free_rank == 0);
    REQUIRE(r5.quotients[0].second.torsion.size() == 1);
    CHECK(r5.quotients[0].second.torsion[0] == 5);
    // against Phi_5 itself nothing is cut down
    CHECK(r5.quotients[1].second.free_rank == 4);
    CHECK(r5.quotients[1].second.torsion.empty());

    LaurentPresentation sq{1, {{qp({-1, 0, 1})}}};  // Z[q]/(q^2 - 1)
    NakayamaReport rsq = nakayama_probe(sq, {1, 2});
    CHECK_FALSE(rsq.trivial);
    CHECK(rsq.quotients[0].second.free_rank == 1);  // q = 1 leaves Z
    CHECK(rsq.quotients[1].second.free_rank == 1);  // q = -1 leaves Z

    NakayamaSystemReport rl = nakayama_probe(localisation_ladder(16), {1, 2, 3, 4});
    CHECK(rl.trivial);
    for (const auto& [m, v] : rl.quotients) {
        CHECK(v.vanishes);
        CHECK(v.stages_used <= m);
    }
    for (const auto& [n, v] : rl.ladder) CHECK(v.stages_used == n);
}

TEST_CASE("ladder stages stabilise once the support is covered") {
    for (unsigned long d = 1; d <= 5; ++d) {
        LaurentPresentation P{1, {{cyclotomic(d)}}};
        ModuleInvariants expect{totient(d), {}};
        for (unsigned long n = d; n <= d + 2; ++n) CHECK(ladder_stage(P, n) == expect);
    }
}

TEST_CASE("resolution window: telescoping, injectivity, and lifts") {
    for (unsigned long n_max : {1ul, 3ul, 5ul}) {
        ResolutionReport rep = resolution_window_check(n_max);
        CHECK(rep.ladder_factors);
        CHECK(rep.composite_zero);
        CHECK(rep.injective);
        CHECK(rep.window_det == ZqPoly(Int(1)));
        CHECK(rep.lift_found);
        REQUIRE(rep.lift.size() == n_max + 1);
        CHECK(rep.lift[n_max] == ZqPoly(Int(1)));
        CHECK(rep.pass());
    }
    CHECK_THROWS_AS(resolution_window_check(0), std::invalid_argument);
    CHECK_THROWS_AS(resolution_window_check(6), std::invalid_argument);
}

TEST_CASE("coefficient rings validate their discriminant support") {
    CHECK(gauss_spec().discriminant() == -4);
    CHECK(golden_spec().discriminant() == 5);
    CHECK(rational_spec().discriminant() == 1);

    CHECK_THROWS_AS(EtaleAlgebraSpec(iv({1, 0, 1}), Int(1)), std::invalid_argument);
    CHECK_THROWS_AS(EtaleAlgebraSpec(iv({0, 0, 1}), Int(2)), std::invalid_argument);  // x^2
    CHECK_THROWS_AS(EtaleAlgebraSpec(iv({1, 0, 2}), Int(2)), std::invalid_argument);  // not monic
    CHECK_THROWS_AS(EtaleAlgebraSpec(iv({7}), Int(7)), std::invalid_argument);  // constant

    EtaleAlgebraSpec parsed =
        EtaleAlgebraSpec::from_json(R"({"g": ["-1", "-1", "1"], "delta": "5"})");
    CHECK(parsed.degree() == 2);
    CHECK(parsed.discriminant() == 5);
    CHECK(parsed.delta() == 5);
    CHECK_THROWS_AS(EtaleAlgebraSpec::from_json(R"({"delta": "5"})"), std::invalid_argument);
}

TEST_CASE("Frobenius lifts on Z[i]: fixed at 5, conjugation at 3, absent at 2") {
    FrobeniusLift f5 = frobenius_lift(gauss_spec(), 5, 4);
    CHECK(f5.phi == iv({0, 1}));  // x^5 = x on the nose
    CHECK(f5.exact_root);
    CHECK(f5.reduces_to_frobenius);
    CHECK(f5.perturbed_seed_agrees);

    FrobeniusLift f3 = frobenius_lift(gauss_spec(), 3, 4);
    CHECK(f3.phi == iv({0, 80}));  // -x mod 3^4
    CHECK(f3.exact_root);
    CHECK(f3.reduces_to_frobenius);
    CHECK(f3.perturbed_seed_agrees);

    CHECK_THROWS_AS(frobenius_lift(gauss_spec(), 2, 3), NonEtaleAtP);
    CHECK_THROWS_AS(frobenius_lift(gauss_spec(), 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(frobenius_lift(gauss_spec(), 3, 0), std::invalid_argument);
}

TEST_CASE("Frobenius lifts on the golden ring swap the two roots at 2 and 3") {
    // 1 - x is an exact root: (1-x)^2 - (1-x) - 1 = x^2 - x - 1
    FrobeniusLift f2 = frobenius_lift(golden_spec(), 2, 5);
    CHECK(f2.phi == iv({1, 31}));  // 1 - x mod 2^5
    CHECK(f2.exact_root);
    CHECK(f2.perturbed_seed_agrees);

    FrobeniusLift f3 = frobenius_lift(golden_spec(), 3, 4);
    CHECK(f3.phi == iv({1, 80}));  // 1 - x mod 3^4
    CHECK(f3.exact_root);

    // 11 = 10 + 1 splits x^2 - x - 1 mod p (5 is a QR), so the lift fixes x
    FrobeniusLift f11 = frobenius_lift(golden_spec(), 11, 3);
    CHECK(f11.reduces_to_frobenius);
    CHECK(f11.perturbed_seed_agrees);
    // either root is its own p-power when the prime splits
    CHECK(f11.phi == iv({0, 1}));

    CHECK_THROWS_AS(frobenius_lift(golden_spec(), 5, 3), NonEtaleAtP);
}

TEST_CASE("degree-one coefficient rings have the trivial lift") {
    for (unsigned long p : {2ul, 3ul, 7ul}) {
        FrobeniusLift f = frobenius_lift(rational_spec(), p, 4);
        CHECK(f.phi == iv({0}));
        CHECK(f.exact_root);
        CHECK(f.reduces_to_frobenius);
        CHECK(f.perturbed_seed_agrees);
    }
}

TEST_CASE("glued rings assemble divisor components and per-prime gluing") {
    GluedRing g6 = build_relative_habiro(rational_spec(), 6, 4);
    REQUIRE(g6.components().size() == 4);
    CHECK(g6.components()[0].d == 1);
    CHECK(g6.components()[3].d == 6);
    CHECK(g6.glued_primes() == std::vector<unsigned long>({2, 3}));
    CHECK(g6.squares_commute());

    GluedRing gi3 = build_relative_habiro(gauss_spec(), 3, 4);
    CHECK(gi3.glued_primes() == std::vector<unsigned long>({3}));
    CHECK(gi3.gluing(3).phi == iv({0, 80}));  // i -> i^3 = -i
    CHECK_THROWS_AS(gi3.gluing(2), NotADivisor);

    GluedRing gi5 = build_relative_habiro(gauss_spec(), 5, 4);
    CHECK(gi5.gluing(5).phi == iv({0, 1}));  // identity

    GluedRing gi6 = build_relative_habiro(gauss_spec(), 6, 4);
    CHECK(gi6.glued_primes() == std::vector<unsigned long>({3}));
    CHECK(gi6.skipped_primes() == std::vector<unsigned long>({2}));

    CHECK_THROWS_AS(build_relative_habiro(rational_spec(), 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_relative_habiro(rational_spec(), 6, 0), InsufficientInputPrecision);
}

TEST_CASE("gluing squares commute on every example ring up to level 12") {
    for (unsigned long m = 1; m <= 12; ++m) {
        for (unsigned long a : {4ul, 6ul}) {
            CHECK(build_relative_habiro(rational_spec(), m, a).squares_commute());
            CHECK(build_relative_habiro(gauss_spec(), m, a).squares_commute());
            if (m % 5 != 0)  // 5 ramifies in the golden ring and is inverted
                CHECK(build_relative_habiro(golden_spec(), m, a).squares_commute());
        }
    }
    // golden ring at levels divisible by 5: the prime is skipped, still fine
    GluedRing g10 = build_relative_habiro(golden_spec(), 10, 4);
    CHECK(g10.skipped_primes() == std::vector<unsigned long>({5}));
    CHECK(g10.squares_commute());
}

TEST_CASE("glued elements: reduction, ghost components, incompatibility") {
    GluedRing G = build_relative_habiro(rational_spec(), 2, 4);

    // q itself: residues 1 at Phi_1 and -1 at Phi_2
    GluedElement x = GluedElement::from_poly(G, {{Int(0)}, {Int(1)}});
    CHECK(ghost(G, x, 1) == GluedElement::Residue{{Int(1)}});
    CHECK(ghost(G, x, 2) == GluedElement::Residue{{Int(-1)}});
    CHECK_THROWS_AS(ghost(G, x, 4), NotADivisor);

    // constants restrict to the same value everywhere
    GluedElement c = GluedElement::from_poly(G, {{Int(5)}});
    CHECK(ghost(G, c, 1) == GluedElement::Residue{{Int(5)}});
    CHECK(ghost(G, c, 2) == GluedElement::Residue{{Int(5)}});

    // (0 mod q-1, 1 mod q+1) would need the half-integer (1-q)/2
    std::map<unsigned long, GluedElement::Residue> bad;
    bad[1] = {{Int(0)}};
    bad[2] = {{Int(1)}};
    CHECK_THROWS_AS(GluedElement(G, std::move(bad)), std::invalid_argument);

    // (0, 2) differs from 1 - q by an element of the glued ring
    std::map<unsigned long, GluedElement::Residue> ok;
    ok[1] = {{Int(0)}};
    ok[2] = {{Int(2)}};
    GluedElement fine(G, std::move(ok));
    CHECK(ghost(G, fine, 2) == GluedElement::Residue{{Int(2)}});

    std::map<unsigned long, GluedElement::Residue> missing;
    missing[1] = {{Int(0)}};
    CHECK_THROWS_AS(GluedElement(G, std::move(missing)), IndexMismatch);
}

TEST_CASE("glued elements with nontrivial coefficient ring") {
    GluedRing G = build_relative_habiro(gauss_spec(), 3, 4);
    // f = i + q: at Phi_1 the residue is i + 1; at Phi_3 it stays i + q
    GluedElement f = GluedElement::from_poly(G, {{Int(0), Int(1)}, {Int(1), Int(0)}});
    CHECK(ghost(G, f, 1) == GluedElement::Residue{{Int(1), Int(1)}});
    GluedElement::Residue at3 = ghost(G, f, 3);
    REQUIRE(at3.size() == 2);
    CHECK(at3[0] == iv({0, 1}));
    CHECK(at3[1] == iv({1, 0}));
}

TEST_CASE("componentwise comparison with the expected divisor shape") {
    QwittReport rz = compare_qwitt(build_relative_habiro(rational_spec(), 2, 4));
    REQUIRE(rz.components.size() == 2);
    CHECK(rz.components[0].d == 1);
    CHECK(rz.components[1].d == 2);
    CHECK(rz.pass());
    REQUIRE(rz.frobenius_mod_p.size() == 1);
    CHECK(rz.frobenius_mod_p[0].first == 2);
    CHECK(rz.frobenius_mod_p[0].second);

    QwittReport ri = compare_qwitt(build_relative_habiro(gauss_spec(), 3, 4));
    CHECK(ri.pass());

    for (unsigned long m = 1; m <= 6; ++m) {
        CHECK(compare_qwitt(build_relative_habiro(rational_spec(), m, 4)).pass());
        CHECK(compare_qwitt(build_relative_habiro(gauss_spec(), m, 4)).pass());
        if (m % 5 != 0) CHECK(compare_qwitt(build_relative_habiro(golden_spec(), m, 4)).pass());
    }
}

TEST_CASE("the level-2 gluing of the golden ring squares F_4") {
    GluedRing G = build_relative_habiro(golden_spec(), 2, 4);
    const FrobeniusLift& f2 = G.gluing(2);

    /* Independent oracle: F_4 = F_2[x]/(x^2 + x + 1) (the reduction of
     * x^2 - x - 1 mod 2).  Squaring is computed by plain multiplication,
     * the gluing by substituting phi into each element. */
    auto mulF4 = [](std::array<int, 2> u, std::array<int, 2> v) {
        int c0 = u[0] * v[0], c1 = u[0] * v[1] + u[1] * v[0], c2 = u[1] * v[1];
        // x^2 = x + 1
        return std::array<int, 2>{(c0 + c2) % 2, (c1 + c2) % 2};
    };
    int p0 = static_cast<int>(Int(f2.phi[0] % 2).get_si());
    int p1 = static_cast<int>(Int(f2.phi[1] % 2).get_si());
    std::array<int, 2> phi{p0, p1};
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1) {
            std::array<int, 2> elt{a0, a1};
            std::array<int, 2> square = mulF4(elt, elt);
            // apply the gluing: a0 + a1 * phi
            std::array<int, 2> image{(a0 + a1 * phi[0]) % 2, (a1 * phi[1]) % 2};
            CHECK(square == image);
        }
}

TEST_CASE("glued families reject cross-divisor corruption at higher levels") {
    GluedRing G = build_relative_habiro(rational_spec(), 6, 4);
    GluedElement e = GluedElement::from_poly(G, {{Int(2)}, {Int(0)}, {Int(-1)}});  // 2 - q^2
    // tamper with a single component
    std::map<unsigned long, GluedElement::Residue> res;
    for (const auto& c : G.components()) res.emplace(c.d, ghost(G, e, c.d));
    res.at(3)[0][0] += 1;
    CHECK_THROWS_AS(GluedElement(G, std::move(res)), std::invalid_argument);
}
