#include "qcalc/habiro_ladder.hpp"

#include <algorithm>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/linalg.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

namespace {

/* Normalise g to a monic polynomial with the same ideal in Z[q^{+/-1}]:
 * strip the q-power, flip the sign.  Throws UnboundedDegree unless the
 * result is monic of positive degree with constant coefficient +-1. */
ZqPoly degree_bound(const ZqPoly& g) {
    if (g.is_zero()) throw UnboundedDegree("zero modulus gives no q-degree bound");
    ZqPoly h = g.shifted(-g.low());
    if (h.high() < 1) throw UnboundedDegree("constant modulus gives no q-degree bound");
    if (h.coeff(h.high()) < 0) h = -h;
    if (h.coeff(h.high()) != 1 || (h.coeff(0) != 1 && h.coeff(0) != -1))
        throw UnboundedDegree("modulus must have unit leading and constant coefficients");
    return h;
}

// Companion matrix of monic h: multiplication by q on Z[q]/(h).
IntMat companion(const ZqPoly& h) {
    size_t D = static_cast<size_t>(h.high());
    IntMat C(D, D);
    for (size_t i = 0; i + 1 < D; ++i) C.at(i + 1, i) = 1;
    for (size_t i = 0; i < D; ++i) C.at(i, D - 1) = -h.coeff(static_cast<long>(i));
    return C;
}

/* q^{-1} as a polynomial in the companion matrix: from h(q) = 0 and
 * h(0) = e in {+-1}, q * sum_{i>=1} h_i q^{i-1} = -e, so the inverse is
 * -e * (h_1 + h_2 q + ... + h_D q^{D-1}). */
IntMat companion_inverse(const ZqPoly& h, const IntMat& C) {
    size_t D = C.rows;
    Int e = h.coeff(0);
    IntMat acc(D, D);  // Horner from the top coefficient down
    for (long i = static_cast<long>(D); i >= 1; --i) {
        acc = mat_mul(acc, C);
        const Int& hi = h.coeff(i);
        for (size_t r = 0; r < D; ++r) acc.at(r, r) += hi;
    }
    IntMat out(D, D);
    for (size_t r = 0; r < D; ++r)
        for (size_t c = 0; c < D; ++c) out.at(r, c) = -e * acc.at(r, c);
    return out;
}

// f(C) for a Laurent polynomial f, negative powers via Cinv.
IntMat eval_at_companion(const ZqPoly& f, const IntMat& C, const IntMat& Cinv) {
    size_t D = C.rows;
    IntMat acc(D, D);
    if (f.is_zero()) return acc;
    ZqPoly f0 = f.shifted(-std::min<long>(f.low(), 0));
    for (long i = f0.high(); i >= 0; --i) {
        acc = mat_mul(acc, C);
        const Int& fi = f0.coeff(i);
        for (size_t r = 0; r < D; ++r) acc.at(r, r) += fi;
    }
    for (long s = f.low(); s < 0; ++s) acc = mat_mul(acc, Cinv);
    return acc;
}

ModuleInvariants invariants_of_cokernel(const IntMat& A) {
    ModuleInvariants out;
    if (A.rows == 0) return out;
    if (A.cols == 0) {
        out.free_rank = A.rows;
        return out;
    }
    SmithForm sf = smith(A);
    out.free_rank = A.rows - sf.invariants.size();
    for (const Int& d : sf.invariants) {
        Int ad = abs(d);
        if (ad > 1) out.torsion.push_back(ad);
    }
    return out;
}

// Exact divisibility of Laurent polynomials, units q^k ignored.
bool poly_divides(const ZqPoly& g, const ZqPoly& f) {
    if (f.is_zero()) return true;
    ZqPoly h = degree_bound(g);
    auto [quot, rem] = f.shifted(-f.low()).divmod(h);
    (void)quot;
    return rem.is_zero();
}

}  // namespace

ModuleInvariants quotient_invariants(const LaurentPresentation& P, const ZqPoly& g) {
    for (const auto& rel : P.relations)
        if (rel.size() != P.gens)
            throw std::invalid_argument("relation length disagrees with generator count");
    ZqPoly h;
    try {
        h = degree_bound(g);
    } catch (const UnboundedDegree&) {
        // A unit modulus kills the whole ring; only genuinely unbounded cases rethrow.
        if (!g.is_zero() && g.shifted(-g.low()).high() < 1 &&
            (g.coeff(g.low()) == 1 || g.coeff(g.low()) == -1))
            return ModuleInvariants{};
        throw;
    }
    size_t D = static_cast<size_t>(h.high());
    IntMat C = companion(h);
    IntMat Cinv = companion_inverse(h, C);

    IntMat A(P.gens * D, P.relations.size() * D);
    for (size_t k = 0; k < P.relations.size(); ++k)
        for (size_t i = 0; i < P.gens; ++i) {
            IntMat B = eval_at_companion(P.relations[k][i], C, Cinv);
            for (size_t r = 0; r < D; ++r)
                for (size_t c = 0; c < D; ++c) A.at(i * D + r, k * D + c) = B.at(r, c);
        }
    return invariants_of_cokernel(A);
}

ModuleInvariants ladder_stage(const LaurentPresentation& P, unsigned long n) {
    return quotient_invariants(P, q_pochhammer(n));
}

LadderSystem localisation_ladder(unsigned long stages) {
    LadderSystem L;
    L.steps.reserve(stages);
    for (unsigned long w = 0; w < stages; ++w)
        L.steps.push_back(ZqPoly(Int(1)) - ZqPoly::monomial(Int(1), static_cast<long>(w) + 1));
    return L;
}

LadderVanishing ladder_vanishes_mod(const LadderSystem& L, const ZqPoly& g) {
    LadderVanishing out;
    ZqPoly acc(Int(1));
    for (size_t k = 0; k < L.steps.size(); ++k) {
        if (poly_divides(g, acc)) {
            out.vanishes = true;
            out.stages_used = k;
            return out;
        }
        acc = acc * L.steps[k];
    }
    if (poly_divides(g, acc)) {
        out.vanishes = true;
        out.stages_used = L.steps.size();
    }
    return out;
}

LadderVanishing ladder_stage_vanishes(const LadderSystem& L, unsigned long n) {
    return ladder_vanishes_mod(L, q_pochhammer(n));
}

NakayamaReport nakayama_probe(const LaurentPresentation& P,
                              const std::vector<unsigned long>& m_list) {
    NakayamaReport rep;
    unsigned long top = 0;
    for (unsigned long m : m_list) {
        if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
        rep.quotients.emplace_back(m, quotient_invariants(P, cyclotomic(m)));
        top = std::max(top, m);
    }
    for (unsigned long n = 1; n <= top; ++n) rep.ladder.emplace_back(n, ladder_stage(P, n));
    rep.trivial = !rep.quotients.empty();
    for (const auto& [m, inv] : rep.quotients)
        if (!inv.is_zero()) rep.trivial = false;
    for (const auto& [n, inv] : rep.ladder)
        if (!inv.is_zero()) rep.trivial = false;
    return rep;
}

NakayamaSystemReport nakayama_probe(const LadderSystem& L,
                                    const std::vector<unsigned long>& m_list) {
    NakayamaSystemReport rep;
    unsigned long top = 0;
    for (unsigned long m : m_list) {
        if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
        rep.quotients.emplace_back(m, ladder_vanishes_mod(L, cyclotomic(m)));
        top = std::max(top, m);
    }
    for (unsigned long n = 1; n <= top; ++n) rep.ladder.emplace_back(n, ladder_stage_vanishes(L, n));
    rep.trivial = !rep.quotients.empty();
    for (const auto& [m, v] : rep.quotients)
        if (!v.vanishes) rep.trivial = false;
    for (const auto& [n, v] : rep.ladder)
        if (!v.vanishes) rep.trivial = false;
    return rep;
}

namespace {

// Laplace expansion along the first row; the windows are tiny.
ZqPoly poly_det(const std::vector<std::vector<ZqPoly>>& M) {
    size_t n = M.size();
    if (n == 0) return ZqPoly(Int(1));
    if (n == 1) return M[0][0];
    ZqPoly det(Int(0));
    for (size_t c = 0; c < n; ++c) {
        if (M[0][c].is_zero()) continue;
        std::vector<std::vector<ZqPoly>> minor;
        minor.reserve(n - 1);
        for (size_t r = 1; r < n; ++r) {
            std::vector<ZqPoly> row;
            row.reserve(n - 1);
            for (size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(M[r][cc]);
            minor.push_back(std::move(row));
        }
        ZqPoly term = M[0][c] * poly_det(minor);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace

ResolutionReport resolution_window_check(unsigned long n_max) {
    if (n_max < 1 || n_max > 5)
        throw std::invalid_argument("window must cover between 1 and 5 stages");
    ResolutionReport rep;
    rep.n_max = n_max;

    std::vector<ZqPoly> poch;
    for (unsigned long i = 0; i <= n_max; ++i) poch.push_back(q_pochhammer(i));

    rep.ladder_factors = true;
    for (unsigned long i = 0; i < n_max; ++i) {
        ZqPoly step = ZqPoly(Int(1)) - ZqPoly::monomial(Int(1), static_cast<long>(i) + 1);
        if (poch[i + 1] != poch[i] * step) rep.ladder_factors = false;
    }

    // Numerator of 1/(q;q)_i over the common denominator (q;q)_{n_max}.
    std::vector<ZqPoly> numer;
    for (unsigned long i = 0; i <= n_max; ++i) numer.push_back(poch[n_max].divexact(poch[i]));

    /* First arrow on basis vector e_i: e_i - (1 - q^{i+1}) e_{i+1}.  Its
     * image under the second arrow telescopes; check the numerators cancel
     * for every i whose image stays inside the window. */
    rep.composite_zero = true;
    for (unsigned long i = 0; i < n_max; ++i) {
        ZqPoly step = ZqPoly(Int(1)) - ZqPoly::monomial(Int(1), static_cast<long>(i) + 1);
        if (!(numer[i] - step * numer[i + 1]).is_zero()) rep.composite_zero = false;
    }

    std::vector<std::vector<ZqPoly>> W(n_max + 1,
                                       std::vector<ZqPoly>(n_max + 1, ZqPoly(Int(0))));
    for (unsigned long i = 0; i <= n_max; ++i) {
        W[i][i] = ZqPoly(Int(1));
        if (i + 1 <= n_max)
            W[i + 1][i] = -(ZqPoly(Int(1)) - ZqPoly::monomial(Int(1), static_cast<long>(i) + 1));
    }
    rep.window_det = poly_det(W);
    rep.injective = rep.window_det == ZqPoly(Int(1));

    /* Solve sum_i a_i * numer[i] = 1 by back substitution: numer[n_max] = 1,
     * so the top slot alone carries the target. */
    rep.lift.assign(n_max + 1, ZqPoly(Int(0)));
    rep.lift[n_max] = ZqPoly(Int(1));
    ZqPoly check(Int(0));
    for (unsigned long i = 0; i <= n_max; ++i) check = check + rep.lift[i] * numer[i];
    rep.lift_found = check == ZqPoly(Int(1));

    return rep;
}

}  // namespace qcalc
