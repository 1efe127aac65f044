#include "qcalc/decalage.hpp"

#include <cassert>
#include <stdexcept>

#include "qcalc/cohomology.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/parallel.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

namespace {

const ZqPoly& q_minus_one() {
    static const ZqPoly f = ZqPoly::from_coeffs(0, {Int(-1), Int(1)});
    return f;
}

// Exact division by q-1 for Laurent dividends: shift to a polynomial first.
ZqPoly divide_q_minus_one(const ZqPoly& s) {
    if (s.is_zero()) return s;
    if (s.low() >= 0) return s.divexact(q_minus_one());
    return s.shifted(-s.low()).divexact(q_minus_one()).shifted(s.low());
}

}  // namespace

QKoszul decalage(const QKoszul& K) {
    if (K.base().truncated)
        throw TorsionAmbient("torsion-ambient: decalage needs a torsion-free base");
    for (const std::vector<long>& a : K.spec().multidegrees())
        for (unsigned i = 0; i < K.spec().n; ++i) {
            ZqPoly divided = divide_q_minus_one(K.scalar(a, i));
            if (divided != q_integer(a[i]))
                throw std::logic_error("divided scalar disagrees with its q-integer");
        }
    return QKoszul(K.spec(), Flavor::qdeRham, K.base());
}

bool FilteredQComplex::shift_lands_in(const FilteredQComplex& next) const {
    if (next.level != level + 1) return false;
    for (unsigned j = 0; j <= K.spec().n; ++j)
        if (multiplier(j) + 1 < next.multiplier(j)) return false;
    return true;
}

FilteredQComplex filtered_complex(const QKoszul& K, unsigned level) {
    if (K.flavor() != Flavor::qdeRham)
        throw std::invalid_argument("filtration is defined on the qdeRham flavor");
    if (!K.base().truncated || K.base().m != 1)
        throw std::invalid_argument("filtration needs a (q-1)-truncated base");
    if (K.base().power <= level + K.spec().n)
        throw InsufficientTruncation(
            "insufficient-truncation: base length must exceed level + variable count");
    return FilteredQComplex{K, level};
}

namespace {

/* Expansion of a base-ring element in powers of q-1: columns of P are the
 * q-power coordinates of (q-1)^t, and adic coordinates are P^{-1} * v.  P is
 * unitriangular, so the inverse is integral. */
struct AdicBasis {
    CompanionRing R;
    IntMat P, P_inv;

    explicit AdicBasis(unsigned long L) : R(1, L), P(L, L), P_inv(L, L) {
        ZqPoly pw(1);
        for (unsigned long t = 0; t < L; ++t) {
            std::vector<Int> col = R.reduce(pw);
            for (unsigned long r = 0; r < L; ++r) P.at(r, t) = col[r];
            pw *= ZqPoly::from_coeffs(0, {Int(-1), Int(1)});
        }
        for (unsigned long c = 0; c < L; ++c) {
            std::vector<Int> e(L, Int(0)), x;
            e[c] = 1;
            bool ok = solve_integral(P, e, x);
            assert(ok);
            (void)ok;
            for (unsigned long r = 0; r < L; ++r) P_inv.at(r, c) = x[r];
        }
    }
};

/* The graded piece of fil at one multidegree, presented by integer matrices:
 * an element of gr_j is a Z-vector over the Koszul blocks of degree j,
 * standing for (q-1)^{c_j} times that vector.  d_gr applies the full
 * differential to the lift and extracts the (q-1)-adic coefficient at the
 * target exponent; coefficients below it must vanish (d preserves fil). */
struct GrPiece {
    std::vector<size_t> dim;    // per degree j = 0..n+1
    std::vector<IntMat> d_gr;   // d_gr[j]: j -> j+1
};

GrPiece graded_piece(const AdicBasis& adic, const std::vector<ZqPoly>& scalars,
                     unsigned level) {
    unsigned n = static_cast<unsigned>(scalars.size());
    unsigned long L = adic.R.dim();
    GrPiece gr;
    auto exponent = [&](unsigned j) -> unsigned { return level > j ? level - j : 0; };
    auto blocks = [&](unsigned j) -> size_t { return j <= n ? koszul_subsets(n, j).size() : 0; };
    for (unsigned j = 0; j <= n + 1; ++j) gr.dim.push_back(j <= level ? blocks(j) : 0);

    for (unsigned j = 0; j <= n; ++j) {
        IntMat D(gr.dim[j + 1], gr.dim[j]);
        if (D.rows > 0 && D.cols > 0) {
            IntMat full = koszul_differential(adic.R, scalars, j);
            std::vector<Int> lift_unit =
                adic.R.reduce(ZqPoly::from_coeffs(0, {Int(-1), Int(1)}).pow(exponent(j)));
            for (size_t b = 0; b < D.cols; ++b) {
                std::vector<Int> lift(full.cols, Int(0));
                for (unsigned long t = 0; t < L; ++t) lift[b * L + t] = lift_unit[t];
                std::vector<Int> u = mat_vec(full, lift);
                for (size_t bb = 0; bb < D.rows; ++bb) {
                    std::vector<Int> block(L), a;
                    for (unsigned long t = 0; t < L; ++t) block[t] = u[bb * L + t];
                    a = mat_vec(adic.P_inv, block);
                    for (unsigned c = 0; c < exponent(j + 1); ++c)
                        if (a[c] != 0)
                            throw std::logic_error("differential escapes the filtration");
                    D.at(bb, b) = a[exponent(j + 1)];
                }
            }
        }
        gr.d_gr.push_back(std::move(D));
    }
    return gr;
}

// Multiplication by q-1 as a map gr^{level-1} -> gr^{level}, degree by degree.
std::vector<IntMat> comparison_map(const AdicBasis& adic, const GrPiece& lo, const GrPiece& hi,
                                   unsigned level, unsigned n) {
    unsigned long L = adic.R.dim();
    std::vector<IntMat> tau;
    for (unsigned j = 0; j <= n + 1; ++j) {
        IntMat T(hi.dim[j], lo.dim[j]);
        if (T.rows > 0 && T.cols > 0) {
            unsigned lo_exp = level - 1 > j ? level - 1 - j : 0;
            unsigned hi_exp = level > j ? level - j : 0;
            std::vector<Int> shifted =
                adic.R.reduce(ZqPoly::from_coeffs(0, {Int(-1), Int(1)}).pow(lo_exp + 1));
            std::vector<Int> a = mat_vec(adic.P_inv, shifted);
            for (unsigned c = 0; c < hi_exp; ++c)
                if (a[c] != 0) throw std::logic_error("comparison map escapes the filtration");
            for (size_t b = 0; b < T.cols && b < T.rows; ++b) T.at(b, b) = a[hi_exp];
        }
        tau.push_back(std::move(T));
    }
    return tau;
}

}  // namespace

FiltrationReport qhodge_filtration(const QKoszul& K, unsigned level) {
    FilteredQComplex fil = filtered_complex(K, level);
    (void)fil;
    unsigned n = K.spec().n;
    AdicBasis adic(K.base().power);

    std::vector<std::vector<long>> degs = K.spec().multidegrees();
    std::vector<std::vector<GrSummary>> results(degs.size());
    std::vector<char> edge_clear(degs.size(), 1);

    parallel_index(degs.size(), [&](size_t idx) {
        std::vector<ZqPoly> s = K.scalars(degs[idx]);
        GrPiece B = graded_piece(adic, s, level);
        GrPiece A = level > 0 ? graded_piece(adic, s, level - 1)
                              : GrPiece{std::vector<size_t>(n + 2, 0),
                                        std::vector<IntMat>(n + 1)};
        std::vector<IntMat> tau = level > 0
                                      ? comparison_map(adic, A, B, level, n)
                                      : std::vector<IntMat>(n + 2);

        /* cone of tau: V^j = A^{j+1} (+) B^j, D = [[-dA, 0], [tau, dB]];
         * its cohomology is the graded piece corrected by the level below.
         * The cone starts in degree -1 with A^0 alone. */
        auto vdim = [&](unsigned j) -> size_t {
            return (j + 1 <= n + 1 ? A.dim[j + 1] : 0) + B.dim[j];
        };
        IntMat Dm1(vdim(0), A.dim[0]);
        if (A.dim[0] > 0) {
            for (size_t r = 0; r < A.dim[1]; ++r)
                for (size_t c = 0; c < A.dim[0]; ++c) Dm1.at(r, c) = -A.d_gr[0].at(r, c);
            for (size_t r = 0; r < B.dim[0]; ++r)
                for (size_t c = 0; c < A.dim[0]; ++c)
                    Dm1.at(A.dim[1] + r, c) = tau[0].at(r, c);
        }
        std::vector<IntMat> D;
        for (unsigned j = 0; j <= n; ++j) {
            size_t a_rows = j + 2 <= n + 1 ? A.dim[j + 2] : 0;
            IntMat M(vdim(j + 1), vdim(j));
            size_t a_cols = A.dim[j + 1];
            if (a_rows > 0 && a_cols > 0)  // -dA on the shifted copy
                for (size_t r = 0; r < a_rows; ++r)
                    for (size_t c = 0; c < a_cols; ++c) M.at(r, c) = -A.d_gr[j + 1].at(r, c);
            if (a_cols > 0 && B.dim[j + 1] > 0)
                for (size_t r = 0; r < B.dim[j + 1]; ++r)
                    for (size_t c = 0; c < a_cols; ++c)
                        M.at(a_rows + r, c) = tau[j + 1].at(r, c);
            if (B.dim[j] > 0 && B.dim[j + 1] > 0)
                for (size_t r = 0; r < B.dim[j + 1]; ++r)
                    for (size_t c = 0; c < B.dim[j]; ++c)
                        M.at(a_rows + r, a_cols + c) = B.d_gr[j].at(r, c);
            D.push_back(std::move(M));
        }
        // top degree map out of V^{n+1}
        D.push_back(IntMat(0, vdim(n + 1)));

        // nothing may survive in degree -1: tau is injective below the level
        HBasis edge(Dm1, IntMat(Dm1.cols, 0));
        edge_clear[idx] = edge.free_rank() == 0 && edge.torsion().empty();

        std::vector<GrSummary> col;
        for (unsigned j = 0; j <= n + 1; ++j) {
            HBasis H(D[j], j == 0 ? Dm1 : D[j - 1]);
            col.push_back(GrSummary{H.free_rank(), H.torsion()});
        }
        results[idx] = std::move(col);
    });

    FiltrationReport rep;
    rep.level = level;
    rep.concentrated = true;
    rep.matches_forms = true;
    Int expected = level <= n ? binomial(n, level) : Int(0);
    for (size_t idx = 0; idx < degs.size(); ++idx) {
        if (!edge_clear[idx]) rep.concentrated = false;
        for (unsigned j = 0; j <= n + 1; ++j) {
            const GrSummary& g = results[idx][j];
            rep.graded[{degs[idx], j}] = g;
            if (j != level && (g.free_rank != 0 || !g.torsion.empty()))
                rep.concentrated = false;
            if (j == level && (Int(static_cast<long>(g.free_rank)) != expected ||
                               !g.torsion.empty()))
                rep.matches_forms = false;
        }
    }
    return rep;
}

}  // namespace qcalc
