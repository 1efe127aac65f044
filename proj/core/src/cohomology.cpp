#include "qcalc/cohomology.hpp"

#include <cassert>
#include <stdexcept>

#include "qcalc/errors.hpp"
#include "qcalc/parallel.hpp"

namespace qcalc {

namespace {

// X = A^{-1} for unimodular A, by integral solves against the identity.
IntMat inverse_unimodular(const IntMat& A) {
    assert(A.rows == A.cols);
    IntMat X(A.rows, A.cols);
    for (size_t c = 0; c < A.cols; ++c) {
        std::vector<Int> e(A.rows, Int(0)), x;
        e[c] = 1;
        if (!solve_integral(A, e, x)) throw std::logic_error("matrix not unimodular");
        for (size_t r = 0; r < A.rows; ++r) X.at(r, c) = x[r];
    }
    return X;
}

}  // namespace

CompanionRing::CompanionRing(unsigned long m, unsigned long power) : m_(m), power_(power) {
    if (m == 0 || power == 0) throw std::invalid_argument("companion ring needs m, power >= 1");
    dim_ = m * power;
    q_ = IntMat(dim_, dim_);
    for (size_t i = 0; i + 1 < dim_; ++i) q_.at(i + 1, i) = 1;
    // q^{m*power} = sum_{j < power} binom(power, j) (-1)^{power-j+1} q^{m j}
    for (unsigned long j = 0; j < power_; ++j) {
        Int c = binomial(power_, j);
        if ((power_ - j + 1) % 2 == 1) c = -c;
        q_.at(m_ * j, dim_ - 1) = c;
    }
    q_inv_ = inverse_unimodular(q_);  // constant coefficient of (q^m-1)^power is a unit
}

IntMat CompanionRing::poly_matrix(const ZqPoly& s) const {
    IntMat M(dim_, dim_);
    if (s.is_zero()) return M;
    for (long k = s.high(); k >= s.low(); --k) {
        M = mat_mul(q_, M);
        const Int& c = s.coeff(k);
        if (c != 0)
            for (size_t i = 0; i < dim_; ++i) M.at(i, i) += c;
    }
    long e = s.low();
    const IntMat& step = e >= 0 ? q_ : q_inv_;
    for (long t = 0; t < (e >= 0 ? e : -e); ++t) M = mat_mul(step, M);
    return M;
}

std::vector<Int> CompanionRing::reduce(const ZqPoly& s) const {
    std::vector<Int> v(dim_, Int(0));
    if (s.is_zero()) return v;
    for (long k = s.high(); k >= s.low(); --k) {
        v = mat_vec(q_, v);
        v[0] += s.coeff(k);
    }
    long e = s.low();
    const IntMat& step = e >= 0 ? q_ : q_inv_;
    for (long t = 0; t < (e >= 0 ? e : -e); ++t) v = mat_vec(step, v);
    return v;
}

ZqPoly CompanionRing::unreduce(const std::vector<Int>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("coordinate length mismatch");
    return ZqPoly::from_coeffs(0, v);
}

IntMat koszul_differential(const CompanionRing& R, const std::vector<ZqPoly>& scalars,
                           unsigned j) {
    unsigned n = static_cast<unsigned>(scalars.size());
    std::vector<unsigned> from = koszul_subsets(n, j), to = koszul_subsets(n, j + 1);
    size_t D = R.dim();
    std::vector<size_t> row_of(1u << n, 0);
    for (size_t r = 0; r < to.size(); ++r) row_of[to[r]] = r;
    std::vector<IntMat> smat;
    smat.reserve(n);
    for (const ZqPoly& s : scalars) smat.push_back(R.poly_matrix(s));
    IntMat d(to.size() * D, from.size() * D);
    for (size_t c = 0; c < from.size(); ++c) {
        unsigned S = from[c];
        for (unsigned i = 0; i < n; ++i) {
            if ((S >> i) & 1u) continue;
            size_t r = row_of[S | (1u << i)];
            int sg = koszul_sign(S, i);
            for (size_t x = 0; x < D; ++x)
                for (size_t y = 0; y < D; ++y) {
                    const Int& v = smat[i].at(x, y);
                    if (v != 0) d.at(r * D + x, c * D + y) = sg > 0 ? v : Int(-v);
                }
        }
    }
    return d;
}

HBasis::HBasis(const IntMat& d_out, const IntMat& d_in) {
    size_t N = d_out.cols;
    ker_ = d_out.rows == 0 ? IntMat::identity(N) : kernel_basis(d_out);
    size_t r = ker_.cols;
    ker_solver_.emplace(ker_);

    // relations = boundary columns in kernel coordinates
    IntMat Y(r, d_in.cols);
    for (size_t c = 0; c < d_in.cols; ++c) {
        std::vector<Int> b(N), x;
        for (size_t i = 0; i < N; ++i) b[i] = d_in.at(i, c);
        if (!ker_solver_->solve(b, x))
            throw std::logic_error("boundary column escapes the kernel");
        for (size_t i = 0; i < r; ++i) Y.at(i, c) = x[i];
    }

    invariants_.assign(r, Int(0));
    if (r == 0 || d_in.cols == 0) {
        u_ = IntMat::identity(r);
        u_inv_ = u_;
    } else {
        SmithForm sf = smith(Y);
        u_ = sf.U;
        u_inv_ = inverse_unimodular(u_);
        for (size_t i = 0; i < sf.rank; ++i) invariants_[i] = sf.invariants[i];
    }

    for (size_t i = 0; i < r; ++i) {
        if (invariants_[i] == 1) continue;
        keep_.push_back(i);
        std::vector<Int> col(r), rep;
        for (size_t t = 0; t < r; ++t) col[t] = u_inv_.at(t, i);
        rep = mat_vec(ker_, col);
        int sg = 1;
        for (const Int& v : rep)
            if (v != 0) {
                sg = v > 0 ? 1 : -1;
                break;
            }
        sign_.push_back(sg);
        if (invariants_[i] == 0) {
            orders_.push_back(Int(0));
            ++free_rank_;
        } else {
            orders_.push_back(invariants_[i]);
            torsion_.push_back(invariants_[i]);
        }
    }
}

std::vector<Int> HBasis::class_rep(size_t i) const {
    size_t idx = keep_.at(i);
    std::vector<Int> col(u_inv_.rows);
    for (size_t t = 0; t < u_inv_.rows; ++t) col[t] = u_inv_.at(t, idx);
    std::vector<Int> rep = mat_vec(ker_, col);
    if (sign_[i] < 0)
        for (Int& v : rep) v = -v;
    return rep;
}

std::vector<Int> HBasis::coords(const std::vector<Int>& cycle) const {
    std::vector<Int> x;
    if (!ker_solver_->solve(cycle, x)) throw std::logic_error("coords of a non-cycle");
    std::vector<Int> h = mat_vec(u_, x), out;
    out.reserve(keep_.size());
    for (size_t t = 0; t < keep_.size(); ++t) {
        Int v = sign_[t] > 0 ? h[keep_[t]] : Int(-h[keep_[t]]);
        if (orders_[t] > 1) v = mod_floor(v, orders_[t]);
        out.push_back(v);
    }
    return out;
}

IntMat HBasis::induced_map(const HBasis& src, const HBasis& dst, const IntMat& op) {
    IntMat M(dst.classes(), src.classes());
    for (size_t j = 0; j < src.classes(); ++j) {
        std::vector<Int> c = dst.coords(mat_vec(op, src.class_rep(j)));
        for (size_t i = 0; i < dst.classes(); ++i) M.at(i, j) = c[i];
    }
    return M;
}

bool HBasis::maps_equal(const IntMat& a, const IntMat& b) const {
    if (a.rows != classes() || b.rows != classes() || a.cols != b.cols) return false;
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) {
            Int diff = a.at(i, j) - b.at(i, j);
            if (orders_[i] > 1 ? mod_floor(diff, orders_[i]) != 0 : diff != 0) return false;
        }
    return true;
}

const CohomEntry& CohomologyTable::at(const std::vector<long>& a, unsigned j) const {
    auto it = entries.find({a, j});
    if (it == entries.end()) throw std::out_of_range("no cohomology entry at that multidegree");
    return it->second;
}

namespace {

struct ChainData {
    std::vector<IntMat> d;  // d[j]: degree j -> j+1, j = 0..n (d[n] has no rows)
    std::vector<HBasis> H;  // H[j] for j = 0..n
};

ChainData chain_data(const CompanionRing& R, const std::vector<ZqPoly>& scalars) {
    unsigned n = static_cast<unsigned>(scalars.size());
    ChainData cd;
    cd.d.reserve(n + 1);
    for (unsigned j = 0; j <= n; ++j) cd.d.push_back(koszul_differential(R, scalars, j));
    cd.H.reserve(n + 1);
    for (unsigned j = 0; j <= n; ++j)
        cd.H.emplace_back(cd.d[j], j == 0 ? IntMat(cd.d[0].cols, 0) : cd.d[j - 1]);
    return cd;
}

IntMat block_diag(const IntMat& B, size_t copies) {
    IntMat M(B.rows * copies, B.cols * copies);
    for (size_t b = 0; b < copies; ++b)
        for (size_t i = 0; i < B.rows; ++i)
            for (size_t j = 0; j < B.cols; ++j) M.at(b * B.rows + i, b * B.cols + j) = B.at(i, j);
    return M;
}

/* Connecting maps of 0 -> C/g -> C/g^2 -> C/g -> 0 with g = (q^m-1)^power.
 * A class z lifts coordinate-wise (the first g-dim coordinates of the square
 * ring), its square-ring boundary lands in ker(pi) = g * C/g, and dividing by
 * g is the coordinate shift used below.  beta[j] maps H^j -> H^{j+1}. */
std::vector<IntMat> bockstein_maps(const CompanionRing& R, const std::vector<ZqPoly>& scalars,
                                   const ChainData& cd) {
    unsigned n = static_cast<unsigned>(scalars.size());
    CompanionRing R2(R.m(), 2 * R.power());
    size_t D = R.dim();
    std::vector<IntMat> beta;
    beta.reserve(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        IntMat d2 = koszul_differential(R2, scalars, j);
        const HBasis& src = cd.H[j];
        size_t tgt_classes = j + 1 <= n ? cd.H[j + 1].classes() : 0;
        IntMat B(tgt_classes, src.classes());
        for (size_t c = 0; c < src.classes(); ++c) {
            std::vector<Int> z = src.class_rep(c);
            std::vector<Int> w(2 * z.size(), Int(0));
            for (size_t b = 0; b * D < z.size(); ++b)
                for (size_t t = 0; t < D; ++t) w[b * 2 * D + t] = z[b * D + t];
            std::vector<Int> dz = mat_vec(d2, w);
            std::vector<Int> v(dz.size() / 2);
            for (size_t b = 0; 2 * b * D < dz.size(); ++b)
                for (size_t t = 0; t < D; ++t) {
                    assert(dz[b * 2 * D + t] == -dz[b * 2 * D + D + t]);
                    v[b * D + t] = dz[b * 2 * D + D + t];
                }
            if (j + 1 > n) continue;  // top degree: target is zero
            std::vector<Int> coords = cd.H[j + 1].coords(v);
            for (size_t i = 0; i < tgt_classes; ++i) B.at(i, c) = coords[i];
        }
        beta.push_back(B);
    }
    return beta;
}

struct TableBuild {
    CohomologyTable table;
    std::vector<std::vector<long>> degs;
    std::vector<ChainData> chains;
    std::vector<std::vector<IntMat>> betas;
};

TableBuild build_table(const QKoszul& K, unsigned long m, unsigned long power,
                       bool with_bockstein) {
    CompanionRing R(m, power);
    unsigned n = K.spec().n;
    TableBuild tb;
    tb.table.m = m;
    tb.table.power = power;
    tb.degs = K.spec().multidegrees();
    tb.chains.resize(tb.degs.size());
    if (with_bockstein) tb.betas.resize(tb.degs.size());

    parallel_index(tb.degs.size(), [&](size_t idx) {
        std::vector<ZqPoly> s = K.scalars(tb.degs[idx]);
        tb.chains[idx] = chain_data(R, s);
        if (with_bockstein) tb.betas[idx] = bockstein_maps(R, s, tb.chains[idx]);
    });

    std::vector<IntMat> qfull;
    for (unsigned j = 0; j <= n; ++j)
        qfull.push_back(block_diag(R.mul_q(), koszul_subsets(n, j).size()));

    bool beta_sq = true;
    for (size_t idx = 0; idx < tb.degs.size(); ++idx) {
        const ChainData& cd = tb.chains[idx];
        for (unsigned j = 0; j <= n; ++j) {
            CohomEntry e;
            e.free_rank = cd.H[j].free_rank();
            e.torsion = cd.H[j].torsion();
            e.q_action = HBasis::induced_map(cd.H[j], cd.H[j], qfull[j]);
            if (with_bockstein) {
                e.bockstein = tb.betas[idx][j];
                if (j + 2 <= n) {
                    IntMat prod = mat_mul(tb.betas[idx][j + 1], tb.betas[idx][j]);
                    IntMat zero(prod.rows, prod.cols);
                    if (!cd.H[j + 2].maps_equal(prod, zero)) beta_sq = false;
                }
            }
            tb.table.entries[{tb.degs[idx], j}] = std::move(e);
        }
    }
    tb.table.bockstein_square_zero = beta_sq;
    return tb;
}

}  // namespace

CohomologyTable cohomology_mod(const QKoszul& K, unsigned long m, unsigned long power) {
    return build_table(K, m, power, false).table;
}

CohomologyTable bockstein(const QKoszul& K, unsigned long m) {
    return build_table(K, m, 1, true).table;
}

TransitionReport frobenius_transition(const QKoszul& K, unsigned long m, unsigned long d) {
    if (m == 0 || d == 0 || m % d != 0)
        throw NotADivisor("not-a-divisor: transition needs d | m");
    TableBuild src = build_table(K, m, 1, true);
    TableBuild dst = build_table(K, d, 1, true);
    unsigned n = K.spec().n;

    // reduction Z[q]/(q^m-1) -> Z[q]/(q^d-1): q^t -> q^{t mod d}
    IntMat P(d, m);
    for (unsigned long t = 0; t < m; ++t) P.at(t % d, t) += 1;

    TransitionReport rep;
    rep.m = m;
    rep.d = d;
    rep.intertwines_bockstein = true;
    Int factor(static_cast<long>(m / d));
    for (size_t idx = 0; idx < src.degs.size(); ++idx) {
        const ChainData& cs = src.chains[idx];
        const ChainData& cd = dst.chains[idx];
        std::vector<IntMat> F;
        for (unsigned j = 0; j <= n; ++j) {
            IntMat Pfull = block_diag(P, koszul_subsets(n, j).size());
            F.push_back(HBasis::induced_map(cs.H[j], cd.H[j], Pfull));
            rep.maps[{src.degs[idx], j}] = F.back();
        }
        for (unsigned j = 0; j + 1 <= n; ++j) {
            IntMat left = mat_mul(dst.betas[idx][j], F[j]);
            IntMat right = mat_mul(F[j + 1], src.betas[idx][j]);
            for (Int& v : right.a) v *= factor;
            if (!cd.H[j + 1].maps_equal(left, right)) rep.intertwines_bockstein = false;
        }
    }
    rep.source = std::move(src.table);
    rep.target = std::move(dst.table);
    return rep;
}

}  // namespace qcalc
