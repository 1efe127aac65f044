#include "qcalc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcalc {

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMat C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            const Int& aik = A.at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

std::vector<Int> mat_vec(const IntMat& A, const std::vector<Int>& x) {
    if (A.cols != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<Int> y(A.rows, Int(0));
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0) y[i] += A.at(i, j) * x[j];
    return y;
}

IntMat transpose(const IntMat& A) {
    IntMat T(A.cols, A.rows);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

IntMat hstack(const IntMat& A, const IntMat& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hstack: row mismatch");
    IntMat C(A.rows, A.cols + B.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (size_t j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

SmithForm smith(IntMat A) {
    const size_t r = A.rows, c = A.cols;
    SmithForm out;
    out.U = IntMat::identity(r);
    out.V = IntMat::identity(c);
    IntMat& U = out.U;
    IntMat& V = out.V;

    auto swap_rows = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < c; ++k) std::swap(A.at(i, k), A.at(j, k));
        for (size_t k = 0; k < r; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < r; ++k) std::swap(A.at(k, i), A.at(k, j));
        for (size_t k = 0; k < c; ++k) std::swap(V.at(k, i), V.at(k, j));
    };
    auto addmul_row = [&](size_t dst, size_t src, const Int& f) {
        if (f == 0) return;
        for (size_t k = 0; k < c; ++k) A.at(dst, k) += f * A.at(src, k);
        for (size_t k = 0; k < r; ++k) U.at(dst, k) += f * U.at(src, k);
    };
    auto addmul_col = [&](size_t dst, size_t src, const Int& f) {
        if (f == 0) return;
        for (size_t k = 0; k < r; ++k) A.at(k, dst) += f * A.at(k, src);
        for (size_t k = 0; k < c; ++k) V.at(k, dst) += f * V.at(k, src);
    };
    auto negate_row = [&](size_t i) {
        for (size_t k = 0; k < c; ++k) A.at(i, k) = -A.at(i, k);
        for (size_t k = 0; k < r; ++k) U.at(i, k) = -U.at(i, k);
    };

    size_t t = 0;
    while (t < r && t < c) {
        // least |entry| in the working block; ties by row, then column
        bool found = false;
        size_t pi = t, pj = t;
        Int best;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j) {
                const Int& v = A.at(i, j);
                if (v == 0) continue;
                Int av = v < 0 ? Int(-v) : v;
                if (!found || av < best) {
                    found = true;
                    best = av;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        if (A.at(t, t) < 0) negate_row(t);

        bool clean = true;
        for (size_t i = t + 1; i < r; ++i) {
            if (A.at(i, t) == 0) continue;
            Int qq;
            mpz_fdiv_q(qq.get_mpz_t(), A.at(i, t).get_mpz_t(), A.at(t, t).get_mpz_t());
            addmul_row(i, t, -qq);
            if (A.at(i, t) != 0) { clean = false; break; }
        }
        if (!clean) continue;  // strictly smaller remainder exists; repick pivot
        for (size_t j = t + 1; j < c; ++j) {
            if (A.at(t, j) == 0) continue;
            Int qq;
            mpz_fdiv_q(qq.get_mpz_t(), A.at(t, j).get_mpz_t(), A.at(t, t).get_mpz_t());
            addmul_col(j, t, -qq);
            if (A.at(t, j) != 0) { clean = false; break; }
        }
        if (!clean) continue;
        // pivot must divide the rest of the block for the invariant chain
        for (size_t i = t + 1; i < r && clean; ++i)
            for (size_t j = t + 1; j < c; ++j)
                if (!divides(A.at(t, t), A.at(i, j))) {
                    addmul_row(t, i, Int(1));
                    clean = false;
                    break;
                }
        if (!clean) continue;
        ++t;
    }

    out.D = std::move(A);
    for (size_t i = 0; i < std::min(r, c); ++i) {
        if (out.D.at(i, i) == 0) break;
        out.invariants.push_back(out.D.at(i, i));
    }
    out.rank = out.invariants.size();
    return out;
}

IntMat kernel_basis(const IntMat& A) {
    SmithForm s = smith(A);
    IntMat K(A.cols, A.cols - s.rank);
    for (size_t j = s.rank; j < A.cols; ++j)
        for (size_t i = 0; i < A.cols; ++i) K.at(i, j - s.rank) = s.V.at(i, j);
    return K;
}

namespace {

// Shared back-end: y solves D y = U b in the smith coordinates.
template <typename Scalar, typename DivideFn>
bool solve_via_smith(const IntMat& A, const std::vector<Int>& b, std::vector<Scalar>& x,
                     DivideFn divide) {
    if (A.rows != b.size()) throw std::invalid_argument("solve: shape mismatch");
    SmithForm s = smith(A);
    std::vector<Int> ub = mat_vec(s.U, b);
    std::vector<Scalar> y(A.cols, Scalar(0));
    for (size_t i = 0; i < A.rows; ++i) {
        if (i < s.rank) {
            if (!divide(ub[i], s.invariants[i], y[i])) return false;
        } else if (ub[i] != 0) {
            return false;
        }
    }
    x.assign(A.cols, Scalar(0));
    for (size_t i = 0; i < A.cols; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            if (s.V.at(i, j) != 0 && y[j] != 0) x[i] += Scalar(s.V.at(i, j)) * y[j];
    return true;
}

}  // namespace

bool solve_integral(const IntMat& A, const std::vector<Int>& b, std::vector<Int>& x) {
    return solve_via_smith<Int>(A, b, x, [](const Int& n, const Int& d, Int& out) {
        if (!divides(d, n)) return false;
        out = exact_div(n, d);
        return true;
    });
}

bool solve_rational(const IntMat& A, const std::vector<Int>& b, std::vector<Rat>& x) {
    return solve_via_smith<Rat>(A, b, x, [](const Int& n, const Int& d, Rat& out) {
        out = Rat(n, d);
        out.canonicalize();
        return true;
    });
}

size_t rank_rational(const IntMat& A) {
    std::vector<std::vector<Rat>> m(A.rows, std::vector<Rat>(A.cols, Rat(0)));
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) m[i][j] = Rat(A.at(i, j));
    size_t rank = 0;
    for (size_t col = 0; col < A.cols && rank < A.rows; ++col) {
        size_t piv = rank;
        while (piv < A.rows && m[piv][col] == 0) ++piv;
        if (piv == A.rows) continue;
        std::swap(m[rank], m[piv]);
        Rat inv = 1 / m[rank][col];
        for (size_t j = col; j < A.cols; ++j) m[rank][j] *= inv;
        for (size_t i = 0; i < A.rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = col; j < A.cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

Int det(const IntMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("det: square matrices only");
    const size_t n = A.rows;
    if (n == 0) return 1;
    IntMat M = A;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M.at(k, k) == 0) {
            size_t s = k + 1;
            while (s < n && M.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(s, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                M.at(i, j) = exact_div(M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j), prev);
        prev = M.at(k, k);
    }
    return sign > 0 ? M.at(n - 1, n - 1) : Int(-M.at(n - 1, n - 1));
}

namespace {

bool next_combination(std::vector<size_t>& idx, size_t n) {
    const size_t k = idx.size();
    for (size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<Int> invariant_factors_minors(const IntMat& A) {
    std::vector<Int> out;
    Int prev_divisor = 1;
    const size_t kmax = std::min(A.rows, A.cols);
    for (size_t k = 1; k <= kmax; ++k) {
        Int g = 0;
        std::vector<size_t> ri(k);
        for (size_t i = 0; i < k; ++i) ri[i] = i;
        do {
            std::vector<size_t> ci(k);
            for (size_t i = 0; i < k; ++i) ci[i] = i;
            do {
                IntMat sub(k, k);
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j) sub.at(i, j) = A.at(ri[i], ci[j]);
                Int d = det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            } while (next_combination(ci, A.cols));
        } while (next_combination(ri, A.rows));
        if (g == 0) break;
        out.push_back(exact_div(g, prev_divisor));
        prev_divisor = g;
    }
    return out;
}

SpanSolver::SpanSolver(IntMat A) : rows_(A.rows), cols_(A.cols) { s_ = smith(std::move(A)); }

bool SpanSolver::solve(const std::vector<Int>& b, std::vector<Int>& x) const {
    if (b.size() != rows_) throw std::invalid_argument("SpanSolver: shape mismatch");
    std::vector<Int> ub = mat_vec(s_.U, b);
    std::vector<Int> y(cols_, Int(0));
    for (size_t i = 0; i < rows_; ++i) {
        if (i < s_.rank) {
            if (!divides(s_.invariants[i], ub[i])) return false;
            y[i] = exact_div(ub[i], s_.invariants[i]);
        } else if (ub[i] != 0) {
            return false;
        }
    }
    x.assign(cols_, Int(0));
    for (size_t i = 0; i < cols_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (s_.V.at(i, j) != 0 && y[j] != 0) x[i] += s_.V.at(i, j) * y[j];
    return true;
}

bool SpanSolver::contains(const std::vector<Int>& b) const {
    std::vector<Int> x;
    return solve(b, x);
}

}  // namespace qcalc
