#pragma once
/* Brute-force rank-one cohomology oracle, kept deliberately independent of
 * the library: its own polynomial reduction mod (q^m-1)^power, its own
 * multiplication matrices, and its own Smith reduction with the dumbest
 * possible pivot strategy.  Only for n = 1, where the complex is a single
 * square matrix. */
#include <algorithm>
#include <vector>

#include "qcalc/integer.hpp"
#include "qcalc/linalg.hpp"  // only for the IntMat container

namespace naive {

using qcalc::Int;
using qcalc::IntMat;

// coefficients of (q^m-1)^power, degree 0 upward
inline std::vector<Int> relation_poly(unsigned long m, unsigned long power) {
    std::vector<Int> r(m * power + 1, Int(0));
    for (unsigned long j = 0; j <= power; ++j) {
        Int c = qcalc::binomial(power, j);
        if ((power - j) % 2 == 1) c = -c;
        r[m * j] = c;
    }
    return r;
}

// reduce a plain polynomial mod (q^m-1)^power to degree < m*power
inline std::vector<Int> reduce_poly(std::vector<Int> a, unsigned long m, unsigned long power) {
    std::vector<Int> rel = relation_poly(m, power);
    size_t d = m * power;
    if (a.size() < d) a.resize(d, Int(0));
    for (size_t deg = a.size(); deg-- > d;) {
        Int c = a[deg];
        if (c == 0) continue;
        // q^deg == q^deg - c' * relation shifted to kill the top term
        for (size_t t = 0; t <= d; ++t) a[deg - d + t] -= c * rel[t];
    }
    a.resize(d);
    return a;
}

/* Inverse of q mod (q^m-1)^power in closed form: q^m = 1 + u with u
 * nilpotent, so 1/q^m = sum_{t<power} (1-q^m)^t and q^{-1} = q^{m-1}/q^m. */
inline std::vector<Int> q_inverse(unsigned long m, unsigned long power) {
    std::vector<Int> sum(m * (power - 1) + 1, Int(0));
    for (unsigned long t = 0; t < power; ++t)
        for (unsigned long j = 0; j <= t; ++j) {
            Int c = qcalc::binomial(t, j);
            sum[m * j] += j % 2 == 0 ? c : -c;
        }
    std::vector<Int> out(sum.size() + m - 1, Int(0));
    for (size_t i = 0; i < sum.size(); ++i) out[i + m - 1] = sum[i];
    return reduce_poly(std::move(out), m, power);
}

inline std::vector<Int> mul_mod(const std::vector<Int>& a, const std::vector<Int>& b,
                                unsigned long m, unsigned long power) {
    std::vector<Int> c(a.size() + b.size(), Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return reduce_poly(std::move(c), m, power);
}

inline std::vector<Int> scalar_poly(long k, unsigned long m, unsigned long power) {
    if (k >= 0) {
        std::vector<Int> s(static_cast<size_t>(k), Int(1));  // 1 + q + ... + q^{k-1}
        return reduce_poly(std::move(s), m, power);
    }
    std::vector<Int> pos = scalar_poly(-k, m, power);
    for (Int& v : pos) v = -v;  // -[(-k)]_q
    std::vector<Int> qinv = q_inverse(m, power);
    std::vector<Int> out = pos;
    for (long t = 0; t < -k; ++t) out = mul_mod(out, qinv, m, power);
    return out;
}

// multiplication-by-s matrix on the q-power basis
inline IntMat scalar_matrix(long k, unsigned long m, unsigned long power) {
    size_t d = m * power;
    std::vector<Int> s = scalar_poly(k, m, power);
    IntMat M(d, d);
    for (size_t t = 0; t < d; ++t) {
        std::vector<Int> col(t + 1, Int(0));
        col[t] = 1;
        col = mul_mod(col, s, m, power);
        for (size_t r = 0; r < d; ++r) M.at(r, t) = col[r];
    }
    return M;
}

/* Smith invariant factors the slow way: pivot always at (0,0) of the working
 * block after swapping in a least-|entry| candidate, Euclidean row and column
 * reduction, full restart whenever a divisibility violation shows up. */
inline std::vector<Int> naive_invariants(IntMat A) {
    size_t n = std::min(A.rows, A.cols);
    std::vector<Int> inv;
    for (size_t k = 0; k < n; ++k) {
        bool reduced = false;
        while (!reduced) {
            // swap a least-|entry| nonzero into (k, k)
            size_t bi = A.rows, bj = A.cols;
            for (size_t i = k; i < A.rows; ++i)
                for (size_t j = k; j < A.cols; ++j) {
                    if (A.at(i, j) == 0) continue;
                    if (bi == A.rows || abs(A.at(i, j)) < abs(A.at(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == A.rows) return inv;  // block is zero: done
            for (size_t j = 0; j < A.cols; ++j) std::swap(A.at(k, j), A.at(bi, j));
            for (size_t i = 0; i < A.rows; ++i) std::swap(A.at(i, k), A.at(i, bj));
            reduced = true;
            for (size_t i = k + 1; i < A.rows && reduced; ++i) {
                Int f = A.at(i, k) / A.at(k, k);
                for (size_t j = 0; j < A.cols; ++j) A.at(i, j) -= f * A.at(k, j);
                if (A.at(i, k) != 0) reduced = false;  // remainder: pick a new pivot
            }
            for (size_t j = k + 1; j < A.cols && reduced; ++j) {
                Int f = A.at(k, j) / A.at(k, k);
                for (size_t i = 0; i < A.rows; ++i) A.at(i, j) -= f * A.at(i, k);
                if (A.at(k, j) != 0) reduced = false;
            }
        }
        // divisibility fix: fold an offending column in and redo this pivot
        bool ok = true;
        for (size_t i = k + 1; i < A.rows && ok; ++i)
            for (size_t j = k + 1; j < A.cols && ok; ++j)
                if (A.at(i, j) % A.at(k, k) != 0) {
                    for (size_t r = 0; r < A.rows; ++r) A.at(r, k) += A.at(r, j);
                    ok = false;
                }
        if (!ok) {
            --k;
            continue;
        }
        inv.push_back(abs(A.at(k, k)));
    }
    return inv;
}

struct RankOneAnswer {
    unsigned long h0_free = 0;
    std::vector<Int> h0_torsion;  // always empty: subgroup of a free group
    unsigned long h1_free = 0;
    std::vector<Int> h1_torsion;
};

inline RankOneAnswer rank_one_cohomology(long k, unsigned long m, unsigned long power) {
    size_t d = m * power;
    IntMat S = scalar_matrix(k, m, power);
    std::vector<Int> inv = naive_invariants(S);
    RankOneAnswer ans;
    ans.h0_free = d - inv.size();                // kernel rank
    ans.h1_free = d - inv.size();                // cokernel free part
    for (const Int& v : inv)
        if (v > 1) ans.h1_torsion.push_back(v);  // cokernel torsion
    return ans;
}

}  // namespace naive
