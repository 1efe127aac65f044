#pragma once
#include <cstddef>
#include <vector>

#include "qcalc/integer.hpp"

namespace qcalc {

// Dense row-major integer matrix.
struct IntMat {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }
    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    static IntMat identity(size_t n);
};

IntMat mat_mul(const IntMat& A, const IntMat& B);
std::vector<Int> mat_vec(const IntMat& A, const std::vector<Int>& x);
IntMat transpose(const IntMat& A);
IntMat hstack(const IntMat& A, const IntMat& B);

/* U A V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
 * invariants holds the positive diagonal entries (the nonzero invariant
 * factors); rank is their count. */
struct SmithForm {
    IntMat D, U, V;
    size_t rank = 0;
    std::vector<Int> invariants;
};

// Deterministic: pivot is the least |entry| in the working block, ties broken
// by row then column index.
SmithForm smith(IntMat A);

// Columns form a basis of ker(A) as a direct summand of Z^cols.
IntMat kernel_basis(const IntMat& A);

// Solve A x = b over Z; false when no integral solution exists.
bool solve_integral(const IntMat& A, const std::vector<Int>& b, std::vector<Int>& x);

// Solve A x = b over Q; false when b is outside the rational column span.
bool solve_rational(const IntMat& A, const std::vector<Int>& b, std::vector<Rat>& x);

// Rank over Q by straightforward rational elimination (independent of smith).
size_t rank_rational(const IntMat& A);

// Determinant by Bareiss fraction-free elimination.
Int det(const IntMat& A);

/* Invariant factors computed from determinantal divisors (gcds of k x k
 * minors).  Exponential in size; intended as an independent cross-check for
 * small matrices. */
std::vector<Int> invariant_factors_minors(const IntMat& A);

// Factors the Smith form once and answers many A x = b queries against it.
class SpanSolver {
  public:
    explicit SpanSolver(IntMat A);
    bool solve(const std::vector<Int>& b, std::vector<Int>& x) const;
    bool contains(const std::vector<Int>& b) const;

  private:
    SmithForm s_;
    size_t rows_, cols_;
};

}  // namespace qcalc
