#pragma once
#include <map>
#include <string>
#include <vector>

#include "qcalc/local_element.hpp"

namespace qcalc {

/* Finite slice of the module with basis x^i/[floor(i)]_q! for i in N[1/p],
 * coefficients in (Z/p^a)[q]/((q-1)^N).  Indices are stored by numerator at a
 * fixed denominator depth s: the key nu stands for i = nu/p^s. */
class QDivModule {
  public:
    QDivModule(unsigned long p, unsigned long depth, unsigned long max_numerator, Precision pr);

    unsigned long p() const { return p_; }
    unsigned long depth() const { return s_; }
    unsigned long max_numerator() const { return max_num_; }
    const Precision& precision() const { return pr_; }
    const std::map<unsigned long, LocalElement>& coeffs() const { return c_; }

    void set_coeff(unsigned long numerator, const LocalElement& v);
    LocalElement coeff(unsigned long numerator) const;  // zero if absent
    bool is_zero() const { return c_.empty(); }
    // floor(i) for the index with this numerator.
    unsigned long floor_index(unsigned long numerator) const { return numerator / den_; }

    QDivModule& operator+=(const QDivModule& o);
    // Divided-power product: basis elements multiply by the q-binomial-type
    // integer polynomial [floor(i+j)]_q!/([floor(i)]_q![floor(j)]_q!).
    QDivModule operator*(const QDivModule& o) const;

  private:
    unsigned long p_, s_, max_num_, den_;
    Precision pr_;
    std::map<unsigned long, LocalElement> c_;  // no zero entries
};

/* Largest n such that every nonzero coefficient at index i is divisible by
 * Phi_p(q)^max{n - floor(i), 0} at the working precision.  Divisibility is
 * solvability of the multiplication linear system mod (p^a, (q-1)^N). */
unsigned long nygaard_level(const QDivModule& e);

struct NygaardImageReport {
    unsigned long n, p, a, N, i_max;
    bool span_in_ideal = false;  // filtration spanning elements lie in the ideal
    bool ideal_in_span = false;  // ideal generators lie in the filtration span
    // Largest p-power needed to clear denominators in either inclusion.
    unsigned long max_denominator_exponent = 0;
    std::vector<std::string> generators;  // the recovered x^j Phi^(n-j) labels
    bool pass() const { return span_in_ideal && ideal_in_span; }
};

/* Verifies, at truncation, that the level-n filtration span and the ideal
 * (x, Phi_p(q))^n agree once p is inverted: inclusion both ways with bounded
 * p-power denominators.  Indices run through i_max at depth 1 (steps of 1/p). */
NygaardImageReport nygaard_rationalised_image(unsigned long n, unsigned long p, unsigned long a,
                                              unsigned long N, unsigned long i_max);

struct PhiDividedReport {
    unsigned long n, p;
    ZqPoly unit_ratio;          // w = [pn]_q! / ([n]_{q^p}! Phi_p^n)
    Int unit_value_at_one;      // w(1), prime to p
    bool ratio_exact = false;   // the division left no remainder
    bool unit_at_one = false;   // p does not divide w(1)
    bool congruence = false;    // [n]_{q^p}! = n!  mod Phi_p
    bool pass() const { return ratio_exact && unit_at_one && congruence; }
};

// Exact integer-polynomial form of the divided-Frobenius divisibility:
// [pn]_q! = w * [n]_{q^p}! * Phi_p(q)^n with w(1) prime to p, and the mod-Phi_p
// congruence matching classical factorials.
PhiDividedReport phi_divided_power_divisibility(unsigned long n, unsigned long p);

// The ratio w above; throws DivisionNotExact if the divisibility fails.
ZqPoly q_factorial_unit_ratio(unsigned long p, unsigned long n);

}  // namespace qcalc
