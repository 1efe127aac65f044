#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace qcalc {

// Exact arbitrary-precision integers and rationals. All arithmetic in this
// library is exact; there is deliberately no floating-point type anywhere.
using Int = mpz_class;
using Rat = mpq_class;

Int ipow(const Int& base, unsigned long e);

// p-adic valuation of n != 0.
unsigned long vp(const Int& n, const Int& p);

bool divides(const Int& d, const Int& n);

// Quotient n/d, throwing std::domain_error when d does not divide n.
Int exact_div(const Int& n, const Int& d);

// Representative of a mod m in [0, m), m > 0.
Int mod_floor(const Int& a, const Int& m);

// Inverse of a mod m; throws std::domain_error if gcd(a, m) != 1.
Int inv_mod(const Int& a, const Int& m);

// p-adic valuation of a nonzero rational (may be negative).
long vp_rat(const Rat& x, const Int& p);

// True when the denominator of x (in lowest terms) is a power of p.
bool denominator_is_p_power(const Rat& x, const Int& p);

// x·p^{-vp(x)} reduced, i.e. the p'-unit part of a nonzero rational.
Rat p_unit_part(const Rat& x, const Int& p);

std::vector<unsigned long> divisors(unsigned long m);              // ascending
std::vector<std::pair<unsigned long, unsigned>> factorize(unsigned long m);
bool is_prime(unsigned long p);

// Chinese remainder: the unique e in [0, lcm) with e = r_i mod m_i.
// Moduli must be pairwise coprime.
Int crt(const std::vector<std::pair<Int, Int>>& residues_mod);

Int binomial(unsigned long n, unsigned long k);

}  // namespace qcalc
