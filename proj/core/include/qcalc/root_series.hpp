#pragma once
#include <vector>

#include "qcalc/local_element.hpp"

namespace qcalc {

/* Truncated expansion sum a_k (q - zeta_center)^k whose coefficients live in
 * Z[zeta_{coeff_index}] = Z[z]/Phi_c(z), optionally further reduced mod p^a.
 * center | coeff_index always.  exact_tail means every coefficient beyond the
 * stored ones is zero (the expansion of a genuine polynomial, fully captured),
 * so recentering may read past the end without losing precision. */
struct RootSeries {
    unsigned long center = 1;
    unsigned long coeff_index = 1;
    Precision cpr;  // precision of each coefficient: cyclotomic, index = coeff_index, length 1
    bool exact_tail = false;
    std::vector<LocalElement> coeffs;
};

// Expansion of a Laurent polynomial in powers of (q - zeta_m), K coefficients.
// Integral coefficients in Z[zeta_m]; for Laurent input the tail is infinite.
RootSeries taylor_at_root(const ZqPoly& f, unsigned long m, unsigned long K);

/* Exponent e with zeta_m = zeta_M^e under the compatible system of roots
 * fixed here: zeta_m := prod over primes l | m of zeta_{l^{v_l(m)}}, each
 * prime-power root cut out of zeta_M by the complementary CRT idempotent.
 * Requires m | M.  Satisfies e(m, mn') * n' triviality checks and, for
 * M = p*m, e = p mod p^{v_p(M)} and e = 1 mod M/p^{v_p(M)}. */
unsigned long embed_exponent(unsigned long m, unsigned long M);

// Coefficient-ring pushforward Z[zeta_c] -> Z[zeta_C] along zeta_c = zeta_C^e.
LocalElement embed_root_coeff(const LocalElement& x, unsigned long C);
RootSeries embed_coefficients(const RootSeries& s, unsigned long C);

// Reduce all coefficients mod p^a (keeps center and coefficient ring).
RootSeries reduce_char(const RootSeries& s, const Int& p, unsigned long a);

/* Recenter a series around zeta_{pm} to one around zeta_m, working mod p^a:
 * substitute (q - zeta_pm) = (q - zeta_m) + (zeta_m - zeta_pm) and use that
 * the offset zeta_m - zeta_pm is topologically nilpotent at p.  The number of
 * input terms actually consumed is found by powering the offset until it dies
 * mod (p^a, Phi_c); if the input is too short (and not exact-tailed), throws
 * InsufficientInputPrecision. */
RootSeries reexpand_root(const RootSeries& s, const Int& p, unsigned long a, unsigned long K_out);

// First index in [0, upto) where the series disagree, or -1 if none.
long root_series_mismatch(const RootSeries& a, const RootSeries& b, unsigned long upto);

/* Componentwise sum and Cauchy product of expansions around the same center.
 * A sum is exact when both inputs are; a product of exact inputs keeps the
 * full convolution, otherwise the result is truncated to the shorter input
 * (sound: coefficient k of the product only needs inputs up to k). */
RootSeries root_series_add(const RootSeries& a, const RootSeries& b);
RootSeries root_series_mul(const RootSeries& a, const RootSeries& b);

}  // namespace qcalc
