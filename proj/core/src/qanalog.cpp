#include "qcalc/qanalog.hpp"

#include <vector>

namespace qcalc {

ZqPoly q_integer(long k) {
    if (k == 0) return ZqPoly();
    if (k > 0) {
        std::vector<Int> c(static_cast<size_t>(k), Int(1));
        return ZqPoly::from_coeffs(0, std::move(c));
    }
    // (q^k - 1)/(q - 1) = -q^k (q^{-k} - 1)/(q - 1)
    return (-q_integer(-k)).shifted(k);
}

ZqPoly q_factorial(unsigned long n) {
    ZqPoly r(1);
    for (unsigned long i = 2; i <= n; ++i) r *= q_integer(static_cast<long>(i));
    return r;
}

ZqPoly q_binomial(unsigned long m, unsigned long k) {
    if (k > m) return ZqPoly();
    if (k > m - k) k = m - k;
    // row-by-row q-Pascal; row r holds binom(r, j)_q for j <= k
    std::vector<ZqPoly> row(k + 1);
    row[0] = ZqPoly(1);
    for (unsigned long r = 1; r <= m; ++r) {
        const unsigned long jmax = std::min(r, static_cast<unsigned long>(k));
        for (unsigned long j = jmax; j >= 1; --j)
            row[j] = row[j - 1] + row[j].shifted(static_cast<long>(j));
    }
    return row[k];
}

ZqPoly q_pochhammer(unsigned long n) {
    ZqPoly r(1);
    for (unsigned long i = 1; i <= n; ++i)
        r *= ZqPoly(1) - ZqPoly::monomial(Int(1), static_cast<long>(i));
    return r;
}

}  // namespace qcalc
