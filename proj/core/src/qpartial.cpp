#include "qcalc/qpartial.hpp"

#include <stdexcept>

namespace qcalc {

QPartialReport rational_qpartial(unsigned long trunc, long k) {
    if (k < 1) throw std::invalid_argument("rational_qpartial needs k >= 1");
    if (trunc == 0) throw std::invalid_argument("rational_qpartial needs a positive truncation");

    // k * log(1+t), one term longer than the target so the t-shift loses nothing
    unsigned long len = trunc + 1;
    QSeries kl(len);
    for (unsigned long j = 1; j < len; ++j) {
        Rat c(j % 2 == 1 ? k : -k, static_cast<long>(j));
        c.canonicalize();
        kl.set_coeff(j, c);
    }

    // exp(kl) - 1 = sum_{i >= 1} kl^i / i!; kl has t-order 1, so i <= trunc suffices
    QSeries sum(len), power = QSeries::one(len);
    Rat inv_fact(1);
    for (unsigned long i = 1; i < len; ++i) {
        power *= kl;
        inv_fact /= static_cast<long>(i);
        sum += power.scaled(inv_fact);
    }

    QPartialReport rep;
    rep.k = k;
    rep.trunc = trunc;
    rep.applied = QSeries(trunc);
    for (unsigned long j = 0; j < trunc; ++j) rep.applied.set_coeff(j, sum.coeff(j + 1));

    // [k]_q = ((1+t)^k - 1)/t has t^j coefficient binom(k, j+1)
    rep.expected = QSeries(trunc);
    for (unsigned long j = 0; j < trunc; ++j)
        rep.expected.set_coeff(j, Rat(binomial(static_cast<unsigned long>(k), j + 1)));
    rep.match = rep.applied == rep.expected;
    return rep;
}

}  // namespace qcalc
