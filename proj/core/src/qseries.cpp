#include "qcalc/qseries.hpp"

#include <sstream>
#include <stdexcept>

#include "qcalc/errors.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

QSeries QSeries::from_coeffs(std::vector<Rat> cs) {
    QSeries s;
    s.c_ = std::move(cs);
    for (auto& r : s.c_) r.canonicalize();
    return s;
}

QSeries QSeries::t_power(unsigned long len, unsigned long k) {
    QSeries s(len);
    if (k < len) s.c_[k] = 1;
    return s;
}

void QSeries::set_coeff(size_t j, const Rat& v) {
    if (j >= c_.size()) throw std::out_of_range("QSeries::set_coeff");
    c_[j] = v;
    c_[j].canonicalize();
}

bool QSeries::is_zero() const {
    for (const auto& r : c_)
        if (r != 0) return false;
    return true;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (c_.size() != o.c_.size()) throw std::invalid_argument("QSeries length mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
    if (c_.size() != o.c_.size()) throw std::invalid_argument("QSeries length mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) {
    if (c_.size() != o.c_.size()) throw std::invalid_argument("QSeries length mismatch");
    std::vector<Rat> out(c_.size(), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; i + j < c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            out[i + j] += c_[i] * o.c_[j];
        }
    }
    c_ = std::move(out);
    return *this;
}

QSeries QSeries::operator-() const {
    QSeries s(*this);
    for (auto& r : s.c_) r = -r;
    return s;
}

bool QSeries::operator==(const QSeries& o) const { return c_ == o.c_; }

QSeries QSeries::scaled(const Rat& r) const {
    QSeries s(*this);
    for (auto& x : s.c_) {
        x *= r;
        x.canonicalize();
    }
    return s;
}

QSeries QSeries::shifted_t(unsigned long k) const {
    QSeries s(c_.size());
    for (size_t i = 0; i + k < c_.size(); ++i) s.c_[i + k] = c_[i];
    return s;
}

QSeries QSeries::truncated(unsigned long len) const {
    QSeries s(len);
    for (size_t i = 0; i < len && i < c_.size(); ++i) s.c_[i] = c_[i];
    return s;
}

QSeries QSeries::inverse() const {
    if (c_.empty() || c_[0] == 0) throw NotAUnit("not-a-unit: series with zero constant term");
    QSeries inv(c_.size());
    Rat lead = Rat(1) / c_[0];
    inv.c_[0] = lead;
    // inv[n] = -1/c0 * sum_{k=1}^{n} c[k] inv[n-k]
    for (size_t n = 1; n < c_.size(); ++n) {
        Rat acc(0);
        for (size_t k = 1; k <= n; ++k) acc += c_[k] * inv.c_[n - k];
        inv.c_[n] = -lead * acc;
        inv.c_[n].canonicalize();
    }
    return inv;
}

QSeries QSeries::compose_qpow(unsigned long e) const {
    // g(t) = (1+t)^e - 1 has zero constant term, so Horner from the top is exact
    // under truncation.
    QSeries g(c_.size());
    for (unsigned long k = 1; k <= e && k < c_.size(); ++k) g.c_[k] = Rat(binomial(e, k));
    QSeries acc(c_.size());
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= g;
        acc.c_[0] += c_[i];
    }
    return acc;
}

unsigned long QSeries::t_order() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return i;
    return c_.size();
}

bool QSeries::p_integral(const Int& p) const {
    for (const auto& r : c_)
        if (r != 0 && vp_rat(r, p) < 0) return false;
    return true;
}

bool QSeries::denominators_p_power(const Int& p) const {
    for (const auto& r : c_)
        if (r != 0 && !denominator_is_p_power(r, p)) return false;
    return true;
}

long QSeries::min_p_valuation(const Int& p) const {
    long best = 0;
    bool seen = false;
    for (const auto& r : c_) {
        if (r == 0) continue;
        long v = vp_rat(r, p);
        if (!seen || v < best) best = v;
        seen = true;
    }
    return seen ? best : 0;
}

std::string QSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat r = c_[i];
        if (first) {
            if (r < 0) {
                os << '-';
                r = -r;
            }
        } else {
            os << (r < 0 ? '-' : '+');
            if (r < 0) r = -r;
        }
        first = false;
        bool unit_coeff = (r == 1) && i > 0;
        if (!unit_coeff) os << r.get_str();
        if (i > 0) {
            if (!unit_coeff) os << '*';
            os << 't';
            if (i > 1) os << '^' << i;
        }
    }
    if (first) os << '0';
    return os.str();
}

QSeries q_integer_series(unsigned long p, unsigned long len) {
    // ((1+t)^p - 1)/t = sum_{i=0}^{p-1} C(p, i+1) t^i
    QSeries s(len);
    for (unsigned long i = 0; i < p && i < len; ++i) s.set_coeff(i, Rat(binomial(p, i + 1)));
    return s;
}

QSeries unit_u_series(unsigned long p, unsigned long len) {
    QSeries s = q_integer_series(p, len);
    if (p >= 1 && p - 1 < len) s.set_coeff(p - 1, s.coeff(p - 1) - 1);
    QSeries u(len);
    for (unsigned long i = 0; i < len; ++i) {
        Rat r = s.coeff(i) / Rat(Int(p));
        r.canonicalize();
        u.set_coeff(i, r);
    }
    return u;
}

}  // namespace qcalc
