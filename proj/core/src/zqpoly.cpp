#include "qcalc/zqpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "qcalc/errors.hpp"

namespace qcalc {

ZqPoly::ZqPoly(const Int& c) {
    if (c != 0) c_.push_back(c);
}

ZqPoly ZqPoly::monomial(const Int& c, long k) {
    ZqPoly r;
    if (c != 0) {
        r.off_ = k;
        r.c_.push_back(c);
    }
    return r;
}

ZqPoly ZqPoly::from_coeffs(long low, std::vector<Int> coeffs) {
    ZqPoly r;
    r.off_ = low;
    r.c_ = std::move(coeffs);
    r.trim();
    return r;
}

void ZqPoly::trim() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        off_ = 0;
        return;
    }
    size_t tail = c_.size();
    while (c_[tail - 1] == 0) --tail;
    if (lead > 0 || tail < c_.size()) {
        c_ = std::vector<Int>(c_.begin() + static_cast<long>(lead),
                              c_.begin() + static_cast<long>(tail));
        off_ += static_cast<long>(lead);
    }
}

Int ZqPoly::coeff(long k) const {
    if (is_zero() || k < off_ || k > high()) return Int(0);
    return c_[static_cast<size_t>(k - off_)];
}

const Int& ZqPoly::leading_coeff() const {
    if (is_zero()) throw std::domain_error("leading_coeff of zero polynomial");
    return c_.back();
}

ZqPoly& ZqPoly::operator+=(const ZqPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    const long lo = std::min(off_, o.off_);
    const long hi = std::max(high(), o.high());
    std::vector<Int> out(static_cast<size_t>(hi - lo + 1), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) out[static_cast<size_t>(off_ - lo) + i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[static_cast<size_t>(o.off_ - lo) + i] += o.c_[i];
    off_ = lo;
    c_ = std::move(out);
    trim();
    return *this;
}

ZqPoly& ZqPoly::operator-=(const ZqPoly& o) { return *this += -o; }

ZqPoly& ZqPoly::operator*=(const ZqPoly& o) {
    if (is_zero() || o.is_zero()) { *this = ZqPoly(); return *this; }
    std::vector<Int> out(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] += c_[i] * o.c_[j];
    off_ += o.off_;
    c_ = std::move(out);
    trim();
    return *this;
}

ZqPoly ZqPoly::operator-() const {
    ZqPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

ZqPoly ZqPoly::shifted(long k) const {
    ZqPoly r(*this);
    if (!r.is_zero()) r.off_ += k;
    return r;
}

ZqPoly ZqPoly::scaled(const Int& c) const {
    if (c == 0) return ZqPoly();
    ZqPoly r(*this);
    for (auto& x : r.c_) x *= c;
    return r;
}

ZqPoly ZqPoly::substitute_qpow(long e) const {
    if (e == 0) throw std::domain_error("substitute_qpow: exponent must be nonzero");
    ZqPoly r;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) r += monomial(c_[i], (off_ + static_cast<long>(i)) * e);
    return r;
}

ZqPoly ZqPoly::pow(unsigned long e) const {
    ZqPoly r(Int(1)), b(*this);
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

ZqPoly ZqPoly::derivative() const {
    ZqPoly r;
    for (size_t i = 0; i < c_.size(); ++i) {
        const long k = off_ + static_cast<long>(i);
        if (k != 0 && c_[i] != 0) r += monomial(c_[i] * Int(k), k - 1);
    }
    return r;
}

Int ZqPoly::eval_int(const Int& x) const {
    if (has_negative_exponents())
        throw std::domain_error("eval_int: Laurent polynomial requires invertible point");
    // Horner from the top, then multiply by x^{off_}
    Int acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    if (!is_zero() && off_ > 0) acc *= ipow(x, static_cast<unsigned long>(off_));
    return acc;
}

Int ZqPoly::eval_at_one() const {
    Int s = 0;
    for (const auto& x : c_) s += x;
    return s;
}

Int ZqPoly::content() const {
    Int g = 0;
    for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

ZqPoly ZqPoly::reduced_mod(const Int& m) const {
    ZqPoly r(*this);
    for (auto& x : r.c_) x = mod_floor(x, m);
    r.trim();
    return r;
}

std::pair<ZqPoly, ZqPoly> ZqPoly::divmod(const ZqPoly& d) const {
    if (d.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    if (d.has_negative_exponents() || has_negative_exponents())
        throw std::domain_error("divmod: defined for ordinary (non-Laurent) polynomials");
    if (is_zero()) return {ZqPoly(), ZqPoly()};
    const long dd = d.high();
    std::vector<Rat> rem(static_cast<size_t>(high()) + 1, Rat(0));
    for (long k = 0; k <= high(); ++k) rem[static_cast<size_t>(k)] = Rat(coeff(k));
    std::vector<Rat> quo;
    if (high() >= dd) quo.assign(static_cast<size_t>(high() - dd) + 1, Rat(0));
    const Rat lead(d.leading_coeff());
    for (long k = high(); k >= dd; --k) {
        Rat f = rem[static_cast<size_t>(k)] / lead;
        f.canonicalize();
        if (f == 0) continue;
        quo[static_cast<size_t>(k - dd)] = f;
        for (long j = 0; j <= dd; ++j) {
            Rat t = rem[static_cast<size_t>(k - dd + j)] - f * Rat(d.coeff(j));
            t.canonicalize();
            rem[static_cast<size_t>(k - dd + j)] = t;
        }
    }
    auto integral = [](const std::vector<Rat>& v, long lo) {
        std::vector<Int> out;
        out.reserve(v.size());
        for (const auto& x : v) {
            if (x.get_den() != 1) throw DivisionNotExact("division-not-exact: divmod over Z");
            out.push_back(Int(x.get_num()));
        }
        return ZqPoly::from_coeffs(lo, std::move(out));
    };
    return {integral(quo, 0), integral(rem, 0)};
}

ZqPoly ZqPoly::divexact(const ZqPoly& d) const {
    // Shift numerator and divisor into ordinary polynomials first so Laurent
    // inputs (e.g. q-integers of negative index) divide cleanly.
    if (d.is_zero()) throw std::domain_error("divexact: division by zero polynomial");
    if (is_zero()) return ZqPoly();
    const long sn = std::min(low(), 0L), sd = std::min(d.low(), 0L);
    auto [q, r] = shifted(-sn).divmod(d.shifted(-sd));
    if (!r.is_zero()) throw DivisionNotExact("division-not-exact: nonzero remainder");
    return q.shifted(sn - sd);
}

std::string ZqPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        const Int& c = c_[i];
        if (c == 0) continue;
        const long k = off_ + static_cast<long>(i);
        const bool neg = c < 0;
        Int a = neg ? Int(-c) : c;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? '-' : '+');
        }
        first = false;
        if (k == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str();
            os << 'q';
            if (k != 1) os << '^' << k;
        }
    }
    return os.str();
}

namespace {

// One term of the textual form [sign][digits][q[^[-]digits]].
bool parse_term(std::string_view& s, Int& coeff_out, long& exp_out) {
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -sign;
        ++i;
        skip_ws();
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    skip_ws();
    bool has_q = false;
    long exp = 0;
    if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
    if (i < s.size() && s[i] == 'q') {
        has_q = true;
        exp = 1;
        ++i;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip_ws();
            bool eneg = false;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
                eneg = s[i] == '-';
                ++i;
            }
            std::string ed;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed.push_back(s[i++]);
            if (ed.empty()) return false;
            exp = std::stol(ed);
            if (eneg) exp = -exp;
        }
    }
    if (digits.empty() && !has_q) return false;
    coeff_out = digits.empty() ? Int(1) : Int(digits);
    if (sign < 0) coeff_out = -coeff_out;
    exp_out = exp;
    s.remove_prefix(i);
    return true;
}

}  // namespace

std::optional<ZqPoly> ZqPoly::parse(std::string_view s) {
    ZqPoly acc;
    bool any = false;
    while (true) {
        size_t i = 0;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        s.remove_prefix(i);
        if (s.empty()) break;
        Int c;
        long k;
        if (!parse_term(s, c, k)) return std::nullopt;
        acc += monomial(c, k);
        any = true;
    }
    if (!any) return std::nullopt;
    return acc;
}

}  // namespace qcalc
