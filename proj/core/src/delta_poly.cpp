#include "qcalc/delta_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace qcalc {

DeltaMono DeltaMono::symbol(unsigned r, unsigned j, unsigned long e) {
    DeltaMono m;
    if (e > 0) m.fs.push_back({r, j, e});
    return m;
}

unsigned long DeltaMono::total_degree() const {
    unsigned long d = 0;
    for (const auto& f : fs) d += f.e;
    return d;
}

DeltaMono DeltaMono::operator*(const DeltaMono& o) const {
    DeltaMono out;
    size_t i = 0, j = 0;
    while (i < fs.size() && j < o.fs.size()) {
        const auto& a = fs[i];
        const auto& b = o.fs[j];
        if (a.r == b.r && a.j == b.j) {
            out.fs.push_back({a.r, a.j, a.e + b.e});
            ++i, ++j;
        } else if (std::pair(a.r, a.j) < std::pair(b.r, b.j)) {
            out.fs.push_back(a);
            ++i;
        } else {
            out.fs.push_back(b);
            ++j;
        }
    }
    for (; i < fs.size(); ++i) out.fs.push_back(fs[i]);
    for (; j < o.fs.size(); ++j) out.fs.push_back(o.fs[j]);
    return out;
}

DeltaMono DeltaMono::pow(unsigned long e) const {
    DeltaMono out;
    if (e == 0) return out;
    out.fs = fs;
    for (auto& f : out.fs) f.e *= e;
    return out;
}

bool DeltaMono::operator<(const DeltaMono& o) const {
    unsigned long da = total_degree(), db = o.total_degree();
    if (da != db) return da < db;
    return fs < o.fs;
}

std::string DeltaMono::str() const {
    if (fs.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : fs) {
        if (!first) os << '*';
        first = false;
        if (f.j > 0) os << 'd' << f.j;
        os << 'x' << f.r;
        if (f.e > 1) os << '^' << f.e;
    }
    return os.str();
}

DeltaPoly::DeltaPoly(Int p, unsigned gens, unsigned long trunc)
    : p_(std::move(p)), g_(gens), trunc_(trunc) {
    if (trunc_ == 0) throw std::invalid_argument("DeltaPoly: truncation length must be positive");
}

DeltaPoly DeltaPoly::constant(const Int& p, unsigned gens, unsigned long trunc, QSeries c) {
    DeltaPoly f(p, gens, trunc);
    f.add_term(DeltaMono::one(), c.truncated(trunc));
    return f;
}

DeltaPoly DeltaPoly::constant(const Int& p, unsigned gens, unsigned long trunc, const Rat& c) {
    return constant(p, gens, trunc, QSeries(trunc, c));
}

DeltaPoly DeltaPoly::generator(const Int& p, unsigned gens, unsigned long trunc, unsigned r,
                               unsigned j) {
    if (r == 0 || r > gens) throw std::invalid_argument("DeltaPoly: generator index out of range");
    DeltaPoly f(p, gens, trunc);
    f.add_term(DeltaMono::symbol(r, j), QSeries::one(trunc));
    return f;
}

DeltaPoly DeltaPoly::t_power(const Int& p, unsigned gens, unsigned long trunc, unsigned long k) {
    DeltaPoly f(p, gens, trunc);
    f.add_term(DeltaMono::one(), QSeries::t_power(trunc, k));
    return f;
}

bool DeltaPoly::operator==(const DeltaPoly& o) const {
    return p_ == o.p_ && g_ == o.g_ && trunc_ == o.trunc_ && terms_ == o.terms_;
}

void DeltaPoly::check_compatible(const DeltaPoly& o) const {
    if (p_ != o.p_ || g_ != o.g_ || trunc_ != o.trunc_)
        throw std::invalid_argument("DeltaPoly: mixed primes, generator counts, or truncations");
}

DeltaPoly& DeltaPoly::operator+=(const DeltaPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DeltaPoly& DeltaPoly::operator-=(const DeltaPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DeltaPoly& DeltaPoly::operator*=(const DeltaPoly& o) {
    check_compatible(o);
    std::map<DeltaMono, QSeries> out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            QSeries c = ca * cb;
            if (c.is_zero()) continue;
            DeltaMono m = ma * mb;
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(std::move(m), std::move(c));
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    terms_ = std::move(out);
    return *this;
}

DeltaPoly DeltaPoly::operator-() const {
    DeltaPoly out(p_, g_, trunc_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

DeltaPoly DeltaPoly::pow(unsigned long e) const {
    DeltaPoly acc = constant(p_, g_, trunc_, Rat(1));
    DeltaPoly base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

DeltaPoly DeltaPoly::scaled(const Rat& r) const {
    DeltaPoly out(p_, g_, trunc_);
    if (r == 0) return out;
    for (const auto& [m, c] : terms_) {
        QSeries s = c.scaled(r);
        if (!s.is_zero()) out.terms_.emplace(m, std::move(s));
    }
    return out;
}

DeltaPoly DeltaPoly::scaled(const QSeries& s) const {
    DeltaPoly out(p_, g_, trunc_);
    if (s.is_zero()) return out;
    QSeries st = s.truncated(trunc_);
    for (const auto& [m, c] : terms_) {
        QSeries v = c * st;
        if (!v.is_zero()) out.terms_.emplace(m, std::move(v));
    }
    return out;
}

void DeltaPoly::add_term(const DeltaMono& m, const QSeries& c) {
    if (c.length() != trunc_) throw std::invalid_argument("DeltaPoly: coefficient length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end())
        terms_.emplace(m, c);
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const QSeries& DeltaPoly::coeff(const DeltaMono& m) const {
    static thread_local QSeries zero;
    auto it = terms_.find(m);
    if (it != terms_.end()) return it->second;
    zero = QSeries(trunc_);
    return zero;
}

bool DeltaPoly::p_integral() const {
    for (const auto& [m, c] : terms_)
        if (!c.p_integral(p_)) return false;
    return true;
}

long DeltaPoly::min_p_valuation() const {
    long best = 0;
    bool seen = false;
    for (const auto& [m, c] : terms_) {
        long v = c.min_p_valuation(p_);
        if (!seen || v < best) best = v;
        seen = true;
    }
    return seen ? best : 0;
}

unsigned long DeltaPoly::min_t_order() const {
    unsigned long best = trunc_;
    for (const auto& [m, c] : terms_) best = std::min(best, c.t_order());
    return best;
}

std::string DeltaPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.str() << ')';
        if (!m.is_one()) os << '*' << m.str();
    }
    return os.str();
}

}  // namespace qcalc
