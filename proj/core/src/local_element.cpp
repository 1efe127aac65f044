#include "qcalc/local_element.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

Int Precision::char_modulus() const {
    if (!char_part) return 0;
    return ipow(char_part->first, char_part->second);
}

const ZqPoly& Precision::base_poly() const {
    if (index == 0) throw std::invalid_argument("modulus index must be positive");
    switch (kind) {
        case ModKind::cyclotomic:
            return cyclotomic(index);
        case ModKind::q_power_minus_one: {
            static std::map<unsigned long, ZqPoly> cache;
            static std::mutex mu;
            std::lock_guard<std::mutex> lk(mu);
            auto it = cache.find(index);
            if (it == cache.end()) {
                ZqPoly f = ZqPoly::monomial(1, static_cast<long>(index)) - ZqPoly(Int(1));
                it = cache.emplace(index, std::move(f)).first;
            }
            return it->second;
        }
        case ModKind::root_offset:
            break;
    }
    throw std::logic_error("root_offset precision has no polynomial modulus");
}

ZqPoly Precision::modulus_poly() const {
    static std::map<std::tuple<int, unsigned long, unsigned long>, ZqPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(static_cast<int>(kind), index, length);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, base_poly().pow(length)).first;
    return it->second;
}

LocalElement::LocalElement(Precision pr, const ZqPoly& value) : pr_(std::move(pr)) {
    if (pr_.kind == ModKind::root_offset)
        throw std::logic_error("LocalElement requires a polynomial modulus");
    if (pr_.length == 0) throw std::invalid_argument("truncation length must be positive");
    reduce_(value);
}

namespace {

ZqPoly mod_char(const ZqPoly& f, const Int& pk) {
    if (pk == 0 || f.is_zero()) return f;
    std::vector<Int> cs;
    cs.reserve(static_cast<size_t>(f.degree_span()));
    for (long k = f.low(); k <= f.high(); ++k) cs.push_back(mod_floor(f.coeff(k), pk));
    return ZqPoly::from_coeffs(f.low(), cs);
}

}  // namespace

void LocalElement::reduce_(const ZqPoly& raw) {
    ZqPoly v = raw;
    if (v.has_negative_exponents()) {
        // q^m = 1 + w with w nilpotent mod f^N, so q^-1 = q^(m-1) * sum (-w)^j.
        long s = -v.low();
        v = v.shifted(s);
        ZqPoly w = ZqPoly::monomial(1, static_cast<long>(pr_.index)) - ZqPoly(Int(1));
        ZqPoly geo(Int(0)), wp(Int(1));
        ZqPoly mod = pr_.modulus_poly();
        Int pk = pr_.char_modulus();
        for (unsigned long j = 0; j < pr_.length; ++j) {
            geo += wp;
            if (j + 1 < pr_.length) wp = mod_char(wp * (-w), pk).divmod(mod).second;
        }
        ZqPoly invq = mod_char((geo.shifted(static_cast<long>(pr_.index) - 1)).divmod(mod).second, pk);
        // v * invq^s by binary powering, reducing as we go
        ZqPoly acc = invq, res(Int(1));
        unsigned long e = static_cast<unsigned long>(s);
        while (e > 0) {
            if (e & 1) res = mod_char(res * acc, pk).divmod(mod).second;
            e >>= 1;
            if (e) acc = mod_char(acc * acc, pk).divmod(mod).second;
        }
        v = v * res;
    }
    rep_ = mod_char(v.divmod(pr_.modulus_poly()).second, pr_.char_modulus());
}

LocalElement& LocalElement::operator+=(const LocalElement& o) {
    if (pr_ != o.pr_) throw std::invalid_argument("precision mismatch");
    reduce_(rep_ + o.rep_);
    return *this;
}

LocalElement& LocalElement::operator-=(const LocalElement& o) {
    if (pr_ != o.pr_) throw std::invalid_argument("precision mismatch");
    reduce_(rep_ - o.rep_);
    return *this;
}

LocalElement& LocalElement::operator*=(const LocalElement& o) {
    if (pr_ != o.pr_) throw std::invalid_argument("precision mismatch");
    reduce_(rep_ * o.rep_);
    return *this;
}

LocalElement LocalElement::operator-() const { return LocalElement(pr_, -rep_); }

LocalElement LocalElement::scaled(const Int& c) const { return LocalElement(pr_, rep_.scaled(c)); }

bool LocalElement::operator==(const LocalElement& o) const {
    return pr_ == o.pr_ && rep_ == o.rep_;
}

LocalElement LocalElement::q_power(const Precision& pr, long k) {
    return LocalElement(pr, ZqPoly::monomial(1, k));
}

LocalElement LocalElement::from_int(const Precision& pr, const Int& c) {
    return LocalElement(pr, ZqPoly(c));
}

namespace {

/* Dense univariate helpers over F_p (coefficients in [0, p)) used to seed
 * Newton inversion.  Vectors are ascending-degree and trimmed. */
using FpPoly = std::vector<Int>;

void fp_trim(FpPoly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

FpPoly fp_from(const ZqPoly& f, const Int& p) {
    FpPoly v;
    if (f.is_zero()) return v;
    v.assign(static_cast<size_t>(f.high()) + 1, Int(0));
    for (long k = f.low(); k <= f.high(); ++k) v[static_cast<size_t>(k)] = mod_floor(f.coeff(k), p);
    fp_trim(v);
    return v;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod_floor(r[i + j] + a[i] * b[j], p);
    fp_trim(r);
    return r;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, const Int& p) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = mod_floor(a[i] - b[i], p);
    fp_trim(a);
    return a;
}

// a = q*b + r with deg r < deg b; returns {q, r}
std::pair<FpPoly, FpPoly> fp_divrem(FpPoly a, const FpPoly& b, const Int& p) {
    FpPoly q;
    Int linv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        Int c = mod_floor(a.back() * linv, p);
        if (q.size() < shift + 1) q.resize(shift + 1, Int(0));
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_floor(a[shift + i] - c * b[i], p);
        fp_trim(a);
        if (a.size() > shift + b.size() - 1) throw std::logic_error("fp_divrem no progress");
    }
    fp_trim(q);
    return {q, a};
}

ZqPoly fp_to_zq(const FpPoly& v) {
    std::vector<Int> cs(v.begin(), v.end());
    return ZqPoly::from_coeffs(0, cs);
}

/* Rational-coefficient helpers, used to invert without a characteristic part. */
using RatPoly = std::vector<Rat>;

void rat_trim(RatPoly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

RatPoly rat_from(const ZqPoly& f) {
    RatPoly v;
    if (f.is_zero()) return v;
    v.assign(static_cast<size_t>(f.high()) + 1, Rat(0));
    for (long k = f.low(); k <= f.high(); ++k) v[static_cast<size_t>(k)] = Rat(f.coeff(k));
    return v;
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rat_trim(r);
    return r;
}

RatPoly rat_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    rat_trim(a);
    return a;
}

std::pair<RatPoly, RatPoly> rat_divrem(RatPoly a, const RatPoly& b) {
    RatPoly q;
    Rat linv = 1 / b.back();
    while (a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        Rat c = a.back() * linv;
        if (q.size() < shift + 1) q.resize(shift + 1, Rat(0));
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        rat_trim(a);
    }
    rat_trim(q);
    return {q, a};
}

}  // namespace

LocalElement LocalElement::inverted() const {
    if (rep_.is_zero()) throw NotAUnit();
    if (pr_.has_char()) {
        const Int& p = pr_.char_part->first;
        // Seed: Bezout inverse modulo (p, f) via extended Euclid over F_p.
        FpPoly fbar = fp_from(pr_.base_poly(), p);
        FpPoly r0 = fp_divrem(fp_from(rep_, p), fbar, p).second;
        FpPoly r1 = fbar;
        FpPoly s0 = {Int(1)}, s1 = {};
        while (!r1.empty()) {
            auto [qq, rr] = fp_divrem(r0, r1, p);
            FpPoly s2 = fp_sub(s0, fp_mul(qq, s1, p), p);
            r0 = std::move(r1);
            r1 = std::move(rr);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1) throw NotAUnit();
        Int c = inv_mod(r0[0], p);
        for (auto& x : s0) x = mod_floor(x * c, p);
        LocalElement x(pr_, fp_to_zq(s0));
        // Newton x <- x(2 - ex): error ideal (p, f) squares each step.
        LocalElement one = from_int(pr_, Int(1));
        for (int it = 0; it < 64; ++it) {
            LocalElement t = *this * x;
            if (t == one) return x;
            x = x * (from_int(pr_, Int(2)) - t);
        }
        throw std::logic_error("inversion failed to converge");
    }
    // No characteristic part: one-shot extended Euclid over Q against f^N,
    // then reject if the inverse fails to be integral.
    RatPoly m = rat_from(pr_.modulus_poly());
    RatPoly r0 = rat_from(rep_), r1 = m;
    RatPoly s0 = {Rat(1)}, s1 = {};
    while (!r1.empty()) {
        auto [qq, rr] = rat_divrem(r0, r1);
        RatPoly s2 = rat_sub(s0, rat_mul(qq, s1));
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw NotAUnit();
    Rat g = r0[0];
    std::vector<Int> cs;
    cs.reserve(s0.size());
    for (auto& x : s0) {
        Rat v = x / g;
        v.canonicalize();
        if (v.get_den() != 1) throw NotAUnit();
        cs.push_back(v.get_num());
    }
    LocalElement x(pr_, ZqPoly::from_coeffs(0, cs));
    if (!(*this * x == from_int(pr_, Int(1)))) throw std::logic_error("inversion check failed");
    return x;
}

bool LocalElement::is_unit() const {
    try {
        (void)inverted();
        return true;
    } catch (const NotAUnit&) {
        return false;
    }
}

LocalElement LocalElement::pow(long e) const {
    LocalElement base = e < 0 ? inverted() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    LocalElement res = from_int(pr_, Int(1));
    while (n > 0) {
        if (n & 1) res *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return res;
}

LocalElement unit_decompose(const Int& p, unsigned long N) {
    if (N == 0) throw std::invalid_argument("truncation length must be positive");
    if (p < 2 || !p.fits_ulong_p() || !is_prime(p.get_ui()))
        throw std::invalid_argument("p must be prime");
    unsigned long pu = p.get_ui();
    ZqPoly qint = q_integer(static_cast<long>(pu));
    ZqPoly t = ZqPoly::monomial(1, 1) - ZqPoly(Int(1));
    ZqPoly u = (qint - t.pow(pu - 1)).divexact(ZqPoly(p));
    return LocalElement(Precision::cyclo(1, N), u);
}

}  // namespace qcalc
