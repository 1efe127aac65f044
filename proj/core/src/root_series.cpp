#include "qcalc/root_series.hpp"

#include <algorithm>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"

namespace qcalc {

RootSeries taylor_at_root(const ZqPoly& f, unsigned long m, unsigned long K) {
    if (m == 0) throw std::invalid_argument("root index must be positive");
    Precision cpr = Precision::cyclo(m, 1);
    RootSeries out;
    out.center = m;
    out.coeff_index = m;
    out.cpr = cpr;

    long s = f.low() < 0 ? -f.low() : 0;
    ZqPoly g = f.shifted(s);

    // b_k = sum_j g_j binom(j, k) z^(j-k): expansion of g(z + t) in t.
    std::vector<ZqPoly> b(K, ZqPoly(Int(0)));
    if (!g.is_zero()) {
        for (long j = 0; j <= g.high(); ++j) {
            const Int& gj = g.coeff(j);
            if (gj == 0) continue;
            long kmax = std::min<long>(j, static_cast<long>(K) - 1);
            for (long k = 0; k <= kmax; ++k)
                b[static_cast<size_t>(k)] +=
                    ZqPoly::monomial(gj * binomial(static_cast<unsigned long>(j),
                                                   static_cast<unsigned long>(k)),
                                     j - k);
        }
    }

    if (s == 0) {
        for (auto& bk : b) out.coeffs.emplace_back(cpr, bk);
        out.exact_tail = g.is_zero() || static_cast<long>(K) > g.high();
        return out;
    }

    /* Laurent part: multiply by (z + t)^(-s) = sum_k binom(-s, k) z^(-s-k) t^k
     * with binom(-s, k) = (-1)^k binom(s+k-1, k); z is invertible mod Phi_m. */
    LocalElement zinv = LocalElement::q_power(cpr, 1).inverted();
    std::vector<LocalElement> w;
    w.reserve(K);
    LocalElement zp = zinv.pow(s);
    for (unsigned long k = 0; k < K; ++k) {
        Int c = binomial(static_cast<unsigned long>(s) + k - (k ? 1 : 0), k);
        if (k % 2 == 1) c = -c;
        w.push_back(zp.scaled(c));
        zp *= zinv;
    }
    for (unsigned long j = 0; j < K; ++j) {
        LocalElement acc = LocalElement::from_int(cpr, 0);
        for (unsigned long k = 0; k <= j; ++k)
            acc += LocalElement(cpr, b[j - k]) * w[k];
        out.coeffs.push_back(acc);
    }
    out.exact_tail = false;
    return out;
}

unsigned long embed_exponent(unsigned long m, unsigned long M) {
    if (m == 0 || M == 0 || M % m != 0) throw IndexMismatch("index-mismatch: need m | M");
    // CRT: e = l^(v_l(M)-v_l(m)) mod l^v_l(M) for l | m, e = 0 mod l^v_l(M) else.
    std::vector<std::pair<Int, Int>> rm;
    for (auto& [l, bM] : factorize(M)) {
        Int lb = ipow(Int(l), bM);
        Int r = 0;
        if (m % l == 0) {
            unsigned long bm = vp(Int(m), Int(l));
            r = mod_floor(ipow(Int(l), bM - bm), lb);
        }
        rm.emplace_back(r, lb);
    }
    return mod_floor(crt(rm), Int(M)).get_ui();
}

LocalElement embed_root_coeff(const LocalElement& x, unsigned long C) {
    const Precision& pr = x.precision();
    if (pr.kind != ModKind::cyclotomic || pr.length != 1)
        throw std::invalid_argument("coefficient must live over a single cyclotomic");
    unsigned long e = embed_exponent(pr.index, C);
    Precision out = pr;
    out.index = C;
    if (e == 0) return LocalElement(out, ZqPoly(x.rep().eval_at_one()));
    return LocalElement(out, x.rep().substitute_qpow(static_cast<long>(e)));
}

RootSeries embed_coefficients(const RootSeries& s, unsigned long C) {
    RootSeries out;
    out.center = s.center;
    out.coeff_index = C;
    out.cpr = s.cpr;
    out.cpr.index = C;
    out.exact_tail = s.exact_tail;
    out.coeffs.reserve(s.coeffs.size());
    for (auto& c : s.coeffs) out.coeffs.push_back(embed_root_coeff(c, C));
    return out;
}

RootSeries reduce_char(const RootSeries& s, const Int& p, unsigned long a) {
    RootSeries out = s;
    out.cpr.char_part = std::make_pair(p, a);
    for (auto& c : out.coeffs) c = LocalElement(out.cpr, c.rep());
    return out;
}

RootSeries reexpand_root(const RootSeries& s, const Int& p, unsigned long a,
                         unsigned long K_out) {
    unsigned long pu = p.get_ui();
    if (pu < 2 || s.center % pu != 0)
        throw std::invalid_argument("reexpand_root requires p | center");
    unsigned long m = s.center / pu;
    unsigned long c = s.coeff_index;

    Precision cpr = Precision::cyclo(p, a, c, 1);
    LocalElement zm = LocalElement::q_power(cpr, static_cast<long>(embed_exponent(m, c)));
    LocalElement zpm = LocalElement::q_power(cpr, static_cast<long>(embed_exponent(s.center, c)));
    LocalElement off = zm - zpm;

    // Powers of the offset until it vanishes mod (p^a, Phi_c).
    std::vector<LocalElement> pw = {LocalElement::from_int(cpr, 1)};
    unsigned long guard = 64 + 2 * a * totient(c);
    while (true) {
        LocalElement nxt = pw.back() * off;
        if (nxt.is_zero()) break;
        pw.push_back(std::move(nxt));
        if (pw.size() > guard) throw std::logic_error("offset is not nilpotent mod p^a");
    }
    unsigned long T = pw.size();  // off^T = 0, off^(T-1) != 0

    unsigned long need = K_out + T - 1;
    if (s.coeffs.size() < need && !s.exact_tail) throw InsufficientInputPrecision();
    unsigned long avail = std::min<unsigned long>(need, s.coeffs.size());

    RootSeries out;
    out.center = m;
    out.coeff_index = c;
    out.cpr = cpr;
    out.exact_tail = false;
    for (unsigned long j = 0; j < K_out; ++j) {
        LocalElement bj = LocalElement::from_int(cpr, 0);
        for (unsigned long k = j; k < avail && k - j < T; ++k) {
            LocalElement ak(cpr, s.coeffs[k].rep());
            bj += (ak * pw[k - j]).scaled(binomial(k, j));
        }
        out.coeffs.push_back(bj);
    }
    return out;
}

long root_series_mismatch(const RootSeries& a, const RootSeries& b, unsigned long upto) {
    if (a.center != b.center || a.coeff_index != b.coeff_index || !(a.cpr == b.cpr))
        throw std::invalid_argument("series live in different rings");
    for (unsigned long k = 0; k < upto; ++k) {
        const LocalElement* xa = k < a.coeffs.size() ? &a.coeffs[k] : nullptr;
        const LocalElement* xb = k < b.coeffs.size() ? &b.coeffs[k] : nullptr;
        if (!xa && !a.exact_tail) throw InsufficientInputPrecision();
        if (!xb && !b.exact_tail) throw InsufficientInputPrecision();
        bool za = xa ? xa->is_zero() : true;
        bool zb = xb ? xb->is_zero() : true;
        if (za && zb) continue;
        if (za != zb || *xa != *xb) return static_cast<long>(k);
    }
    return -1;
}

namespace {

void require_same_ring(const RootSeries& a, const RootSeries& b) {
    if (a.center != b.center || a.coeff_index != b.coeff_index || !(a.cpr == b.cpr))
        throw std::invalid_argument("series live in different rings");
}

LocalElement coeff_or_zero(const RootSeries& s, unsigned long k) {
    return k < s.coeffs.size() ? s.coeffs[k] : LocalElement::from_int(s.cpr, 0);
}

}  // namespace

RootSeries root_series_add(const RootSeries& a, const RootSeries& b) {
    require_same_ring(a, b);
    RootSeries out;
    out.center = a.center;
    out.coeff_index = a.coeff_index;
    out.cpr = a.cpr;
    out.exact_tail = a.exact_tail && b.exact_tail;
    unsigned long la = a.coeffs.size(), lb = b.coeffs.size();
    unsigned long len = out.exact_tail ? std::max(la, lb) : std::min(la, lb);
    out.coeffs.reserve(len);
    for (unsigned long k = 0; k < len; ++k)
        out.coeffs.push_back(coeff_or_zero(a, k) + coeff_or_zero(b, k));
    return out;
}

RootSeries root_series_mul(const RootSeries& a, const RootSeries& b) {
    require_same_ring(a, b);
    RootSeries out;
    out.center = a.center;
    out.coeff_index = a.coeff_index;
    out.cpr = a.cpr;
    out.exact_tail = a.exact_tail && b.exact_tail;
    unsigned long la = a.coeffs.size(), lb = b.coeffs.size();
    unsigned long len;
    if (out.exact_tail)
        len = (la == 0 || lb == 0) ? 0 : la + lb - 1;
    else
        len = std::min(la, lb);
    for (unsigned long k = 0; k < len; ++k) {
        LocalElement acc = LocalElement::from_int(out.cpr, 0);
        unsigned long lo = lb > k ? 0 : k - lb + 1;
        unsigned long hi = std::min<unsigned long>(k, la == 0 ? 0 : la - 1);
        for (unsigned long i = lo; i <= hi && i < la; ++i)
            acc += a.coeffs[i] * coeff_or_zero(b, k - i);
        out.coeffs.push_back(acc);
    }
    return out;
}

}  // namespace qcalc
