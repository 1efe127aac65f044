#include "qcalc/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcalc {

Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

unsigned long vp(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("vp: valuation of zero");
    Int rem;
    return mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

bool divides(const Int& d, const Int& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Int exact_div(const Int& n, const Int& d) {
    if (!divides(d, n)) throw std::domain_error("exact_div: division is not exact");
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Int mod_floor(const Int& a, const Int& m) {
    if (m <= 0) throw std::domain_error("mod_floor: modulus must be positive");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("inv_mod: element is not invertible");
    return r;
}

long vp_rat(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("vp_rat: valuation of zero");
    const Int num(x.get_num()), den(x.get_den());
    long v = 0;
    if (divides(p, num)) v += static_cast<long>(vp(num, p));
    if (divides(p, den)) v -= static_cast<long>(vp(den, p));
    return v;
}

bool denominator_is_p_power(const Rat& x, const Int& p) {
    Int den(x.get_den());
    if (den == 1) return true;
    Int rem;
    mpz_remove(rem.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    return rem == 1;
}

Rat p_unit_part(const Rat& x, const Int& p) {
    const long v = vp_rat(x, p);
    Rat scale;
    if (v >= 0)
        scale = Rat(1, ipow(p, static_cast<unsigned long>(v)));
    else
        scale = Rat(ipow(p, static_cast<unsigned long>(-v)), 1);
    Rat r = x * scale;
    r.canonicalize();
    return r;
}

std::vector<unsigned long> divisors(unsigned long m) {
    if (m == 0) throw std::domain_error("divisors: m must be positive");
    std::vector<unsigned long> ds;
    for (unsigned long d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            ds.push_back(d);
            if (d != m / d) ds.push_back(m / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::pair<unsigned long, unsigned>> factorize(unsigned long m) {
    if (m == 0) throw std::domain_error("factorize: m must be positive");
    std::vector<std::pair<unsigned long, unsigned>> fs;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) { m /= p; ++e; }
            fs.emplace_back(p, e);
        }
    }
    if (m > 1) fs.emplace_back(m, 1);
    return fs;
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Int crt(const std::vector<std::pair<Int, Int>>& residues_mod) {
    Int x = 0, m = 1;
    for (const auto& [r, mi] : residues_mod) {
        // combine x mod m with r mod mi
        const Int t = mod_floor((r - x) * inv_mod(m, mi), mi);
        x += m * t;
        m *= mi;
    }
    return mod_floor(x, m);
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace qcalc
