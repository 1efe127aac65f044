#include "qcalc/etale.hpp"

#include <algorithm>

#include <json.hpp>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/linalg.hpp"

namespace qcalc {

namespace {

// Res(f, h) by the Sylvester determinant, coefficients ascending.
Int resultant(const std::vector<Int>& f, const std::vector<Int>& h) {
    size_t n = f.size() - 1, m = h.size() - 1;
    if (n + m == 0) return Int(1);
    IntMat S(n + m, n + m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= n; ++j) S.at(i, i + j) = f[n - j];
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j <= m; ++j) S.at(m + k, k + j) = h[m - j];
    return det(S);
}

std::vector<Int> derivative_coeffs(const std::vector<Int>& g) {
    std::vector<Int> d;
    for (size_t i = 1; i < g.size(); ++i) d.push_back(Int(static_cast<long>(i)) * g[i]);
    while (d.size() > 1 && d.back() == 0) d.pop_back();
    return d;
}

/* Arithmetic in (Z/mod)[x]/(g) for monic g; mod == 0 means plain Z
 * coefficients.  Elements are coordinate vectors of length deg g. */
struct ResidueRing {
    const std::vector<Int>& g;
    size_t D;
    Int mod;

    ResidueRing(const std::vector<Int>& gc, Int m) : g(gc), D(gc.size() - 1), mod(std::move(m)) {}

    std::vector<Int> red(std::vector<Int> v) const {
        for (size_t i = v.size(); i-- > D;) {
            Int c = v[i];
            if (c == 0) continue;
            for (size_t j = 0; j <= D; ++j) v[i - D + j] -= c * g[j];
        }
        v.resize(D, Int(0));
        if (mod != 0)
            for (auto& c : v) c = mod_floor(c, mod);
        return v;
    }
    std::vector<Int> zero() const { return std::vector<Int>(D, Int(0)); }
    std::vector<Int> x_elem() const {
        auto v = zero();
        if (D >= 2)
            v[1] = 1;
        else
            v = red({Int(0), Int(1)});
        return v;
    }
    std::vector<Int> mul(const std::vector<Int>& u, const std::vector<Int>& v) const {
        std::vector<Int> w(2 * D - 1, Int(0));
        for (size_t i = 0; i < D; ++i) {
            if (u[i] == 0) continue;
            for (size_t j = 0; j < D; ++j) w[i + j] += u[i] * v[j];
        }
        return red(std::move(w));
    }
    std::vector<Int> sub(std::vector<Int> u, const std::vector<Int>& v) const {
        for (size_t i = 0; i < D; ++i) u[i] -= v[i];
        return red(std::move(u));
    }
    bool is_zero_elem(const std::vector<Int>& u) const {
        for (const auto& c : u)
            if (c != 0) return false;
        return true;
    }
    std::vector<Int> pow_x(unsigned long e) const {
        std::vector<Int> base = x_elem(), out = zero();
        out[0] = 1;
        while (e) {
            if (e & 1) out = mul(out, base);
            base = mul(base, base);
            e >>= 1;
        }
        return out;
    }
    // h(s) for h given by ascending integer coefficients.
    std::vector<Int> eval(const std::vector<Int>& h, const std::vector<Int>& s) const {
        std::vector<Int> r = zero();
        for (size_t i = h.size(); i-- > 0;) {
            r = mul(r, s);
            r[0] += h[i];
            r = red(std::move(r));
        }
        return r;
    }
    IntMat mult_matrix(const std::vector<Int>& u) const {
        IntMat M(D, D);
        std::vector<Int> col = zero();
        col[0] = 1;
        for (size_t j = 0; j < D; ++j) {
            auto w = mul(u, col);
            for (size_t i = 0; i < D; ++i) M.at(i, j) = w[i];
            col = mul(col, x_elem());
        }
        return M;
    }
    // u^{-1}, solving the multiplication matrix against e_0 mod `mod`.
    bool invert(const std::vector<Int>& u, std::vector<Int>& out) const {
        IntMat A = hstack(mult_matrix(u), IntMat::identity(D));
        for (size_t i = 0; i < D; ++i) A.at(i, D + i) = mod;
        std::vector<Int> b(D, Int(0)), x;
        b[0] = 1;
        if (!solve_integral(A, b, x)) return false;
        out.assign(x.begin(), x.begin() + static_cast<long>(D));
        out = red(std::move(out));
        return true;
    }
};

std::vector<Int> balanced(const std::vector<Int>& v, const Int& mod) {
    std::vector<Int> b = v;
    Int half = mod / 2;
    for (auto& c : b)
        if (c > half) c -= mod;
    return b;
}

}  // namespace

EtaleAlgebraSpec::EtaleAlgebraSpec(std::vector<Int> g_coeffs, Int delta)
    : g_(std::move(g_coeffs)), delta_(std::move(delta)) {
    if (g_.size() < 2) throw std::invalid_argument("g must have positive degree");
    if (g_.back() != 1) throw std::invalid_argument("g must be monic");
    if (delta_ == 0) throw std::invalid_argument("delta must be nonzero");
    disc_ = resultant(g_, derivative_coeffs(g_));
    size_t n = degree();
    if (((n * (n - 1)) / 2) % 2 == 1) disc_ = -disc_;
    if (disc_ == 0) throw std::invalid_argument("g is not separable");

    // Every prime of the discriminant must be inverted by delta.
    Int d = abs(disc_);
    while (d != 1) {
        Int c = gcd(d, delta_);
        if (c < 0) c = -c;
        if (c == 1) throw std::invalid_argument("discriminant is not supported on delta");
        d = exact_div(d, c);
    }
}

EtaleAlgebraSpec EtaleAlgebraSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("g") || !j["g"].is_array() || !j.contains("delta"))
        throw std::invalid_argument("expected fields g (array of strings) and delta (string)");
    std::vector<Int> g;
    for (const auto& c : j["g"]) g.emplace_back(c.get<std::string>());
    return EtaleAlgebraSpec(std::move(g), Int(j["delta"].get<std::string>()));
}

FrobeniusLift frobenius_lift(const EtaleAlgebraSpec& spec, unsigned long p, unsigned long a) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (a == 0) throw std::invalid_argument("precision exponent must be >= 1");
    Int pa = ipow(Int(static_cast<long>(p)), a);
    ResidueRing W(spec.g(), pa);
    ResidueRing WZ(spec.g(), Int(0));

    // Etale at p: the norm of g'(x) must be a unit mod p.
    std::vector<Int> gp = derivative_coeffs(spec.g());
    Int norm = det(WZ.mult_matrix(WZ.eval(gp, WZ.x_elem())));
    if (mod_floor(norm, Int(static_cast<long>(p))) == 0)
        throw NonEtaleAtP("g' is not invertible mod (" + std::to_string(p) + ", g)");

    auto newton = [&](std::vector<Int> s) {
        for (unsigned long it = 0; it < 2 * a + 8; ++it) {
            auto e = W.eval(spec.g(), s);
            if (W.is_zero_elem(e)) return s;
            std::vector<Int> inv;
            if (!W.invert(W.eval(gp, s), inv))
                throw NonEtaleAtP("derivative lost invertibility during iteration");
            s = W.sub(std::move(s), W.mul(e, inv));
        }
        throw std::logic_error("newton iteration failed to converge");
    };

    std::vector<Int> seed = W.pow_x(p);
    std::vector<Int> phi = newton(seed);

    // Perturb the seed inside the same mod-p residue disc and re-run.
    std::vector<Int> seed2 = seed;
    seed2[0] += p;
    if (W.D >= 2) seed2[1] += p;
    seed2 = W.red(std::move(seed2));
    std::vector<Int> phi2 = newton(seed2);

    FrobeniusLift out;
    out.p = p;
    out.a = a;
    out.phi = phi;
    out.perturbed_seed_agrees = phi == phi2;

    out.reduces_to_frobenius = true;
    auto diff = W.sub(phi, seed);
    for (const auto& c : diff)
        if (mod_floor(c, Int(static_cast<long>(p))) != 0) out.reduces_to_frobenius = false;

    out.exact_root = WZ.is_zero_elem(WZ.eval(spec.g(), balanced(phi, pa)));
    return out;
}

GluedRing::GluedRing(EtaleAlgebraSpec spec, unsigned long m, unsigned long prime_exp,
                     unsigned long trunc)
    : spec_(std::move(spec)), m_(m), prime_exp_(prime_exp) {
    if (m == 0) throw std::invalid_argument("level must be positive");
    if (prime_exp == 0 || trunc == 0)
        throw InsufficientInputPrecision("precision exponents must be >= 1");
    for (unsigned long d : divisors(m)) comps_.push_back({d, trunc});
    for (auto [p, e] : factorize(m)) {
        (void)e;
        if (divides(Int(static_cast<long>(p)), spec_.delta())) {
            skipped_primes_.push_back(p);  // p-completion of R is zero
            continue;
        }
        frob_.emplace(p, frobenius_lift(spec_, p, prime_exp));
        glued_primes_.push_back(p);
    }

    /* Composite identifications along divisor chains must agree.  With the
     * lifts as ring maps x -> P(x), the two ways around a (p, l)-square act
     * by P_l(P_p(x)) and P_p(P_l(x)); compare them at both participating
     * precisions, and check each lift composed with itself still reduces to
     * the p^2-power map, which is what a chain d | pd | p^2 d uses. */
    squares_commute_ = true;
    ResidueRing WZ(spec_.g(), Int(0));
    auto compose = [&](const std::vector<Int>& outer, const std::vector<Int>& inner) {
        // outer interpreted as a polynomial in x, evaluated at the inner value
        return WZ.eval(outer, inner);
    };
    for (unsigned long p : glued_primes_) {
        Int pa = ipow(Int(static_cast<long>(p)), prime_exp_);
        std::vector<Int> P = balanced(frob_.at(p).phi, pa);
        ResidueRing Wp(spec_.g(), Int(static_cast<long>(p)));
        auto sq = Wp.red(compose(P, P));
        auto target = Wp.pow_x(p * p);
        if (sq != target) squares_commute_ = false;
    }
    for (size_t i = 0; i < glued_primes_.size(); ++i)
        for (size_t j = i + 1; j < glued_primes_.size(); ++j) {
            unsigned long p = glued_primes_[i], l = glued_primes_[j];
            std::vector<Int> Pp = balanced(frob_.at(p).phi, ipow(Int(static_cast<long>(p)), prime_exp_));
            std::vector<Int> Pl = balanced(frob_.at(l).phi, ipow(Int(static_cast<long>(l)), prime_exp_));
            auto ab = compose(Pl, Pp);  // phi_p then phi_l
            auto ba = compose(Pp, Pl);
            for (unsigned long pr : {p, l}) {
                Int mod = ipow(Int(static_cast<long>(pr)), prime_exp_);
                for (size_t t = 0; t < WZ.D; ++t)
                    if (mod_floor(ab[t] - ba[t], mod) != 0) squares_commute_ = false;
            }
        }
}

const FrobeniusLift& GluedRing::gluing(unsigned long p) const {
    auto it = frob_.find(p);
    if (it == frob_.end()) throw NotADivisor("no gluing at prime " + std::to_string(p));
    return it->second;
}

GluedRing build_relative_habiro(const EtaleAlgebraSpec& spec, unsigned long m,
                                unsigned long prime_exp, unsigned long trunc) {
    return GluedRing(spec, m, prime_exp, trunc);
}

namespace {

// q^t mod Phi_d^N as integer coefficient rows, for t below the given bound.
std::vector<std::vector<Int>> q_power_table(unsigned long d, unsigned long N, size_t upto) {
    ZqPoly mod = cyclotomic(d).pow(N);
    size_t deg = static_cast<size_t>(mod.high());
    std::vector<std::vector<Int>> rows;
    ZqPoly pw(Int(1));
    for (size_t t = 0; t < upto; ++t) {
        std::vector<Int> row(deg, Int(0));
        for (size_t i = 0; i < deg; ++i) row[i] = pw.coeff(static_cast<long>(i));
        rows.push_back(std::move(row));
        pw = (pw * ZqPoly::monomial(Int(1), 1)).divmod(mod).second;
    }
    return rows;
}

size_t component_degree(const GluedComponent& c) { return totient(c.d) * c.trunc; }

}  // namespace

GluedElement::GluedElement(const GluedRing& G, std::map<unsigned long, Residue> residues)
    : residues_(std::move(residues)) {
    size_t D = G.spec().degree();
    size_t total = 0;
    for (const auto& c : G.components()) {
        auto it = residues_.find(c.d);
        if (it == residues_.end())
            throw IndexMismatch("missing residue at divisor " + std::to_string(c.d));
        if (it->second.size() != component_degree(c))
            throw std::invalid_argument("residue has the wrong q-degree");
        for (const auto& row : it->second)
            if (row.size() != D) throw std::invalid_argument("residue coordinate width mismatch");
        total += component_degree(c);
    }
    if (residues_.size() != G.components().size())
        throw IndexMismatch("residue keys outside the divisor set");

    /* A family comes from the glued ring exactly when a single integral
     * q-polynomial reduces to every entry; x-coordinates do not interact, so
     * solve one square system per coordinate. */
    IntMat A(total, total);
    size_t base = 0;
    for (const auto& c : G.components()) {
        auto table = q_power_table(c.d, c.trunc, total);
        size_t deg = component_degree(c);
        for (size_t t = 0; t < total; ++t)
            for (size_t r = 0; r < deg; ++r) A.at(base + r, t) = table[t][r];
        base += deg;
    }
    for (size_t coord = 0; coord < D; ++coord) {
        std::vector<Int> b(total, Int(0)), x;
        size_t row = 0;
        for (const auto& c : G.components())
            for (const auto& entry : residues_.at(c.d)) b[row++] = entry[coord];
        if (!solve_integral(A, b, x))
            throw std::invalid_argument("components do not glue to a common lift");
    }
}

GluedElement GluedElement::from_poly(const GluedRing& G, const Residue& f) {
    size_t D = G.spec().degree();
    for (const auto& row : f)
        if (row.size() != D) throw std::invalid_argument("coefficient width mismatch");
    std::map<unsigned long, Residue> out;
    for (const auto& c : G.components()) {
        ZqPoly mod = cyclotomic(c.d).pow(c.trunc);
        size_t deg = component_degree(c);
        Residue res(deg, std::vector<Int>(D, Int(0)));
        // reduce coordinatewise: the q-reduction has integer matrix entries
        for (size_t coord = 0; coord < D; ++coord) {
            std::vector<Int> v;
            for (const auto& row : f) v.push_back(row[coord]);
            for (size_t i = v.size(); i-- > deg;) {
                Int cval = v[i];
                if (cval == 0) continue;
                for (size_t j = 0; j <= deg; ++j) v[i - deg + j] -= cval * mod.coeff(static_cast<long>(j));
            }
            for (size_t i = 0; i < std::min(deg, v.size()); ++i) res[i][coord] = v[i];
        }
        out.emplace(c.d, std::move(res));
    }
    return GluedElement(G, std::move(out));
}

const GluedElement::Residue& GluedElement::at(unsigned long d) const {
    auto it = residues_.find(d);
    if (it == residues_.end()) throw NotADivisor("no component at divisor " + std::to_string(d));
    return it->second;
}

GluedElement::Residue ghost(const GluedRing& G, const GluedElement& e, unsigned long d) {
    if (d == 0 || G.level() % d != 0)
        throw NotADivisor(std::to_string(d) + " does not divide the level");
    return e.at(d);
}

QwittReport compare_qwitt(const GluedRing& G) {
    QwittReport rep;
    rep.m = G.level();
    for (const auto& c : G.components()) {
        QwittComponent qc;
        qc.d = c.d;
        const ZqPoly& phi_d = cyclotomic(c.d);
        size_t deg = totient(c.d);
        IntMat C(deg, deg);
        for (size_t i = 0; i + 1 < deg; ++i) C.at(i + 1, i) = 1;
        for (size_t i = 0; i < deg; ++i) C.at(i, deg - 1) = -phi_d.coeff(static_cast<long>(i));

        IntMat acc(deg, deg);
        for (long i = phi_d.high(); i >= 0; --i) {
            acc = mat_mul(acc, C);
            Int ci = phi_d.coeff(i);
            for (size_t r = 0; r < deg; ++r) acc.at(r, r) += ci;
        }
        qc.cyclotomic_annihilates = true;
        for (const auto& v : acc.a)
            if (v != 0) qc.cyclotomic_annihilates = false;

        IntMat pows(deg, deg);
        std::vector<Int> e0(deg, Int(0));
        e0[0] = 1;
        for (size_t k = 0; k < deg; ++k) {
            for (size_t r = 0; r < deg; ++r) pows.at(r, k) = e0[r];
            e0 = mat_vec(C, e0);
        }
        Int dt = det(pows);
        qc.power_basis_free = dt == 1 || dt == -1;
        rep.components.push_back(qc);
    }
    for (unsigned long p : G.glued_primes()) {
        ResidueRing Wp(G.spec().g(), Int(static_cast<long>(p)));
        auto lhs = Wp.red(G.gluing(p).phi);
        bool ok = lhs == Wp.pow_x(p);
        rep.frobenius_mod_p.emplace_back(p, ok);
    }
    return rep;
}

bool QwittReport::pass() const {
    for (const auto& c : components)
        if (!c.cyclotomic_annihilates || !c.power_basis_free) return false;
    for (const auto& [p, ok] : frobenius_mod_p)
        if (!ok) return false;
    return true;
}

}  // namespace qcalc
