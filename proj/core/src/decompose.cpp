#include "qcalc/decompose.hpp"

#include <optional>
#include <stdexcept>

#include "qcalc/delta_ops.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

namespace {

struct Ctx {
    unsigned long p;
    unsigned long N;
    unsigned long a;
    Int P;
    unsigned gens = 1;
};

// One summand p^(-beta) t^w * e awaiting classification.
struct RawTerm {
    unsigned long beta;
    unsigned long w;
    EnvExpr e;
};

struct Stage {
    EnvExpr y0;
    // buckets[i] holds y_(i+1); empty optional = zero.
    std::vector<std::optional<EnvExpr>> buckets;
    std::vector<std::pair<unsigned long, unsigned long>> targets;  // (E_i, w_i)
};

Rat inv_p_power(const Int& p, unsigned long e) {
    Rat r(Int(1), ipow(p, e));
    r.canonicalize();
    return r;
}

// Divide a series by t^k (k <= t_order).
QSeries unshift(const QSeries& s, unsigned long k) {
    QSeries out(s.length());
    for (size_t i = k; i < s.length(); ++i) out.set_coeff(i - k, s.coeff(i));
    return out;
}

// c * e with the t-power of c split off first, so an integral e is promoted
// into the divided-power seed.  Empty when c = 0.
std::optional<EnvExpr> scale_tfactored(EnvExpr e, const QSeries& c) {
    unsigned long k = c.t_order();
    if (k >= c.length()) return std::nullopt;
    return EnvExpr::scale(EnvExpr::t_shift(k, std::move(e)), unshift(c, k));
}

Int multinomial(unsigned long p, const std::vector<unsigned long>& k) {
    Int m = 1;
    unsigned long rem = p;
    for (unsigned long ki : k) {
        m *= binomial(rem, ki);
        rem -= ki;
    }
    return m;
}

void compositions(unsigned long total, size_t parts, std::vector<unsigned long>& cur,
                  std::vector<std::vector<unsigned long>>& out) {
    if (cur.size() + 1 == parts) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (unsigned long v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(total - v, parts, cur, out);
        cur.pop_back();
    }
}

// gamma(z) via the split identity, for z with a q-divided-power certificate:
//   gamma(z) = gamma_q(z) + (u-1)(gamma_q(z)+delta(z)) + p^{-1}t^{p-1}(gamma_q(z)+delta(z)).
void split_gamma(const Ctx& c, const EnvExpr& z, std::vector<RawTerm>& raws) {
    EnvExpr gq = EnvExpr::gamma_q_of(z);
    EnvExpr mixed = EnvExpr::sum({gq, EnvExpr::delta_of(z)});
    raws.push_back({0, 0, gq});
    QSeries um1 = unit_u_series(c.p, c.N);
    um1.set_coeff(0, um1.coeff(0) - 1);
    if (auto b = scale_tfactored(mixed, um1)) raws.push_back({0, 0, *b});
    raws.push_back({2, c.p - 1, EnvExpr::scale(mixed, Rat(c.P))});
}

// gamma_q(z) for z with a classical divided-power certificate, by expanding
//   gamma_q(z) = (p/[p]_q)(gamma(z) - (([p]_q-p)/p) delta(z))
// with p/[p]_q = sum_i (-1)^i u^{-i-1} p^{-i} t^{(p-1)i}.
void split_gamma_q(const Ctx& c, const EnvExpr& z, std::vector<RawTerm>& raws) {
    QSeries invu = unit_u_series(c.p, c.N).inverse();
    QSeries um1 = unit_u_series(c.p, c.N);
    um1.set_coeff(0, um1.coeff(0) - 1);

    EnvExpr dz = EnvExpr::delta_of(z);
    std::vector<EnvExpr> g1_parts{EnvExpr::gamma_of(z)};
    if (auto part = scale_tfactored(dz, -um1)) g1_parts.push_back(*part);
    EnvExpr g1 = g1_parts.size() == 1 ? g1_parts[0] : EnvExpr::sum(g1_parts);

    QSeries upow = invu;  // u^{-(i+1)}
    for (unsigned long i = 0; (c.p - 1) * i < c.N; ++i) {
        Rat sign(i % 2 == 0 ? 1 : -1);
        raws.push_back({i, (c.p - 1) * i, EnvExpr::scale(g1, upow.scaled(sign))});
        if ((c.p - 1) * (i + 1) < c.N)
            raws.push_back(
                {i + 1, (c.p - 1) * (i + 1), EnvExpr::scale(dz, upow.scaled(-sign))});
        upow *= invu;
    }
}

// gamma / gamma_q of p^(-E) t^w y for a plain integral witness term.
void split_gamma_term(const Ctx& c, unsigned long E, unsigned long w, const EnvExpr& y,
                      std::vector<RawTerm>& raws) {
    std::vector<EnvExpr> copies(c.p, y);
    raws.push_back({c.p * E + 1, c.p * w, EnvExpr::prod(copies)});
}

void split_gamma_q_term(const Ctx& c, unsigned long E, unsigned long w, const EnvExpr& y,
                        std::vector<RawTerm>& raws) {
    // gamma_q(p^{-E} z) = p^{-E} gamma_q(z) - z^p delta(p^{-E}),
    // delta(p^{-E}) = p^{-pE-1}(p^{(p-1)E} - 1);
    // gamma_q(t^w y) = phi(t^{w-1} y) gamma_q(t) - t^p delta(t^{w-1} y), and
    // gamma_q(t) = -t^2 sum_{i=2}^{p-1} (1/p) C(p,i) t^{i-2}.
    std::vector<EnvExpr> copies(c.p, y);
    Rat dconst = -Rat(ipow(c.P, (c.p - 1) * E) - 1);
    if (dconst != 0)
        raws.push_back({c.p * E + 1, c.p * w, EnvExpr::scale(EnvExpr::prod(copies), dconst)});

    QSeries G(c.N);
    for (unsigned long i = 2; i < c.p && i - 2 < c.N; ++i) {
        Rat r = Rat(binomial(c.p, i)) / Rat(c.P);
        r.canonicalize();
        G.set_coeff(i - 2, r);
    }
    if (!G.is_zero() && w + 1 < c.N) {
        QSeries qi = q_integer_series(c.p, c.N);
        QSeries factor = QSeries::one(c.N);
        for (unsigned long j = 0; j + 1 < w; ++j) factor *= qi;
        raws.push_back({E, w + 1, EnvExpr::scale(EnvExpr::phi_of(y), (factor * G).scaled(Rat(-1)))});
    }
    if (c.p < c.N)
        raws.push_back(
            {E, c.p, EnvExpr::scale(EnvExpr::delta_of(EnvExpr::t_shift(w - 1, y)), Rat(-1))});
}

Stage step(const Ctx& c, const Stage& s, bool reverse,
           const std::vector<std::pair<unsigned long, unsigned long>>& new_targets) {
    std::vector<RawTerm> raws;

    if (reverse)
        split_gamma_q(c, s.y0, raws);
    else
        split_gamma(c, s.y0, raws);

    for (size_t i = 0; i < s.buckets.size(); ++i) {
        if (!s.buckets[i]) continue;
        auto [E, w] = s.targets[i];
        if (reverse)
            split_gamma_q_term(c, E, w, *s.buckets[i], raws);
        else
            split_gamma_term(c, E, w, *s.buckets[i], raws);
    }

    // Cross terms of the twisted addition law, identical for gamma and
    // gamma_q: sum over mixed compositions of p.
    std::vector<std::pair<std::pair<unsigned long, unsigned long>, const EnvExpr*>> zs;
    zs.push_back({{0, 0}, &s.y0});
    for (size_t i = 0; i < s.buckets.size(); ++i)
        if (s.buckets[i]) zs.push_back({s.targets[i], &*s.buckets[i]});
    if (zs.size() > 1) {
        std::vector<std::vector<unsigned long>> comps;
        std::vector<unsigned long> cur;
        compositions(c.p, zs.size(), cur, comps);
        for (const auto& k : comps) {
            bool concentrated = false;
            for (unsigned long ki : k)
                if (ki == c.p) concentrated = true;
            if (concentrated) continue;
            Int m = multinomial(c.p, k);
            Rat coeff = Rat(m) / Rat(c.P);
            coeff.canonicalize();
            unsigned long beta = 0, w = 0;
            std::vector<EnvExpr> factors;
            for (size_t i = 0; i < k.size(); ++i) {
                if (k[i] == 0) continue;
                beta += k[i] * zs[i].first.first;
                w += k[i] * zs[i].first.second;
                for (unsigned long r = 0; r < k[i]; ++r) factors.push_back(*zs[i].second);
            }
            raws.push_back({beta, w, EnvExpr::scale(EnvExpr::prod(factors), coeff)});
        }
    }

    // Classify each raw term into the smallest bucket it fits.
    std::vector<EnvExpr> y0_parts;
    std::vector<std::vector<EnvExpr>> bucket_parts(new_targets.size());
    for (auto& raw : raws) {
        if (raw.w >= c.N || raw.e.value().is_zero()) continue;
        if (raw.beta > c.a)
            throw ValuationBudgetExceeded(
                "valuation-budget-exceeded: witness term needs p^-" + std::to_string(raw.beta));
        if (raw.beta == 0) {
            EnvExpr e = EnvExpr::t_shift(raw.w, raw.e);
            y0_parts.push_back(std::move(e));
            continue;
        }
        bool placed = false;
        for (size_t i = 0; i < new_targets.size() && !placed; ++i) {
            auto [E, wi] = new_targets[i];
            if (E >= raw.beta && wi <= raw.w) {
                EnvExpr e = EnvExpr::t_shift(raw.w - wi, raw.e);
                if (E > raw.beta) e = EnvExpr::scale(e, Rat(ipow(c.P, E - raw.beta)));
                bucket_parts[i].push_back(std::move(e));
                placed = true;
            }
        }
        if (!placed)
            throw std::logic_error("witness bucket assignment failed (beta=" +
                                   std::to_string(raw.beta) + ", w=" + std::to_string(raw.w) + ")");
    }

    if (y0_parts.empty()) throw std::logic_error("witness principal part vanished");
    Stage out{y0_parts.size() == 1 ? y0_parts[0] : EnvExpr::sum(y0_parts), {}, new_targets};
    for (auto& parts : bucket_parts) {
        if (parts.empty())
            out.buckets.push_back(std::nullopt);
        else if (parts.size() == 1)
            out.buckets.push_back(parts[0]);
        else
            out.buckets.push_back(EnvExpr::sum(std::move(parts)));
    }
    return out;
}

std::vector<std::pair<unsigned long, unsigned long>> bucket_targets(unsigned long p,
                                                                    unsigned long count) {
    std::vector<std::pair<unsigned long, unsigned long>> ts;
    unsigned long E = 2;
    for (unsigned long i = 1; i <= count; ++i) {
        ts.push_back({E, (p - 2) + i});
        E = p * E + 2;
    }
    return ts;
}

DividedPowerWitness run(unsigned n, unsigned long p, unsigned long N, unsigned long a,
                        bool reverse, unsigned long bucket_count) {
    if (n == 0) throw std::invalid_argument("witness decomposition needs n >= 1");
    if (!is_prime(p)) throw std::invalid_argument("witness decomposition needs a prime p");
    Ctx c{p, N, a, Int(static_cast<long>(p))};

    Stage s{EnvExpr::gen(c.P, c.gens, c.N), {}, {}};
    for (unsigned i = 1; i <= n; ++i) {
        auto targets = bucket_targets(p, reverse ? bucket_count : i);
        s = step(c, s, reverse, targets);
    }

    bool flavour_ok = reverse ? s.y0.divided_power_classical() : s.y0.divided_power_q();
    if (!flavour_ok) throw std::logic_error("witness principal part lost its certificate");

    DividedPowerWitness w;
    w.n = n;
    w.p = c.P;
    w.trunc = N;
    w.budget = a;
    w.reverse = reverse;
    w.y0 = s.y0;
    for (size_t i = 0; i < s.targets.size(); ++i) {
        EnvExpr y = s.buckets[i] ? *s.buckets[i]
                                 : EnvExpr::atom(DeltaPoly(c.P, c.gens, c.N));
        w.terms.push_back({s.targets[i].first, s.targets[i].second, y});
    }
    return w;
}

}  // namespace

DeltaPoly DividedPowerWitness::combined() const {
    DeltaPoly acc = y0.value();
    for (const auto& term : terms) {
        DeltaPoly v = term.y.value().scaled(QSeries::t_power(trunc, term.t_order));
        acc += v.scaled(inv_p_power(p, term.exponent));
    }
    return acc;
}

bool DividedPowerWitness::verify_certificates() const {
    if (!(reverse ? y0.divided_power_classical() : y0.divided_power_q())) return false;
    if (!y0.verify()) return false;
    for (const auto& term : terms)
        if (!term.y.verify()) return false;
    return true;
}

DividedPowerWitness decompose_gamma_iterate(unsigned n, unsigned long p, unsigned long N,
                                            unsigned long a) {
    return run(n, p, N, a, false, n);
}

DividedPowerWitness decompose_gammaq_iterate(unsigned n, unsigned long p, unsigned long N,
                                             unsigned long a, unsigned long K) {
    unsigned long K_auto = gammaq_witness_length(p, N);
    DividedPowerWitness w = run(n, p, N, a, true, K_auto);
    if (K < K_auto) {
        for (size_t i = K; i < w.terms.size(); ++i)
            if (!w.terms[i].y.value().is_zero())
                throw InsufficientTruncation(
                    "insufficient-truncation: nonzero witness term beyond requested K");
        w.terms.resize(K);
    }
    return w;
}

unsigned long gammaq_witness_length(unsigned long p, unsigned long N) {
    // (p-2)+i <= N-1
    if (N + 1 <= p) return 0;
    return N + 1 - p;
}

DeltaPoly gamma_iterate_direct(unsigned n, unsigned long p, unsigned long N) {
    DeltaPoly f = DeltaPoly::generator(Int(static_cast<long>(p)), 1, N, 1);
    for (unsigned i = 0; i < n; ++i) f = gamma(f);
    return f;
}

DeltaPoly gammaq_iterate_direct(unsigned n, unsigned long p, unsigned long N) {
    DeltaPoly f = DeltaPoly::generator(Int(static_cast<long>(p)), 1, N, 1);
    for (unsigned i = 0; i < n; ++i) f = gamma_q(f);
    return f;
}

}  // namespace qcalc
