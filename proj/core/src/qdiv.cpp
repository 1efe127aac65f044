#include "qcalc/qdiv.hpp"

#include <sstream>
#include <stdexcept>

#include "qcalc/cyclotomic.hpp"
#include "qcalc/errors.hpp"
#include "qcalc/linalg.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

namespace {

unsigned long pow_ul(unsigned long b, unsigned long e) {
    unsigned long r = 1;
    while (e--) r *= b;
    return r;
}

// [n]_{q^p}! = prod_{k=1}^n [k]_{q^p}
ZqPoly twisted_q_factorial(unsigned long n, unsigned long p) {
    ZqPoly r(1);
    for (unsigned long k = 1; k <= n; ++k)
        r *= q_integer(static_cast<long>(k)).substitute_qpow(static_cast<long>(p));
    return r;
}

}  // namespace

QDivModule::QDivModule(unsigned long p, unsigned long depth, unsigned long max_numerator,
                       Precision pr)
    : p_(p), s_(depth), max_num_(max_numerator), den_(pow_ul(p, depth)), pr_(pr) {
    if (!pr_.has_char() || pr_.char_part->first != Int(static_cast<long>(p)))
        throw std::invalid_argument("divided-power module needs coefficients mod a power of p");
    if (pr_.kind != ModKind::cyclotomic || pr_.index != 1)
        throw std::invalid_argument("divided-power module works over Z[q]/(p^a, (q-1)^N)");
}

void QDivModule::set_coeff(unsigned long numerator, const LocalElement& v) {
    if (numerator > max_num_) throw IndexMismatch("index-mismatch: numerator beyond module window");
    if (v.is_zero()) {
        c_.erase(numerator);
        return;
    }
    if (v.precision() != pr_)
        throw std::invalid_argument("coefficient precision differs from the module's");
    c_.insert_or_assign(numerator, v);
}

LocalElement QDivModule::coeff(unsigned long numerator) const {
    auto it = c_.find(numerator);
    return it == c_.end() ? LocalElement(pr_, ZqPoly()) : it->second;
}

QDivModule& QDivModule::operator+=(const QDivModule& o) {
    if (p_ != o.p_ || s_ != o.s_ || pr_ != o.pr_)
        throw std::invalid_argument("divided-power module shapes differ");
    if (o.max_num_ > max_num_) max_num_ = o.max_num_;
    for (const auto& [nu, v] : o.c_) {
        auto it = c_.find(nu);
        if (it == c_.end()) {
            c_.emplace(nu, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

QDivModule QDivModule::operator*(const QDivModule& o) const {
    if (p_ != o.p_ || s_ != o.s_ || pr_ != o.pr_)
        throw std::invalid_argument("divided-power module shapes differ");
    QDivModule r(p_, s_, max_num_ + o.max_num_, pr_);
    for (const auto& [nu1, v1] : c_)
        for (const auto& [nu2, v2] : o.c_) {
            unsigned long f1 = nu1 / den_, f2 = nu2 / den_, fs = (nu1 + nu2) / den_;
            // b_i b_j = ([floor(i+j)]_q! / ([floor(i)]_q! [floor(j)]_q!)) b_{i+j};
            // the ratio is a polynomial (a Gaussian binomial times at most one
            // extra q-integer), so exact division never fails here.
            ZqPoly ratio = q_factorial(fs).divexact(q_factorial(f1) * q_factorial(f2));
            LocalElement term = v1 * v2 * LocalElement(pr_, ratio);
            if (term.is_zero()) continue;
            auto it = r.c_.find(nu1 + nu2);
            if (it == r.c_.end()) {
                r.c_.emplace(nu1 + nu2, term);
            } else {
                it->second += term;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    return r;
}

namespace {

/* Divisibility by g in Z[q]/(p^a, (q-1)^N): solvability of the N x (N + N)
 * system [mult-by-g | p^a I] z = coords(x) over Z. */
class DivisibilityTest {
  public:
    DivisibilityTest(const Precision& pr, const ZqPoly& g) : n_(pr.length) {
        Int pa = pr.char_modulus();
        IntMat m(n_, 2 * n_);
        for (size_t j = 0; j < n_; ++j) {
            LocalElement col =
                LocalElement(pr, g) * LocalElement::q_power(pr, static_cast<long>(j));
            for (size_t i = 0; i < n_; ++i) m.at(i, j) = col.rep().coeff(static_cast<long>(i));
            m.at(j, n_ + j) = pa;
        }
        solver_.emplace(std::move(m));
    }

    bool divides(const LocalElement& x) const {
        std::vector<Int> b(n_);
        for (size_t i = 0; i < n_; ++i) b[i] = x.rep().coeff(static_cast<long>(i));
        return solver_->contains(b);
    }

  private:
    size_t n_;
    std::optional<SpanSolver> solver_;
};

}  // namespace

unsigned long nygaard_level(const QDivModule& e) {
    if (e.is_zero()) throw ZeroElement("zero-element: every filtration level contains zero");
    const Precision& pr = e.precision();
    unsigned long a = pr.char_part->second, N = pr.length;
    unsigned long floor_max = e.max_numerator() / pow_ul(e.p(), e.depth());
    unsigned long cap = floor_max + a + N + 2;

    // Per coefficient, the largest k with Phi_p^k | v; the level is then
    // min over coefficients of (k + floor(i)), clamped by the cap.
    const ZqPoly& phi = cyclotomic(e.p());
    unsigned long level = cap;
    for (const auto& [nu, v] : e.coeffs()) {
        unsigned long k = 0;
        ZqPoly phi_pow(1);
        while (k < cap) {
            phi_pow *= phi;
            if (!DivisibilityTest(pr, phi_pow).divides(v)) break;
            ++k;
        }
        unsigned long bound = k + e.floor_index(nu);
        if (bound < level) level = bound;
    }
    return level;
}

namespace {

// Flattens the window (numerators 0..M, q-degrees 0..N-1) into Z^{(M+1)N}.
std::vector<Int> flatten(const QDivModule& e, unsigned long M, unsigned long N) {
    std::vector<Int> v((M + 1) * N, Int(0));
    for (const auto& [nu, c] : e.coeffs()) {
        if (nu > M) continue;
        for (unsigned long i = 0; i < N; ++i) v[nu * N + i] = c.rep().coeff(static_cast<long>(i));
    }
    return v;
}

// True when the product stays inside the window (so flattening loses nothing).
bool fits_window(const QDivModule& e, unsigned long M) {
    for (const auto& [nu, c] : e.coeffs()) {
        (void)c;
        if (nu > M) return false;
    }
    return true;
}

struct SaturationResult {
    bool contained = false;
    unsigned long exponent = 0;  // minimal k with p^k * target in the span
};

SaturationResult saturate(const SpanSolver& span, std::vector<Int> b, unsigned long p,
                          unsigned long k_max) {
    for (unsigned long k = 0; k <= k_max; ++k) {
        if (span.contains(b)) return {true, k};
        for (Int& x : b) x *= static_cast<long>(p);
    }
    return {false, 0};
}

}  // namespace

NygaardImageReport nygaard_rationalised_image(unsigned long n, unsigned long p, unsigned long a,
                                              unsigned long N, unsigned long i_max) {
    if (n == 0) throw std::invalid_argument("filtration level must be >= 1");
    Precision pr = Precision::cyclo(Int(static_cast<long>(p)), a, 1, N);
    const unsigned long M = i_max * p;  // depth-1 grid: numerators 0..M
    const unsigned long dim = (M + 1) * N;
    const ZqPoly& phi = cyclotomic(p);

    NygaardImageReport rep;
    rep.n = n;
    rep.p = p;
    rep.a = a;
    rep.N = N;
    rep.i_max = i_max;

    // Spanning set of the level-n piece: Phi^{max(n - floor(i), 0)} t^c b_i.
    std::vector<std::vector<Int>> fil_cols;
    for (unsigned long nu = 0; nu <= M; ++nu) {
        unsigned long fl = nu / p;
        unsigned long k = n > fl ? n - fl : 0;
        for (unsigned long c = 0; c < N; ++c) {
            ZqPoly val = phi.pow(k) * ZqPoly::from_coeffs(0, {Int(-1), Int(1)}).pow(c);
            QDivModule e(p, 1, M, pr);
            e.set_coeff(nu, LocalElement(pr, val));
            if (!e.is_zero()) fil_cols.push_back(flatten(e, M, N));
        }
    }

    /* Module multiples of the ideal generators g_j = x^j Phi^{n-j} (that is,
     * [j]_q! Phi^{n-j} b_j): g_j * (t^c b_k) over the same window.  Products
     * that leave the window are skipped rather than truncated. */
    std::vector<std::vector<Int>> ideal_cols;
    for (unsigned long j = 0; j <= n && j <= i_max; ++j) {
        QDivModule gj(p, 1, M, pr);
        gj.set_coeff(j * p, LocalElement(pr, q_factorial(j) * phi.pow(n - j)));
        std::ostringstream lbl;
        lbl << "x^" << j << "*Phi_" << p << "^" << (n - j);
        rep.generators.push_back(lbl.str());
        for (unsigned long nu = 0; nu + j * p <= M; ++nu)
            for (unsigned long c = 0; c < N; ++c) {
                QDivModule m(p, 1, M, pr);
                m.set_coeff(nu, LocalElement(pr, ZqPoly::from_coeffs(0, {Int(-1), Int(1)}).pow(c)));
                QDivModule prod = gj * m;
                if (prod.is_zero() || !fits_window(prod, M)) continue;
                ideal_cols.push_back(flatten(prod, M, N));
            }
    }

    Int pa = pr.char_modulus();
    auto build_solver = [&](const std::vector<std::vector<Int>>& cols) {
        IntMat mat(dim, cols.size() + dim);
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < dim; ++i) mat.at(i, j) = cols[j][i];
        for (size_t i = 0; i < dim; ++i) mat.at(i, cols.size() + i) = pa;
        return SpanSolver(std::move(mat));
    };
    SpanSolver ideal_span = build_solver(ideal_cols);
    SpanSolver fil_span = build_solver(fil_cols);

    unsigned long k_max = a > 0 ? a - 1 : 0;
    rep.span_in_ideal = true;
    for (const auto& col : fil_cols) {
        SaturationResult s = saturate(ideal_span, col, p, k_max);
        if (!s.contained) {
            rep.span_in_ideal = false;
            break;
        }
        if (s.exponent > rep.max_denominator_exponent) rep.max_denominator_exponent = s.exponent;
    }
    rep.ideal_in_span = true;
    for (const auto& col : ideal_cols) {
        SaturationResult s = saturate(fil_span, col, p, k_max);
        if (!s.contained) {
            rep.ideal_in_span = false;
            break;
        }
        if (s.exponent > rep.max_denominator_exponent) rep.max_denominator_exponent = s.exponent;
    }
    return rep;
}

ZqPoly q_factorial_unit_ratio(unsigned long p, unsigned long n) {
    ZqPoly divisor = twisted_q_factorial(n, p) * cyclotomic(p).pow(n);
    auto [quot, rem] = q_factorial(p * n).divmod(divisor);
    if (!rem.is_zero())
        throw DivisionNotExact("division-not-exact: [pn]_q! is not a multiple of [n]_{q^p}! Phi_p^n");
    return quot;
}

PhiDividedReport phi_divided_power_divisibility(unsigned long n, unsigned long p) {
    PhiDividedReport rep;
    rep.n = n;
    rep.p = p;

    ZqPoly divisor = twisted_q_factorial(n, p) * cyclotomic(p).pow(n);
    auto [quot, rem] = q_factorial(p * n).divmod(divisor);
    rep.ratio_exact = rem.is_zero();
    rep.unit_ratio = quot;
    rep.unit_value_at_one = quot.eval_at_one();
    rep.unit_at_one = rep.unit_value_at_one % Int(static_cast<long>(p)) != 0;

    Int nf(1);
    for (unsigned long k = 2; k <= n; ++k) nf *= static_cast<long>(k);
    ZqPoly diff = twisted_q_factorial(n, p) - ZqPoly(nf);
    rep.congruence = diff.is_zero() || diff.divmod(cyclotomic(p)).second.is_zero();
    return rep;
}

}  // namespace qcalc
