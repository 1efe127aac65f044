#include "qcalc/toric.hpp"

#include <stdexcept>

#include "qcalc/errors.hpp"
#include "qcalc/qanalog.hpp"

namespace qcalc {

void ToricAlgebraSpec::validate() const {
    if (n == 0) throw std::invalid_argument("toric spec needs at least one variable");
    if (laurent.size() != n || lo.size() != n || hi.size() != n)
        throw std::invalid_argument("toric spec field lengths disagree with n");
    for (unsigned i = 0; i < n; ++i) {
        if (lo[i] > hi[i]) throw WindowTooSmall("window-too-small: empty multidegree box");
        if (!laurent[i] && lo[i] < 0)
            throw WindowTooSmall(
                "window-too-small: polynomial variable with negative multidegrees");
    }
}

std::vector<std::vector<long>> ToricAlgebraSpec::multidegrees() const {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(lo);
    while (true) {
        out.push_back(cur);
        unsigned i = n;
        while (i-- > 0) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                for (unsigned r = i + 1; r < n; ++r) cur[r] = lo[r];
                break;
            }
            if (i == 0) return out;
        }
    }
}

bool ToricAlgebraSpec::contains(const std::vector<long>& a) const {
    if (a.size() != n) return false;
    for (unsigned i = 0; i < n; ++i)
        if (a[i] < lo[i] || a[i] > hi[i]) return false;
    return true;
}

QKoszul::QKoszul(ToricAlgebraSpec spec, Flavor flavor, BaseRing base)
    : spec_(std::move(spec)), flavor_(flavor), base_(base) {
    spec_.validate();
    if (base_.truncated && base_.m == 0)
        throw std::invalid_argument("truncated base needs m >= 1");
}

ZqPoly QKoszul::scalar(const std::vector<long>& a, unsigned i) const {
    if (!spec_.contains(a)) throw WindowTooSmall("window-too-small: multidegree outside box");
    if (flavor_ == Flavor::qdeRham) return q_integer(a[i]);
    return ZqPoly::monomial(Int(1), a[i]) - ZqPoly(1);  // q^{a_i} - 1
}

std::vector<ZqPoly> QKoszul::scalars(const std::vector<long>& a) const {
    std::vector<ZqPoly> s;
    s.reserve(spec_.n);
    for (unsigned i = 0; i < spec_.n; ++i) s.push_back(scalar(a, i));
    return s;
}

std::vector<unsigned> koszul_subsets(unsigned n, unsigned j) {
    std::vector<unsigned> masks;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (static_cast<unsigned>(__builtin_popcount(mask)) == j) masks.push_back(mask);
    return masks;
}

int koszul_sign(unsigned mask_s, unsigned i) {
    // parity of |{j in S : j < i}|
    unsigned below = mask_s & ((1u << i) - 1);
    return __builtin_popcount(below) % 2 == 0 ? 1 : -1;
}

bool QKoszul::verify_d_squared(const std::vector<long>& a) const {
    std::vector<ZqPoly> s = scalars(a);
    unsigned n = spec_.n;
    for (unsigned j = 0; j + 2 <= n; ++j) {
        std::vector<unsigned> from = koszul_subsets(n, j), to = koszul_subsets(n, j + 2);
        for (unsigned mask_t : to)
            for (unsigned mask_s : from) {
                if ((mask_s & mask_t) != mask_s) continue;
                // two intermediate insertions; their signed contributions cancel
                ZqPoly acc;
                for (unsigned i = 0; i < n; ++i) {
                    if (!((mask_t >> i) & 1u) || ((mask_s >> i) & 1u)) continue;
                    unsigned mid = mask_s | (1u << i);
                    unsigned rest = mask_t & ~mid;
                    unsigned l = static_cast<unsigned>(__builtin_ctz(rest));
                    ZqPoly term = s[i] * s[l];
                    int sg = koszul_sign(mask_s, i) * koszul_sign(mid, l);
                    acc += sg > 0 ? term : -term;
                }
                if (!acc.is_zero()) return false;
            }
    }
    return true;
}

QKoszul build_complex(const ToricAlgebraSpec& spec, Flavor flavor, BaseRing base) {
    return QKoszul(spec, flavor, base);
}

QKoszul tensor(const QKoszul& k1, const QKoszul& k2) {
    if (k1.flavor() != k2.flavor() || !(k1.base() == k2.base()))
        throw BaseMismatch("base-mismatch: tensor factors disagree in flavor or base ring");
    ToricAlgebraSpec s;
    s.n = k1.spec().n + k2.spec().n;
    auto app = [&s](const ToricAlgebraSpec& t) {
        s.laurent.insert(s.laurent.end(), t.laurent.begin(), t.laurent.end());
        s.lo.insert(s.lo.end(), t.lo.begin(), t.lo.end());
        s.hi.insert(s.hi.end(), t.hi.begin(), t.hi.end());
    };
    app(k1.spec());
    app(k2.spec());
    return QKoszul(s, k1.flavor(), k1.base());
}

}  // namespace qcalc
