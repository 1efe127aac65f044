#include "qcalc/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qcalc {

namespace {

ZqPoly compute_cyclotomic(unsigned long m, const std::map<unsigned long, ZqPoly>& cache);

// q^m - 1
ZqPoly qm_minus_one(unsigned long m) {
    return ZqPoly::monomial(Int(1), static_cast<long>(m)) - ZqPoly(1);
}

ZqPoly compute_cyclotomic(unsigned long m, const std::map<unsigned long, ZqPoly>& cache) {
    ZqPoly num = qm_minus_one(m);
    for (unsigned long d : divisors(m)) {
        if (d == m) continue;
        num = num.divexact(cache.at(d));
    }
    return num;
}

}  // namespace

const ZqPoly& cyclotomic(unsigned long m) {
    if (m == 0) throw std::invalid_argument("cyclotomic: index must be positive");
    static std::map<unsigned long, ZqPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    // fill all proper divisors first (ascending, so dependencies exist)
    for (unsigned long d : divisors(m))
        if (!cache.count(d)) cache.emplace(d, compute_cyclotomic(d, cache));
    return cache.at(m);
}

unsigned long totient(unsigned long m) {
    unsigned long t = m;
    for (auto [p, e] : factorize(m)) {
        (void)e;
        t -= t / p;
    }
    return t;
}

}  // namespace qcalc
