#include "qcalc/habiro_element.hpp"

#include <algorithm>

#include "qcalc/errors.hpp"

namespace qcalc {

namespace {

std::vector<unsigned long> normalised_indices(std::vector<unsigned long> idx) {
    if (idx.empty()) throw std::invalid_argument("index set must be nonempty");
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.front() == 0) throw std::invalid_argument("indices must be positive");
    for (unsigned long m : idx)
        for (unsigned long d : divisors(m))
            if (!std::binary_search(idx.begin(), idx.end(), d))
                throw std::invalid_argument("index set is not divisor-closed");
    return idx;
}

}  // namespace

HabiroElement::HabiroElement(std::vector<unsigned long> indices,
                             std::map<unsigned long, RootSeries> components)
    : indices_(normalised_indices(std::move(indices))), comps_(std::move(components)) {
    for (unsigned long m : indices_) {
        auto it = comps_.find(m);
        if (it == comps_.end()) throw IndexMismatch("missing component at index " + std::to_string(m));
        if (it->second.center != m)
            throw std::invalid_argument("component centered at the wrong root");
    }
    if (comps_.size() != indices_.size())
        throw IndexMismatch("component keys outside the index set");
}

const RootSeries& HabiroElement::component(unsigned long m) const {
    auto it = comps_.find(m);
    if (it == comps_.end()) throw IndexMismatch("no component at index " + std::to_string(m));
    return it->second;
}

HabiroElement HabiroElement::operator+(const HabiroElement& o) const {
    if (indices_ != o.indices_) throw IndexMismatch("operands index different root families");
    std::map<unsigned long, RootSeries> out;
    for (unsigned long m : indices_)
        out.emplace(m, root_series_add(component(m), o.component(m)));
    return HabiroElement(indices_, std::move(out));
}

HabiroElement HabiroElement::operator*(const HabiroElement& o) const {
    if (indices_ != o.indices_) throw IndexMismatch("operands index different root families");
    std::map<unsigned long, RootSeries> out;
    for (unsigned long m : indices_)
        out.emplace(m, root_series_mul(component(m), o.component(m)));
    return HabiroElement(indices_, std::move(out));
}

const std::vector<ConsistencyRecord>& HabiroElement::validate(unsigned long a,
                                                              unsigned long terms) {
    ledger_.clear();
    for (unsigned long pm : indices_) {
        for (auto [p, e] : factorize(pm)) {
            (void)e;
            ledger_.push_back(consistency_check(*this, p, pm / p, a, terms));
        }
    }
    validated_ = true;
    return ledger_;
}

bool HabiroElement::consistent() const {
    if (!validated_) return false;
    for (const auto& r : ledger_)
        if (!r.pass) return false;
    return true;
}

ConsistencyRecord consistency_check(const HabiroElement& E, unsigned long p, unsigned long m,
                                    unsigned long a, unsigned long terms) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (a == 0 || terms == 0) throw std::invalid_argument("precision must be positive");
    const RootSeries& at_m = E.component(m);       // IndexMismatch if absent
    const RootSeries& at_pm = E.component(p * m);  // likewise

    RootSeries lhs = reduce_char(embed_coefficients(at_m, p * m), Int(static_cast<long>(p)), a);
    RootSeries rhs = reexpand_root(at_pm, Int(static_cast<long>(p)), a, terms);

    ConsistencyRecord rec;
    rec.p = p;
    rec.m = m;
    rec.a = a;
    rec.terms = terms;
    rec.first_mismatch = root_series_mismatch(lhs, rhs, terms);
    rec.pass = rec.first_mismatch < 0;
    return rec;
}

HabiroElement habiro_from_poly(const ZqPoly& f, const std::vector<unsigned long>& M,
                               unsigned long terms, unsigned long a) {
    if (terms == 0) throw std::invalid_argument("terms must be positive");
    // For a genuine polynomial, expanding past its degree captures the whole
    // tail and later recentering never runs out of input.
    unsigned long keep = terms;
    if (!f.is_zero() && f.low() >= 0 && f.high() >= 0)
        keep = std::max<unsigned long>(terms, static_cast<unsigned long>(f.high()) + 1);
    std::map<unsigned long, RootSeries> comps;
    std::vector<unsigned long> idx = M;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (unsigned long m : idx) comps.emplace(m, taylor_at_root(f, m, keep));
    HabiroElement E(idx, std::move(comps));
    E.validate(a, terms);
    return E;
}

}  // namespace qcalc
