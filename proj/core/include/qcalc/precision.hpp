#pragma once
#include <optional>
#include <utility>

#include "qcalc/integer.hpp"
#include "qcalc/zqpoly.hpp"

namespace qcalc {

// Which polynomial the q-direction is truncated against.
enum class ModKind {
    cyclotomic,        // Phi_m(q)^N
    q_power_minus_one, // (q^m - 1)^N
    root_offset,       // power series in (q - zeta_m), N coefficients
};

// Working modulus (p^a, f(q)^N).  The p-part is optional: absent means exact
// integer coefficients.  For root_offset there is no single polynomial modulus;
// N counts retained series coefficients instead.
struct Precision {
    std::optional<std::pair<Int, unsigned long>> char_part;  // (p, a)
    ModKind kind = ModKind::cyclotomic;
    unsigned long index = 1;  // the m above
    unsigned long length = 1; // the N above

    static void check_char(const Int& p, unsigned long a) {
        if (a == 0) throw std::invalid_argument("characteristic exponent must be >= 1");
        if (!p.fits_ulong_p() || !is_prime(p.get_ui()))
            throw std::invalid_argument("characteristic base must be prime");
    }
    static Precision cyclo(unsigned long m, unsigned long N) {
        return {std::nullopt, ModKind::cyclotomic, m, N};
    }
    static Precision cyclo(const Int& p, unsigned long a, unsigned long m, unsigned long N) {
        check_char(p, a);
        return {std::make_pair(p, a), ModKind::cyclotomic, m, N};
    }
    static Precision qpow(unsigned long m, unsigned long N) {
        return {std::nullopt, ModKind::q_power_minus_one, m, N};
    }
    static Precision qpow(const Int& p, unsigned long a, unsigned long m, unsigned long N) {
        check_char(p, a);
        return {std::make_pair(p, a), ModKind::q_power_minus_one, m, N};
    }

    bool has_char() const { return char_part.has_value(); }
    // p^a, or 0 when no characteristic truncation is in force.
    Int char_modulus() const;

    // Phi_m or q^m - 1; throws for root_offset.
    const ZqPoly& base_poly() const;
    ZqPoly modulus_poly() const;  // base_poly()^length

    bool operator==(const Precision& o) const {
        return char_part == o.char_part && kind == o.kind && index == o.index &&
               length == o.length;
    }
    bool operator!=(const Precision& o) const { return !(*this == o); }
};

}  // namespace qcalc
