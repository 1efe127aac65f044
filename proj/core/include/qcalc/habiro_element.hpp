#pragma once
#include <map>
#include <vector>

#include "qcalc/root_series.hpp"
#include "qcalc/zqpoly.hpp"

namespace qcalc {

/* Outcome of one compatibility check between adjacent expansions: the
 * zeta_m-expansion, pushed into Z[zeta_pm] and reduced mod p^a, against the
 * zeta_pm-expansion recentered at zeta_m.  first_mismatch is the earliest
 * coefficient index where they differ, -1 when they agree through `terms`. */
struct ConsistencyRecord {
    unsigned long p = 0;
    unsigned long m = 0;
    unsigned long a = 0;
    unsigned long terms = 0;
    bool pass = false;
    long first_mismatch = -1;
};

/* Finite divisor-closed family of expansions at roots of unity, one per
 * index, standing in for an element of the completed ring of which such
 * families are the affine points.  Components combine componentwise under
 * ring operations; compatibility across indices is not maintained eagerly
 * but re-established by validate(), which records one ConsistencyRecord per
 * adjacent pair (m, pm) present in the family. */
class HabiroElement {
  public:
    // indices must be divisor-closed and each keyed series centered at its key.
    HabiroElement(std::vector<unsigned long> indices,
                  std::map<unsigned long, RootSeries> components);

    const std::vector<unsigned long>& indices() const { return indices_; }
    const RootSeries& component(unsigned long m) const;  // IndexMismatch if absent

    HabiroElement operator+(const HabiroElement& o) const;
    HabiroElement operator*(const HabiroElement& o) const;

    /* Runs every adjacent-pair check at characteristic precision p^a and
     * series precision `terms`, replacing the ledger.  Returns it. */
    const std::vector<ConsistencyRecord>& validate(unsigned long a, unsigned long terms);
    const std::vector<ConsistencyRecord>& ledger() const { return ledger_; }
    /* True when validate() has run and every recorded check passed.  A family
     * with no adjacent pairs (indices {1} only) is vacuously consistent. */
    bool consistent() const;

  private:
    std::vector<unsigned long> indices_;
    std::map<unsigned long, RootSeries> comps_;
    std::vector<ConsistencyRecord> ledger_;
    bool validated_ = false;
};

/* Single compatibility check for the pair (m, pm); both indices must be in
 * the family and p must be prime.  Works in (Z/p^a)[zeta_pm][[q - zeta_m]]
 * truncated after `terms` coefficients. */
ConsistencyRecord consistency_check(const HabiroElement& E, unsigned long p, unsigned long m,
                                    unsigned long a, unsigned long terms);

/* Expand a Laurent polynomial at every index in M (which must be
 * divisor-closed), keep `terms` coefficients per expansion, and validate at
 * characteristic precision p^a for each applicable prime.  The expansions of
 * a polynomial are exact, so `terms` only bounds what is stored up front. */
HabiroElement habiro_from_poly(const ZqPoly& f, const std::vector<unsigned long>& M,
                               unsigned long terms, unsigned long a = 4);

}  // namespace qcalc
