#pragma once
/* Self-contained verification suite: each check exercises one slice of the
 * library against an independent oracle (closed forms, brute-force
 * recomputation, or direct expansion) and reports a witness or the first
 * counterexample.  The CLI's verify-all subcommand and the acceptance test
 * binary both run these. */
#include <string>
#include <vector>

#include "qcalc/report.hpp"

namespace qcalc {

struct CheckResult {
    std::string id;
    bool pass = false;
    double seconds = 0.0;  // wall time of the check body
    Json detail;
};

CheckResult check_cyclotomic_product();       // prod_{d|m} Phi_d == q^m - 1, m <= 200
CheckResult check_delta_operator_laws();      // sum/product rules, splitting, closed form
CheckResult check_gamma_witnesses();          // divided-power decompositions vs direct expansion
CheckResult check_twisted_divided_powers();   // gamma_q-tilde certificates and the alpha=1 obstruction
CheckResult check_nygaard_divisibility();     // rationalised image and q-factorial unit ratios
CheckResult check_cohomology_vs_naive();      // SNF tables against the brute-force rank-one oracle
CheckResult check_decalage_comparison();      // decalage of q-Hodge vs q-de Rham, mod (q-1)^k
CheckResult check_bockstein_relations();      // beta^2 = 0, level-one scaling, Frobenius intertwining
CheckResult check_habiro_consistency();       // root-family expansions of random polynomials
CheckResult check_relative_habiro_gluing();   // etale base rings: lifts, gluing squares, q-Witt
CheckResult check_ladder_resolution();        // resolution window, Nakayama probe, stabilisation
CheckResult check_rational_qpartial();        // q-derivative against [k]_q x^{k-1}

// all of the above, in the listed order
std::vector<CheckResult> run_all_checks();

Report verification_report(const std::vector<CheckResult>& results,
                           Json config = Json::object());

}  // namespace qcalc
