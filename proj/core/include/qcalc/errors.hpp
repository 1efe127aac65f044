#pragma once
#include <stdexcept>
#include <string>

namespace qcalc {

// Error identifiers are stable strings; the CLI maps them into reports.

struct NotAUnit : std::domain_error {
    explicit NotAUnit(const std::string& what = "not-a-unit") : std::domain_error(what) {}
};

struct DivisionNotExact : std::domain_error {
    explicit DivisionNotExact(const std::string& what = "division-not-exact")
        : std::domain_error(what) {}
};

struct ValuationBudgetExceeded : std::domain_error {
    explicit ValuationBudgetExceeded(const std::string& what = "valuation-budget-exceeded")
        : std::domain_error(what) {}
};

struct InsufficientInputPrecision : std::runtime_error {
    explicit InsufficientInputPrecision(const std::string& what = "insufficient-input-precision")
        : std::runtime_error(what) {}
};

struct InsufficientTruncation : std::runtime_error {
    explicit InsufficientTruncation(const std::string& what = "insufficient-truncation")
        : std::runtime_error(what) {}
};

struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what = "window-too-small")
        : std::runtime_error(what) {}
};

struct UnboundedDegree : std::runtime_error {
    explicit UnboundedDegree(const std::string& what = "unbounded-degree")
        : std::runtime_error(what) {}
};

struct NonEtaleAtP : std::domain_error {
    explicit NonEtaleAtP(const std::string& what = "non-etale-at-p") : std::domain_error(what) {}
};

struct IndexMismatch : std::invalid_argument {
    explicit IndexMismatch(const std::string& what = "index-mismatch")
        : std::invalid_argument(what) {}
};

struct ZeroElement : std::domain_error {
    explicit ZeroElement(const std::string& what = "zero-element") : std::domain_error(what) {}
};

struct NotADivisor : std::invalid_argument {
    explicit NotADivisor(const std::string& what = "not-a-divisor")
        : std::invalid_argument(what) {}
};

struct BaseMismatch : std::invalid_argument {
    explicit BaseMismatch(const std::string& what = "base-mismatch")
        : std::invalid_argument(what) {}
};

struct TorsionAmbient : std::domain_error {
    explicit TorsionAmbient(const std::string& what = "torsion-ambient")
        : std::domain_error(what) {}
};

}  // namespace qcalc
