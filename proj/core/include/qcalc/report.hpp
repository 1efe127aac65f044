#pragma once
/* JSON/CSV report envelope shared by the CLI subcommands.  Reports are
 * deterministic: fields keep insertion order (nlohmann::ordered_json), table
 * entries follow their canonical key order, and every integer is emitted as a
 * decimal string so the bytes do not depend on the JSON library's number
 * formatting.  With timestamps disabled the output depends only on the
 * configuration and the library version. */
#include <string>
#include <vector>

#include <json.hpp>

#include "qcalc/cohomology.hpp"
#include "qcalc/integer.hpp"
#include "qcalc/linalg.hpp"

namespace qcalc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "qcalc-report/1";
inline constexpr const char* kLibraryVersion = "0.1.0";

struct CheckRecord {
    std::string id;
    bool pass = false;
    double seconds = 0.0;
    Json detail;  // witness on success, counterexample on failure
};

class Report {
  public:
    explicit Report(std::string suite, Json config = Json::object());

    void add(CheckRecord rec) { checks_.push_back(std::move(rec)); }
    /* Timestamps cover the header date and the per-check wall times; both are
     * dropped together so that two runs with the same configuration produce
     * identical bytes. */
    void set_timestamps(bool on) { timestamps_ = on; }

    bool pass() const;
    const std::vector<CheckRecord>& checks() const { return checks_; }
    const std::string& suite() const { return suite_; }

    Json json() const;
    std::string str() const;  // json() with two-space indent and a final newline
    void write(const std::string& path) const;

  private:
    std::string suite_;
    Json config_;
    std::vector<CheckRecord> checks_;
    bool timestamps_ = true;
};

// wall time with fixed precision, e.g. "0.003120"
std::string seconds_str(double s);

// rows of decimal strings; an empty matrix becomes []
Json int_matrix_json(const IntMat& M);

/* One object per (multidegree, j) entry, in table order: multidegree, j,
 * free_rank, torsion (list of decimal strings), q_action, and bockstein when
 * present. */
Json cohomology_json(const CohomologyTable& t);

/* Flat CSV with header
 *   multidegree,j,free_rank,torsion,q_action,bockstein
 * one row per entry in table order.  Multidegrees are ";"-joined, torsion
 * "|"-joined, matrices row-major with "|" between entries and ";" between
 * rows; a missing bockstein is an empty field. */
std::string cohomology_csv(const CohomologyTable& t);

}  // namespace qcalc
