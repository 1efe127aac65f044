#include "qcalc/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcalc {

namespace {

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Report::Report(std::string suite, Json config)
    : suite_(std::move(suite)), config_(std::move(config)) {}

bool Report::pass() const {
    for (const CheckRecord& c : checks_)
        if (!c.pass) return false;
    return true;
}

Json Report::json() const {
    Json out;
    out["schema"] = kReportSchema;
    out["suite"] = suite_;
    out["library_version"] = kLibraryVersion;
    if (timestamps_) out["generated_at"] = utc_now();
    out["config"] = config_;
    Json checks = Json::array();
    for (const CheckRecord& c : checks_) {
        Json rec;
        rec["id"] = c.id;
        rec["pass"] = c.pass;
        if (timestamps_) rec["seconds"] = seconds_str(c.seconds);
        if (!c.detail.is_null()) rec["detail"] = c.detail;
        checks.push_back(std::move(rec));
    }
    out["checks"] = std::move(checks);
    out["pass"] = pass();
    return out;
}

std::string Report::str() const { return json().dump(2) + "\n"; }

void Report::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open report file: " + path);
    os << str();
}

std::string seconds_str(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", s);
    return buf;
}

Json int_matrix_json(const IntMat& M) {
    Json rows = Json::array();
    for (size_t i = 0; i < M.rows; ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < M.cols; ++j) row.push_back(M.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Json torsion_json(const std::vector<Int>& torsion) {
    Json t = Json::array();
    for (const Int& d : torsion) t.push_back(d.get_str());
    return t;
}

std::string join_longs(const std::vector<long>& v, char sep) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i];
    }
    return os.str();
}

std::string matrix_field(const IntMat& M) {
    std::ostringstream os;
    for (size_t i = 0; i < M.rows; ++i) {
        if (i) os << ';';
        for (size_t j = 0; j < M.cols; ++j) {
            if (j) os << '|';
            os << M.at(i, j).get_str();
        }
    }
    return os.str();
}

}  // namespace

Json cohomology_json(const CohomologyTable& t) {
    Json out;
    out["m"] = std::to_string(t.m);
    out["power"] = std::to_string(t.power);
    out["bockstein_square_zero"] = t.bockstein_square_zero;
    Json entries = Json::array();
    for (const auto& [key, e] : t.entries) {
        Json rec;
        Json deg = Json::array();
        for (long a : key.first) deg.push_back(std::to_string(a));
        rec["multidegree"] = std::move(deg);
        rec["j"] = std::to_string(key.second);
        rec["free_rank"] = std::to_string(e.free_rank);
        rec["torsion"] = torsion_json(e.torsion);
        rec["q_action"] = int_matrix_json(e.q_action);
        if (e.bockstein) rec["bockstein"] = int_matrix_json(*e.bockstein);
        entries.push_back(std::move(rec));
    }
    out["entries"] = std::move(entries);
    return out;
}

std::string cohomology_csv(const CohomologyTable& t) {
    std::ostringstream os;
    os << "multidegree,j,free_rank,torsion,q_action,bockstein\n";
    for (const auto& [key, e] : t.entries) {
        os << join_longs(key.first, ';') << ',' << key.second << ',' << e.free_rank << ',';
        for (size_t i = 0; i < e.torsion.size(); ++i) {
            if (i) os << '|';
            os << e.torsion[i].get_str();
        }
        os << ',' << matrix_field(e.q_action) << ',';
        if (e.bockstein) os << matrix_field(*e.bockstein);
        os << '\n';
    }
    return os.str();
}

}  // namespace qcalc
