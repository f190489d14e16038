#pragma once

#include <chrono>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tldimer/sparse.hpp"
#include "tldimer/spin_chain.hpp"
#include "tldimer/structure.hpp"
#include "tldimer/version.hpp"

namespace tldimer {

struct Check {
    std::string name;
    std::string status;  // pass | fail | skipped
    nlohmann::json predicted;
    nlohmann::json computed;
    std::string witness;
};

struct Report {
    std::string command;
    std::map<std::string, std::string> params;
    std::vector<Check> checks;
    long elapsed_ms = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }

    void add(std::string name, nlohmann::json predicted, nlohmann::json computed,
             std::string witness = "") {
        Check c;
        c.name = std::move(name);
        c.status = (predicted == computed) ? "pass" : "fail";
        c.predicted = std::move(predicted);
        c.computed = std::move(computed);
        c.witness = std::move(witness);
        checks.push_back(std::move(c));
    }
    void add_flag(std::string name, bool pass, std::string witness = "") {
        Check c;
        c.name = std::move(name);
        c.status = pass ? "pass" : "fail";
        c.predicted = true;
        c.computed = pass;
        c.witness = std::move(witness);
        checks.push_back(std::move(c));
    }
    void add_skipped(std::string name, std::string witness = "") {
        checks.push_back({std::move(name), "skipped", nullptr, nullptr, std::move(witness)});
    }
    // informational row: no prediction, always passing
    void add_info(std::string name, nlohmann::json computed, std::string witness = "") {
        checks.push_back({std::move(name), "pass", nullptr, std::move(computed), std::move(witness)});
    }

    // stable mode strips timing and version for golden-file comparison
    nlohmann::json to_json(bool stable) const {
        nlohmann::json j;
        if (!stable) {
            j["tool_version"] = kVersion;
            j["elapsed_ms"] = elapsed_ms;
        }
        j["schema_version"] = kReportSchemaVersion;
        j["command"] = command;
        j["params"] = params;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json jc;
            jc["name"] = c.name;
            jc["status"] = c.status;
            if (!c.predicted.is_null()) jc["predicted"] = c.predicted;
            if (!c.computed.is_null()) jc["computed"] = c.computed;
            if (!c.witness.empty()) jc["witness"] = c.witness;
            j["checks"].push_back(jc);
        }
        return j;
    }

    void print_text(std::ostream& os) const {
        for (const auto& c : checks) {
            os << "[" << c.status << "] " << c.name;
            if (!c.predicted.is_null())
                os << "  predicted=" << c.predicted.dump() << " computed=" << c.computed.dump();
            else if (!c.computed.is_null())
                os << "  " << c.computed.dump();
            if (!c.witness.empty()) os << "  (" << c.witness << ")";
            os << "\n";
        }
    }
};

inline nlohmann::json certificate_to_json(const RankCertificate& cert) {
    nlohmann::json j;
    j["n"] = cert.n;
    j["two_v"] = cert.two_v;
    j["facts"] = nlohmann::json::array();
    for (const auto& f : cert.facts) {
        j["facts"].push_back({{"name", f.name},
                              {"predicted", f.predicted.get_str()},
                              {"computed", f.computed.get_str()}});
    }
    j["status"] = cert.pass() ? "pass" : "fail";
    j["evidence_level"] = cert.evidence_level;
    return j;
}

template <class T>
nlohmann::json matrix_to_json(const SparseMat<T>& m);

template <>
inline nlohmann::json matrix_to_json(const SparseMat<Rational>& m) {
    nlohmann::json j;
    j["nrows"] = m.nrows();
    j["ncols"] = m.ncols();
    j["entries"] = nlohmann::json::array();
    for (const auto& e : m.entries())
        j["entries"].push_back({e.row, e.col, rational_str(e.val)});
    return j;
}

template <>
inline nlohmann::json matrix_to_json(const SparseMat<AlphaPoly>& m) {
    nlohmann::json j;
    j["nrows"] = m.nrows();
    j["ncols"] = m.ncols();
    j["entries"] = nlohmann::json::array();
    for (const auto& e : m.entries())
        j["entries"].push_back({e.row, e.col, e.val.coeff_strings()});
    return j;
}

inline nlohmann::json poly_to_json(const AlphaPoly& p) { return p.coeff_strings(); }

inline nlohmann::json spin_state_to_json(const SpinBasisState& s) {
    return {{"n_sites", s.n_sites}, {"bits", s.bits}};
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace tldimer
