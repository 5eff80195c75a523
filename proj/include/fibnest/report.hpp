#pragma once

// Inequality check outcomes with exact sides, and their JSON / CSV forms.

#include "fibnest/exact.hpp"
#include "fibnest/surd.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace fibnest {

/// Digits in every decimal convenience field.
inline constexpr unsigned kReportDigits = 50;

/// One checked inequality lhs >= rhs. The right side may be a sqrt5 surd.
/// Equalities and predicates are encoded so that pass <=> slack >= 0 holds
/// for every report.
struct BoundReport {
    std::string name;
    Rat lhs;
    Sqrt5Surd rhs;
    std::string rhs_label;
    Sqrt5Surd slack;
    bool pass = false;
    std::vector<Int> witness;
    std::string notes;

    static BoundReport make(std::string name, Rat lhs, Sqrt5Surd rhs, std::string rhs_label = {},
                            std::vector<Int> witness = {}, std::string notes = {}) {
        BoundReport r;
        r.name = std::move(name);
        r.lhs = std::move(lhs);
        r.rhs = std::move(rhs);
        r.rhs_label = rhs_label.empty() ? r.rhs.str() : std::move(rhs_label);
        r.slack = Sqrt5Surd(r.lhs) - r.rhs;
        r.pass = r.slack.sign() >= 0;
        r.witness = std::move(witness);
        r.notes = std::move(notes);
        return r;
    }

    /// lhs must equal expected: encoded as -|lhs - expected| >= 0.
    static BoundReport equality(std::string name, const Rat& lhs, const Rat& expected, std::string notes = {}) {
        if (notes.empty()) notes = "got " + lhs.str() + ", expected " + expected.str();
        return make(std::move(name), -abs(lhs - expected), Sqrt5Surd(Rat(0)), "0", {}, std::move(notes));
    }

    /// Boolean predicate: lhs 0 on success, -1 on failure.
    static BoundReport predicate(std::string name, bool holds, std::string notes = {}) {
        return make(std::move(name), Rat(holds ? 0 : -1), Sqrt5Surd(Rat(0)), "0", {}, std::move(notes));
    }

    /// q in [lo, hi]: lhs = min(q - lo, hi - q).
    static BoundReport membership(std::string name, const Rat& q, const UnitInterval& in) {
        return make(std::move(name), min(q - in.lo(), in.hi() - q), Sqrt5Surd(Rat(0)), "0", {},
                    q.str() + " in [" + in.lo().str() + ", " + in.hi().str() + "]");
    }
};

/// A named group of checks; passes when every check passes.
struct Report {
    std::string title;
    std::vector<BoundReport> checks;

    bool pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }

    std::vector<const BoundReport*> failures() const {
        std::vector<const BoundReport*> out;
        for (const auto& c : checks) {
            if (!c.pass) out.push_back(&c);
        }
        return out;
    }

    void add(BoundReport r) { checks.push_back(std::move(r)); }
    void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

using Json = nlohmann::ordered_json;

inline Json surd_to_json(const Sqrt5Surd& s) {
    return Json::array({s.rational_part().str(), s.sqrt5_part().str()});
}

inline Sqrt5Surd surd_from_json(const Json& j) {
    return {Rat::parse(j.at(0).get<std::string>()), Rat::parse(j.at(1).get<std::string>())};
}

inline Json to_json(const BoundReport& r) {
    Json witness = Json::array();
    for (const auto& w : r.witness) witness.push_back(w.get_str());
    Json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs.str();
    j["rhs_surd"] = r.rhs_label;
    j["rhs"] = surd_to_json(r.rhs);
    j["slack"] = surd_to_json(r.slack);
    j["pass"] = r.pass;
    j["witness"] = witness;
    j["decimal"] = r.lhs.decimal(kReportDigits);
    j["rhs_decimal"] = r.rhs.decimal(kReportDigits);
    j["notes"] = r.notes;
    return j;
}

/// Inverse of to_json. The stored pass flag must agree with the slack.
inline BoundReport bound_report_from_json(const Json& j) {
    std::vector<Int> witness;
    for (const auto& w : j.at("witness")) witness.push_back(parse_int(w.get<std::string>()));
    BoundReport r = BoundReport::make(j.at("name").get<std::string>(), Rat::parse(j.at("lhs").get<std::string>()),
                                      surd_from_json(j.at("rhs")), j.at("rhs_surd").get<std::string>(),
                                      std::move(witness), j.value("notes", std::string{}));
    if (r.pass != j.at("pass").get<bool>()) {
        throw std::invalid_argument("report '" + r.name + "': pass flag contradicts its sides");
    }
    return r;
}

inline Json to_json(const Report& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    Json j;
    j["report"] = r.title;
    j["pass"] = r.pass();
    j["checks"] = checks;
    return j;
}

inline Report report_from_json(const Json& j) {
    Report r;
    r.title = j.at("report").get<std::string>();
    for (const auto& c : j.at("checks")) r.checks.push_back(bound_report_from_json(c));
    return r;
}

inline constexpr const char* kCsvHeader = "name,lhs,rhs,lhs_decimal,pass";

inline std::string csv_row(const BoundReport& r) {
    return r.name + "," + r.lhs.str() + "," + r.rhs_label + "," + r.lhs.decimal(kReportDigits) + "," +
           (r.pass ? "true" : "false");
}

/// Human-readable multi-line form.
inline void write_text(std::ostream& os, const BoundReport& r) {
    os << r.name << ": " << (r.pass ? "PASS" : "FAIL") << "\n"
       << "  lhs   = " << r.lhs.str() << " (" << r.lhs.decimal(kReportDigits) << ")\n"
       << "  rhs   = " << r.rhs_label << " (" << r.rhs.decimal(kReportDigits) << ")\n"
       << "  slack = " << r.slack.decimal(kReportDigits) << "\n";
    if (!r.witness.empty()) {
        os << "  witness =";
        for (const auto& w : r.witness) os << " " << w.get_str();
        os << "\n";
    }
    if (!r.notes.empty()) os << "  notes: " << r.notes << "\n";
}

inline void write_text(std::ostream& os, const Report& r) {
    os << r.title << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks, "
       << r.failures().size() << " failed)\n";
    for (const auto* f : r.failures()) write_text(os, *f);
}

}  // namespace fibnest
