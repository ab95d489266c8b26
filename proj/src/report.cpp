#include "algd/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace algd {

using nlohmann::json;

bool SuiteReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void SuiteReport::sort_checks() {
    std::sort(checks.begin(), checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.anchor < b.anchor; });
}

std::string to_json(const SuiteReport& rep) {
    json doc;
    doc["suite"] = rep.suite;
    doc["seed"] = rep.seed;
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json e;
        e["label"] = c.label;
        e["anchor"] = c.anchor;
        e["residual"] = c.residual;
        e["tol"] = c.tol;
        e["pass"] = c.pass;
        e["points"] = c.points;
        e["ms"] = c.ms;
        checks.push_back(e);
    }
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

SuiteReport report_from_json(const std::string& text) {
    json doc = json::parse(text);
    SuiteReport rep;
    rep.suite = doc.at("suite").get<std::string>();
    rep.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& e : doc.at("checks")) {
        CheckResult c;
        c.label = e.at("label").get<std::string>();
        c.anchor = e.at("anchor").get<std::string>();
        c.residual = e.at("residual").get<double>();
        c.tol = e.at("tol").get<double>();
        c.pass = e.at("pass").get<bool>();
        c.points = e.at("points").get<int>();
        c.ms = e.at("ms").get<std::int64_t>();
        rep.checks.push_back(c);
    }
    return rep;
}

std::string to_text(const SuiteReport& rep) {
    std::ostringstream os;
    os << "suite " << rep.suite << " (seed " << rep.seed << ")\n";
    for (const auto& c : rep.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.anchor << "  residual "
           << c.residual << "  tol " << c.tol << "  points " << c.points << "  " << c.ms
           << " ms\n    " << c.label << "\n";
    }
    os << (rep.all_pass() ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
    return os.str();
}

bool operator==(const CheckResult& a, const CheckResult& b) {
    return a.label == b.label && a.anchor == b.anchor && a.residual == b.residual &&
           a.tol == b.tol && a.pass == b.pass && a.points == b.points && a.ms == b.ms;
}

bool operator==(const SuiteReport& a, const SuiteReport& b) {
    return a.suite == b.suite && a.seed == b.seed && a.checks == b.checks;
}

} // namespace algd
