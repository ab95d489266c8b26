#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "algd/errors.hpp"

namespace algd {

/// One identity check: a stable anchor id, the worst residual seen, the
/// tolerance it was held to, and bookkeeping.
struct CheckResult {
    std::string label;
    std::string anchor;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false; // always residual < tol; stored for the wire format
    int points = 0;
    std::int64_t ms = 0;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    /// Checks are kept sorted by anchor so reports are order-independent.
    void sort_checks();
};

std::string to_json(const SuiteReport& rep);
SuiteReport report_from_json(const std::string& text);
std::string to_text(const SuiteReport& rep);

bool operator==(const CheckResult& a, const CheckResult& b);
bool operator==(const SuiteReport& a, const SuiteReport& b);

} // namespace algd
