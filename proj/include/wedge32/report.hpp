#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wedge32 {

struct CheckResult {
    std::string id;
    std::string description;
    std::string expected;
    std::string actual;
    enum class Status { pass, fail, warn } status = Status::fail;
    std::int64_t ms = 0;
};

/// Named machine-checkable claims with expected/actual values. Overall
/// status is pass iff no individual check failed (warnings do not fail).
struct VerificationReport {
    std::vector<CheckResult> checks;

    bool overall_pass() const;
    std::size_t fail_count() const;

    /// Human-readable table. Timings are wall-clock and therefore omitted
    /// from persisted canonical output.
    std::string to_text(bool include_timings = true) const;
    /// Schema: {"format","version","overall","checks":[{id, description,
    /// expected, actual, status, ms}]}; persisted reports pin ms to 0 so
    /// repeated runs are byte-identical.
    std::string to_json(bool include_timings = true) const;
};

}  // namespace wedge32
