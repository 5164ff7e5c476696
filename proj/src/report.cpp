#include "wedge32/report.hpp"

#include <sstream>

#include "json.hpp"

namespace wedge32 {

namespace {
const char* status_name(CheckResult::Status s) {
    switch (s) {
        case CheckResult::Status::pass: return "pass";
        case CheckResult::Status::fail: return "fail";
        case CheckResult::Status::warn: return "warn";
    }
    return "fail";
}
}  // namespace

bool VerificationReport::overall_pass() const { return fail_count() == 0; }

std::size_t VerificationReport::fail_count() const {
    std::size_t n = 0;
    for (const CheckResult& c : checks)
        if (c.status == CheckResult::Status::fail) ++n;
    return n;
}

std::string VerificationReport::to_text(bool include_timings) const {
    std::ostringstream os;
    for (const CheckResult& c : checks) {
        os << '[' << status_name(c.status) << "] " << c.id << ": " << c.description
           << " | expected " << c.expected << " | actual " << c.actual;
        if (include_timings) os << " | " << c.ms << " ms";
        os << '\n';
    }
    os << (overall_pass() ? "OVERALL: pass" : "OVERALL: fail") << " (" << checks.size()
       << " checks, " << fail_count() << " failed)\n";
    return os.str();
}

std::string VerificationReport::to_json(bool include_timings) const {
    nlohmann::ordered_json doc;
    doc["format"] = "wedge32-report";
    doc["version"] = 1;
    doc["overall"] = overall_pass() ? "pass" : "fail";
    doc["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["description"] = c.description;
        jc["expected"] = c.expected;
        jc["actual"] = c.actual;
        jc["status"] = status_name(c.status);
        jc["ms"] = include_timings ? c.ms : 0;
        doc["checks"].push_back(std::move(jc));
    }
    return doc.dump(2) + "\n";
}

}  // namespace wedge32
