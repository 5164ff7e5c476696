#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wedge32/pipeline.hpp"

namespace wedge32 {

struct RunConfig {
    std::filesystem::path cache_dir = "wedge32-cache";
    std::vector<std::string> checks;  // id substrings; empty runs everything
    unsigned truncation = 96;         // >= 85 enforced for degree extraction
    std::string format = "text";      // text | json
    unsigned jobs = 0;                // 0 = all available cores
    bool build_missing = false;
    std::uint64_t seed = kPropertySeed;  // property suites only
    int verbosity = 1;
    std::string export_select = "reflections,scalars,reduced,transport";
};

// exit codes: 0 pass, 1 check failure, 2 usage/cache-missing, 3 internal error
int cmd_build(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_export(const RunConfig& cfg);
int cmd_clean(const RunConfig& cfg);

/// Stage-wise loader: every stage is taken from a valid cache when present
/// (after re-verifying its contract) and rebuilt otherwise. Building
/// requires allow_build; a missing stage without it raises CacheError.
ConstructionContext load_or_build_context(const RunConfig& cfg, bool allow_build);

/// JSON document with the transport matrix and the generator material of
/// the constructed group, in tower-element text encoding.
std::string make_export_document(const ConstructionContext& ctx, const std::string& select);

}  // namespace wedge32
