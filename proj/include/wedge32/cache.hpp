#pragma once

#include <filesystem>

#include "wedge32/group.hpp"
#include "wedge32/report.hpp"

namespace wedge32 {

/// Length-prefixed binary cache with text-encoded rationals. Header:
/// magic "W32C", format version, payload kind, FNV-1a checksum of the
/// payload. Version mismatch or checksum failure refuses the load.
enum class CacheKind : std::uint8_t { group = 1, matrices = 2, report = 3 };

/// Groups are stored as a scalar table in first-use order plus id tuples
/// per element (discovery order), so files stay small and byte-identical
/// across runs regardless of internal pool numbering.
void write_group_cache(const std::filesystem::path& path, const FiniteMatrixGroup& g);
FiniteMatrixGroup read_group_cache(const std::filesystem::path& path);

void write_matrices_cache(const std::filesystem::path& path, const std::vector<MatrixK>& ms);
std::vector<MatrixK> read_matrices_cache(const std::filesystem::path& path);

void write_report_cache(const std::filesystem::path& path, const VerificationReport& r);
std::string read_report_cache(const std::filesystem::path& path);

}  // namespace wedge32
