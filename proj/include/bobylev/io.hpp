#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bobylev/field.hpp"
#include "bobylev/solver.hpp"

namespace bobylev {

/// Full-precision decimal rendering (17 significant digits) so downstream
/// fits are bit-stable across runs.
std::string fmt_full(double v);

/// FNV-1a 64-bit over the given bytes.
std::uint64_t fnv1a64(const std::string& bytes);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Snapshot CSV, columns "x,phi".
std::string snapshot_csv(const IsoSpectralField& f);

/// Moment-series CSV, columns "t,m0,m1,m2,m3,m4".
std::string moments_csv(const std::vector<MomentRow>& rows);

} // namespace bobylev
