#pragma once

#include <string>

#include "qnipm/driver.hpp"
#include "qnipm/generator.hpp"

namespace qnipm {

/// JSON instance format, format_version 1. Optional sections (optimal,
/// central_start, xi, seed) survive a round trip bitwise.
void save_instance(const std::string& path, const GeneratedInstance& inst);
GeneratedInstance load_instance(const std::string& path);

/// Tab-separated trace table, one row per iteration. Run-level scalars ride
/// in comment lines above the header. With full set, per-step vectors go to
/// "<path>.full.json" and load_trace picks them back up.
void save_trace(const std::string& path, const RunResult& result, bool full);
RunResult load_trace(const std::string& path);

std::string status_name(Status status);

/// %.17g, enough digits to reproduce the double exactly.
std::string format_double(double v);

}  // namespace qnipm
