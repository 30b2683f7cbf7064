#pragma once

#include <string>

#include "survnn/harness.hpp"

namespace survnn {

// Human-readable summary: one row per method with mean +/- std and the
// per-permutation test CIs. Stable column order.
std::string report_table(const EvalReport& report);

// Machine-readable lines (CSV-style): header, one `row` line per method and
// permutation carrying seed, status, test CI and the chosen parameters at
// full precision, and one `summary` line per method. Parses back exactly.
std::string report_machine_lines(const EvalReport& report);

EvalReport parse_report_lines(const std::string& text);

}  // namespace survnn
