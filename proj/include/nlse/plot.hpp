#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nlse/study.hpp"

namespace nlse {

/// Log-log error-vs-tau SVG: one polyline per (scheme, sigma, h, norm)
/// series, a slope-1 guide spanning the tau range of the data, and a
/// slope-2 guide when a strang series is present. Output bytes are a pure
/// function of the records (fixed number formatting, no timestamps).
/// Throws InvalidInputError on empty input or nonpositive data.
void emit_plot(const std::vector<ConvergenceRecord>& records, const std::string& title,
               std::ostream& out);

}  // namespace nlse
