#pragma once

#include <string>

namespace floqlab {

/// Locale-independent decimal rendering with 12 significant digits, the
/// single formatting used for every numeric CSV cell so that repeated runs
/// are byte-identical.
std::string format_double(double v);

/// log10(v) clamped below at -300; non-positive v (exact zeros) also map
/// to -300.
double log10_clamped(double v);

} // namespace floqlab
