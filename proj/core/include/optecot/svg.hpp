#pragma once

#include <span>
#include <string>

#include "optecot/quality.hpp"

namespace optecot {

/// Minimal deterministic SVG line chart for the emitted curve CSVs: one
/// polyline per curve, axes with a handful of tick labels, legend from the
/// curve labels.
std::string svg_line_chart(std::span<const QualityCurve> curves,
                           const std::string& title, const std::string& x_label,
                           const std::string& y_label, int width = 720,
                           int height = 440);

}  // namespace optecot
