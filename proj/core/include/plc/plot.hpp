#pragma once
// Minimal self-contained SVG emission for distortion-vs-rate results.

#include <string>

#include "plc/harness.hpp"

namespace plc {

// Line plot of aggregate mean distortion against rate with the
// rate-distortion reference curve overlaid.  Pure string building, no
// external services.
std::string render_experiment_svg(const ExperimentResult& result, double p);

}  // namespace plc
