#pragma once

// Trace CSV, coverage-curve CSV and SVG frames.

#include "gvcover/sim.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace gvcover {

/// "step,t,x0,y0,ux0,uy0,...,H,coverage_fraction,neutral_area,min_pairwise_dist".
std::string trace_csv_header(std::size_t agents);

/// One row per recorded step, numbers printed with %.17g.
void write_trace_csv(const SimTrace& trace, std::ostream& out);
void emit_trace_csv(const SimTrace& trace, const std::filesystem::path& path);

/// "step,t,H,coverage_fraction" including the initial state as step 0.
void emit_coverage_csv(const SimTrace& trace, const std::filesystem::path& path);

/// One <path> for the outline, one per non-empty GV cell and one per
/// guaranteed sensing circle. Sensed regions are filled polygons; immobile
/// agents are drawn in red.
std::string svg_frame(const NetworkSnapshot& snapshot);
void emit_svg_frame(const NetworkSnapshot& snapshot, const std::filesystem::path& path);

} // namespace gvcover
