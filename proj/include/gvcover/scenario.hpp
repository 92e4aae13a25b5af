#pragma once

// Scenario files: a flat, sectioned text format describing one simulation.
//
//   # comment
//   [region]
//   vertex = 0 0                 # counter-clockwise, one per line
//   [agents]
//   center = 0.1 0.1             # explicit centers, ids in listed order
//   count = 10                   # ...or random placement inside spawn_box
//   seed = 7
//   spawn_box = 0 0 1 1
//   [radii]
//   r_u = 0.05
//   r_s = 0.3
//   [control]
//   law = suboptimal             # or full
//   alpha = 1                    # one value, or one per agent
//   dt = 0.01
//   max_steps = 2000
//   max_halvings = 12            # retries with dt/2 when a step lowers H
//   convergence_eps = 1e-4
//   candidates = all_pairs       # or delaunay
//   [phi]
//   uniform = 1                  # or: grid = density.grid (relative path)
//   [events]
//   immobilize = 150 3           # after 150 steps, agent 3 stops moving
//   [outputs]
//   dir = out
//   svg_every = 0
//
// [region], [agents] and [radii] are required; everything else has defaults.

#include "gvcover/sim.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace gvcover {

/// Parse or validation failure, carrying the offending line (0 if none).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& where, int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

struct OutputOptions {
    std::string dir = "out";
    int svg_every = 0;

    friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct Scenario {
    SimConfig config;
    OutputOptions outputs;
};

/// Minimum center separation used when placing agents at random: 2·r_u plus this.
inline constexpr double kSpawnMargin = 0.02;

Scenario parse_scenario(const std::filesystem::path& path);
/// `name` prefixes error messages; relative grid paths resolve against base_dir.
Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir,
                             const std::string& name = "<scenario>");

/// Writes explicit centers, so the output re-parses to an identical config.
std::string serialize_scenario(const Scenario& scenario);

/// Grid density file: "width height", "xmin ymin xmax ymax", then height rows
/// of width values (row 0 at ymin). '#' starts a comment.
DensityGrid load_density_grid(const std::filesystem::path& path);

} // namespace gvcover
