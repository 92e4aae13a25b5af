#pragma once

// Synchronous explicit-Euler simulation of the coverage network.

#include "gvcover/control.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gvcover {

struct SimEvent {
    enum class Kind { Immobilize };

    int at_step = 0;
    Kind kind = Kind::Immobilize;
    int agent = 0;

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct SimConfig {
    ConvexRegion region;
    std::vector<AgentState> agents;
    double dt = 0.01;
    int max_steps = 2000;
    ControlLaw law = ControlLaw::Suboptimal;
    /// Per-agent gains; empty means 1.0 for everyone.
    std::vector<double> alpha;
    double convergence_eps = 1e-4;
    std::vector<SimEvent> events;
    Density phi;
    std::uint64_t rng_seed = 0;
    CandidateStrategy candidates = CandidateStrategy::AllPairs;
    /// A step that lowers H or overlaps is retried with dt halved, at most this many times.
    int max_halvings = 12;

    double gain(int i) const { return alpha.empty() ? 1.0 : alpha.at(static_cast<std::size_t>(i)); }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const SimConfig& config);

/// Raised when a step produces coincident centers or overlapping uncertainty disks.
class SimAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimState {
    int step = 0;
    std::vector<AgentState> agents;
};

struct TraceRow {
    int step = 0;
    double t = 0.0;
    /// Time step actually taken to reach this row.
    double dt = 0.0;
    std::vector<Vec2> positions;
    /// Applied velocity (zero for immobilized agents).
    std::vector<Vec2> velocities;
    double H = 0.0;
    double coverage_fraction = 0.0;
    double min_pairwise_distance = 0.0;
    double neutral_area = 0.0;
};

struct SimTrace {
    double initial_H = 0.0;
    double initial_coverage = 0.0;
    std::vector<TraceRow> rows;
    bool converged = false;
    std::vector<std::string> warnings;
};

struct StepResult {
    SimState next;
    /// Controls computed from the pre-step snapshot, before immobilization.
    std::vector<ControlVector> controls;
    /// Largest applied speed over mobile agents.
    double max_speed = 0.0;
};

/// Smallest distance between two agent centers (infinity for fewer than two agents).
double min_pairwise_distance(std::span<const AgentState> agents);

/// One synchronous step: controls from a single snapshot, then Euler update of
/// mobile agents. Throws SimAbort on overlap after the update.
StepResult step(const SimState& state, const SimConfig& config);
StepResult step(const SimState& state, const SimConfig& config, const NetworkSnapshot& snapshot);
/// Same, with an explicit time step instead of config.dt.
StepResult step(const SimState& state, const SimConfig& config, const NetworkSnapshot& snapshot, double dt);

/// Called after every recorded row with the post-step state and its snapshot.
using StepObserver = std::function<void(const SimState&, const NetworkSnapshot&, const TraceRow&)>;

/// Steps until the largest mobile speed drops below convergence_eps or
/// max_steps is reached. Row k holds the state after step k. A step whose H
/// falls below the previous value is redone with half the time step (up to
/// max_halvings times), so rows may advance t by less than dt. Trial states
/// with overlapping uncertainty disks are rejected the same way; SimAbort only
/// if the smallest step still overlaps.
SimTrace run(const SimConfig& config, const StepObserver& observer = {});

/// True iff every recorded min pairwise distance exceeds 2·r_u.
bool check_collision_free(const SimTrace& trace, double r_u);

} // namespace gvcover
