#include "gvcover/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace gvcover {

namespace {
// Round-off allowance when comparing H before and after a step.
constexpr double kAscentSlack = 1e-13;

// Empty if the agents are valid, otherwise a diagnostic.
std::string separation_problem(const std::vector<AgentState>& next, int step_no) {
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (!is_finite(next[i].center)) {
            return "step " + std::to_string(step_no) + ": agent " + std::to_string(i) + " position is not finite";
        }
        for (std::size_t j = 0; j < i; ++j) {
            const double d = distance(next[i].center, next[j].center);
            if (!(d > next[i].r_u + next[j].r_u)) {
                return "step " + std::to_string(step_no) + ": uncertainty disks of agents " + std::to_string(j) +
                       " and " + std::to_string(i) + " overlap (distance " + std::to_string(d) + ")";
            }
        }
    }
    return {};
}

void check_separation(const std::vector<AgentState>& next, int step_no) {
    if (auto problem = separation_problem(next, step_no); !problem.empty()) {
        throw SimAbort(problem);
    }
}

std::vector<AgentState> advance(const std::vector<AgentState>& agents, const std::vector<ControlVector>& controls,
                                double dt) {
    auto next = agents;
    for (auto& a : next) {
        if (a.mobile) {
            a.center += dt * controls[a.id].u;
        }
    }
    return next;
}

} // namespace

void validate(const SimConfig& config) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        throw std::invalid_argument("dt must be a positive finite number");
    }
    if (config.max_steps < 1) {
        throw std::invalid_argument("max_steps must be >= 1");
    }
    if (config.max_halvings < 0) {
        throw std::invalid_argument("max_halvings must be >= 0");
    }
    if (!(config.convergence_eps >= 0.0)) {
        throw std::invalid_argument("convergence_eps must be >= 0");
    }
    validate_agents(config.agents);
    const int n = static_cast<int>(config.agents.size());
    for (const auto& a : config.agents) {
        if (!config.region.contains(a.center)) {
            throw std::invalid_argument("agent " + std::to_string(a.id) + ": center lies outside the region");
        }
        for (int j = 0; j < a.id; ++j) {
            const auto& b = config.agents[j];
            if (!(distance(a.center, b.center) > a.r_u + b.r_u)) {
                throw std::invalid_argument("agents " + std::to_string(j) + " and " + std::to_string(a.id) +
                                            ": uncertainty disks overlap");
            }
        }
    }
    if (!config.alpha.empty()) {
        if (static_cast<int>(config.alpha.size()) != n) {
            throw std::invalid_argument("alpha must list one gain per agent");
        }
        for (double g : config.alpha) {
            if (!(g > 0.0) || !std::isfinite(g)) {
                throw std::invalid_argument("alpha gains must be positive");
            }
        }
    }
    for (const auto& e : config.events) {
        if (e.at_step < 0 || e.at_step >= config.max_steps) {
            throw std::invalid_argument("event step " + std::to_string(e.at_step) + " outside [0, max_steps)");
        }
        if (e.agent < 0 || e.agent >= n) {
            throw std::invalid_argument("event refers to unknown agent " + std::to_string(e.agent));
        }
    }
}

double min_pairwise_distance(std::span<const AgentState> agents) {
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            best = std::min(best, distance(agents[i].center, agents[j].center));
        }
    }
    return best;
}

StepResult step(const SimState& state, const SimConfig& config, const NetworkSnapshot& snapshot) {
    return step(state, config, snapshot, config.dt);
}

StepResult step(const SimState& state, const SimConfig& config, const NetworkSnapshot& snapshot, double dt) {
    StepResult result;
    result.next.step = state.step + 1;
    result.next.agents = state.agents;
    result.controls.reserve(state.agents.size());
    for (const auto& a : state.agents) {
        result.controls.push_back(control(config.law, a.id, snapshot, config.phi, config.gain(a.id)));
    }
    for (auto& a : result.next.agents) {
        if (!a.mobile) {
            continue;
        }
        const Vec2 u = result.controls[a.id].u;
        a.center += dt * u;
        result.max_speed = std::max(result.max_speed, norm(u));
    }
    check_separation(result.next.agents, result.next.step);
    return result;
}

StepResult step(const SimState& state, const SimConfig& config) {
    return step(state, config, make_snapshot(state.agents, config.region, config.candidates));
}

SimTrace run(const SimConfig& config, const StepObserver& observer) {
    validate(config);
    SimTrace trace;
    SimState state{0, config.agents};
    NetworkSnapshot snapshot = make_snapshot(state.agents, config.region, config.candidates);
    {
        const auto report = objective(snapshot, config.phi);
        trace.initial_H = report.total_H;
        trace.initial_coverage = report.coverage_fraction;
    }
    double current_H = trace.initial_H;
    double elapsed = 0.0;
    std::set<int> warned_outside;
    std::set<int> warned_empty;

    for (int k = 0; k < config.max_steps; ++k) {
        for (const auto& e : config.events) {
            if (e.at_step == k && e.kind == SimEvent::Kind::Immobilize) {
                state.agents[e.agent].mobile = false;
            }
        }
        // Euler step; dt is halved while the trial state overlaps or lowers H.
        double dt = config.dt;
        StepResult result = step(state, config, snapshot, 0.0);
        NetworkSnapshot next;
        CoverageReport report;
        std::string problem;
        for (int h = 0;; ++h) {
            result.next.agents = advance(state.agents, result.controls, dt);
            problem = separation_problem(result.next.agents, result.next.step);
            if (problem.empty()) {
                next = make_snapshot(result.next.agents, config.region, config.candidates);
                report = objective(next, config.phi);
                if (report.total_H >= current_H - kAscentSlack) {
                    break;
                }
            }
            if (h == config.max_halvings) {
                break;
            }
            dt *= 0.5;
        }
        if (!problem.empty()) {
            throw SimAbort(problem);
        }
        if (report.total_H < current_H - kAscentSlack) {
            trace.warnings.push_back("step " + std::to_string(result.next.step) + ": H decreased by " +
                                     std::to_string(current_H - report.total_H) + " after halving the time step");
        }
        TraceRow row;
        row.step = result.next.step;
        row.dt = dt;
        elapsed += dt;
        row.t = elapsed;
        for (const auto& a : result.next.agents) {
            row.positions.push_back(a.center);
            row.velocities.push_back(a.mobile ? result.controls[a.id].u : Vec2{});
            if (result.controls[a.id].empty_cell && warned_empty.insert(a.id).second) {
                trace.warnings.push_back("step " + std::to_string(row.step) + ": agent " + std::to_string(a.id) +
                                         " has an empty sensed cell; its control is zero");
            }
            if (!config.region.contains(a.center) && warned_outside.insert(a.id).second) {
                trace.warnings.push_back("step " + std::to_string(row.step) + ": agent " + std::to_string(a.id) +
                                         " center left the region");
            }
        }
        state = std::move(result.next);
        snapshot = std::move(next);
        current_H = report.total_H;
        row.H = report.total_H;
        row.coverage_fraction = report.coverage_fraction;
        row.min_pairwise_distance = min_pairwise_distance(state.agents);
        row.neutral_area = snapshot.diagram.neutral_area;
        trace.rows.push_back(std::move(row));
        if (observer) {
            observer(state, snapshot, trace.rows.back());
        }
        if (result.max_speed < config.convergence_eps) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

bool check_collision_free(const SimTrace& trace, double r_u) {
    return std::all_of(trace.rows.begin(), trace.rows.end(),
                       [r_u](const TraceRow& row) { return row.min_pairwise_distance > 2.0 * r_u; });
}

} // namespace gvcover
