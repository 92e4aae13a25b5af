#include "gvcover/control.hpp"

#include <cmath>
#include <stdexcept>

namespace gvcover {

BoundaryClasses boundary_decomposition(const CellRegion& cell) {
    BoundaryClasses classes;
    for (const auto& loop : cell.loops) {
        for (const auto& seg : loop) {
            switch (seg.source.kind) {
            case SourceKind::RegionBoundary:
                classes.region.push_back(seg);
                break;
            case SourceKind::SensingBoundary:
                classes.sensing.push_back(seg);
                break;
            case SourceKind::HyperbolaEdge:
                classes.neutral.push_back(seg);
                break;
            }
        }
    }
    return classes;
}

ArcJacobian hyperbolic_jacobian(const HyperbolaBranch& branch, const Vec2& point, Focus which) {
    const double residual = branch.focal_residual(point);
    if (std::abs(residual) > 1e-8 * std::max(1.0, branch.focal_distance())) {
        throw GeometryError("hyperbolic_jacobian: point is not on the branch (residual " +
                            std::to_string(residual) + ")");
    }
    const double t = branch.parameter_of(point);
    return {which == Focus::Near ? branch.jacobian_near(t) : branch.jacobian_far(t)};
}

namespace {

Vec2 hyperbolic_integral(const BoundarySegment& seg, const Density& phi, Focus which) {
    const auto& branch = std::get<HyperbolaBranch>(seg.curve);
    return boundary_integral(seg, [&](const Vec2& x, const Vec2& n) {
        const Mat2 J = hyperbolic_jacobian(branch, x, which).matrix;
        return phi(x) * (J.transposed() * n);
    });
}

ControlVector evaluate(ControlLaw law, int i, const NetworkSnapshot& snap, const Density& phi, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("control gain must be positive");
    }
    ControlVector out;
    const auto& own = snap.sensed.at(static_cast<std::size_t>(i));
    if (own.empty()) {
        out.empty_cell = true;
        return out;
    }
    const auto classes = boundary_decomposition(own);
    const auto phi_at = [&phi](const Vec2& x) { return phi(x); };
    for (const auto& seg : classes.sensing) {
        out.sensing_arc_term += line_integral(seg, phi_at);
    }
    Vec2 total = out.sensing_arc_term;
    if (law == ControlLaw::Full) {
        // Arcs of our own cell on ∂H_ij move with the near focus.
        for (const auto& seg : classes.neutral) {
            const Vec2 term = hyperbolic_integral(seg, phi, Focus::Near);
            out.hyperbolic_terms[seg.source.second] += term;
            total += term;
        }
        // Arcs of neighbor cells on ∂H_ji move with their far focus, x_i.
        for (std::size_t j = 0; j < snap.sensed.size(); ++j) {
            if (static_cast<int>(j) == i) {
                continue;
            }
            for (const auto& loop : snap.sensed[j].loops) {
                for (const auto& seg : loop) {
                    if (seg.source.kind == SourceKind::HyperbolaEdge && seg.source.second == i) {
                        const Vec2 term = hyperbolic_integral(seg, phi, Focus::Far);
                        out.hyperbolic_terms[static_cast<int>(j)] += term;
                        total += term;
                    }
                }
            }
        }
    }
    out.u = alpha * total;
    return out;
}

} // namespace

ControlVector control_full(int i, const NetworkSnapshot& snapshot, const Density& phi, double alpha) {
    return evaluate(ControlLaw::Full, i, snapshot, phi, alpha);
}

ControlVector control_suboptimal(int i, const NetworkSnapshot& snapshot, const Density& phi, double alpha) {
    return evaluate(ControlLaw::Suboptimal, i, snapshot, phi, alpha);
}

ControlVector control(ControlLaw law, int i, const NetworkSnapshot& snapshot, const Density& phi, double alpha) {
    return evaluate(law, i, snapshot, phi, alpha);
}

ControlVector control_full(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                           const Density& phi, double alpha) {
    return control_full(i, make_snapshot(agents, region), phi, alpha);
}

ControlVector control_suboptimal(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                                 const Density& phi, double alpha) {
    return control_suboptimal(i, make_snapshot(agents, region), phi, alpha);
}

Vec2 fd_gradient(const ObjectiveFn& objective, std::span<const AgentState> agents, int i, double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("fd_gradient: step must be positive");
    }
    std::vector<AgentState> probe(agents.begin(), agents.end());
    auto shifted = [&](Vec2 offset) {
        probe[i].center = agents[i].center + offset;
        const double value = objective(probe);
        probe[i].center = agents[i].center;
        return value;
    };
    return {(shifted({step, 0.0}) - shifted({-step, 0.0})) / (2.0 * step),
            (shifted({0.0, step}) - shifted({0.0, -step})) / (2.0 * step)};
}

} // namespace gvcover
