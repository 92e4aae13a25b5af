#pragma once

// Gradient control laws for the guaranteed coverage objective, evaluated as
// boundary integrals over the tagged arcs of the sensed cells.

#include "gvcover/coverage.hpp"

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace gvcover {

enum class ControlLaw { Full, Suboptimal };

struct ControlVector {
    /// Velocity command α·(sensing_arc_term + Σ hyperbolic_terms).
    Vec2 u;
    Vec2 sensing_arc_term;
    /// Per neighbor j: arcs of V_i^gs on ∂H_ij plus arcs of V_j^gs on ∂H_ji.
    std::map<int, Vec2> hyperbolic_terms;
    /// Set when V_i^gs is empty; u is then zero.
    bool empty_cell = false;
};

/// ∂x/∂x_i of a moving boundary point. Identity on sensing arcs, zero on the
/// fixed region boundary.
struct ArcJacobian {
    Mat2 matrix;
};

/// Boundary pieces of a sensed cell grouped by what produced them.
struct BoundaryClasses {
    std::vector<BoundarySegment> region;  ///< on ∂Ω
    std::vector<BoundarySegment> sensing; ///< on the guaranteed sensing circle
    std::vector<BoundarySegment> neutral; ///< hyperbolic arcs facing the neutral zone
};

BoundaryClasses boundary_decomposition(const CellRegion& cell);

enum class Focus { Near, Far };

/// Jacobian of the point on `branch` with respect to one focus, holding the
/// branch-local parameter fixed. Throws GeometryError if the point's focal
/// residual exceeds 1e-8 (relative to the focal distance).
ArcJacobian hyperbolic_jacobian(const HyperbolaBranch& branch, const Vec2& point, Focus which);

ControlVector control_full(int i, const NetworkSnapshot& snapshot, const Density& phi, double alpha = 1.0);
ControlVector control_suboptimal(int i, const NetworkSnapshot& snapshot, const Density& phi, double alpha = 1.0);
ControlVector control(ControlLaw law, int i, const NetworkSnapshot& snapshot, const Density& phi,
                      double alpha = 1.0);

ControlVector control_full(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                           const Density& phi, double alpha = 1.0);
ControlVector control_suboptimal(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                                 const Density& phi, double alpha = 1.0);

using ObjectiveFn = std::function<double(std::span<const AgentState>)>;

/// Central difference of `objective` with respect to agent i's center.
Vec2 fd_gradient(const ObjectiveFn& objective, std::span<const AgentState> agents, int i, double step);

} // namespace gvcover
