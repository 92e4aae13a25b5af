#pragma once

// Guaranteed Voronoi partition of a convex region for agents whose true
// positions are only known to lie in uncertainty disks.

#include "gvcover/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gvcover {

/// An agent: uncertainty disk (center, r_u) plus sensing radius r_s. Agent ids
/// are their positions in the network, 0..n-1.
struct AgentState {
    int id = 0;
    Vec2 center;
    double r_u = 0.0;
    double r_s = 0.0;
    bool mobile = true;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Checks ids are 0..n-1 in order, centers finite and pairwise distinct, and
/// 0 <= r_u < r_s. Throws std::invalid_argument.
void validate_agents(std::span<const AgentState> agents);

enum class PairRegime {
    Empty,         ///< uncertainty disks overlap: both cells empty
    DegenerateRay, ///< disks tangent: cells collapse to rays (measure zero)
    Branch,        ///< disjoint disks: cells bounded by hyperbola branches
};

struct PairwiseRegion {
    PairRegime regime = PairRegime::Empty;
    /// Boundary of the region guaranteed closer to i than to j; set for Branch.
    std::optional<HyperbolaBranch> branch;
};

/// Classify agents i and j. Throws std::invalid_argument on coincident centers.
PairwiseRegion pairwise_h_region(const AgentState& i, const AgentState& j);

enum class CandidateStrategy {
    AllPairs, ///< every other agent (exact superset)
    Delaunay, ///< Delaunay neighbors of the centers
};

/// For each agent, a sorted superset of its guaranteed Delaunay neighbors.
std::vector<std::vector<int>> candidate_neighbors(std::span<const AgentState> agents,
                                                  const ConvexRegion& region,
                                                  CandidateStrategy strategy = CandidateStrategy::AllPairs);

/// V_i^g: the region clipped by every candidate's hyperbolic half-region, in
/// ascending id order.
CellRegion gv_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                   CandidateStrategy strategy = CandidateStrategy::AllPairs);

struct GvDiagram {
    std::vector<CellRegion> cells;
    /// Guaranteed Delaunay neighbors: j such that V_i^g has a hyperbolic edge
    /// against j of nonzero length.
    std::vector<std::vector<int>> gd_neighbors;
    /// Area of the region assigned to no agent.
    double neutral_area = 0.0;
};

GvDiagram gv_diagram(std::span<const AgentState> agents, const ConvexRegion& region,
                     CandidateStrategy strategy = CandidateStrategy::AllPairs);

/// Neighbor ids j with a hyperbolic edge (i, j) longer than min_length on the cell.
std::vector<int> hyperbolic_neighbors(const CellRegion& cell, double min_length = 1e-10);

/// Classical Voronoi cell of agent i inside the region (uncertainty ignored).
CellRegion voronoi_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region);

} // namespace gvcover
