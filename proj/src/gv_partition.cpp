#include "gvcover/gv_partition.hpp"

#include "gvcover/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace gvcover {

namespace {

constexpr double kTangentTolerance = 1e-12;

} // namespace

void validate_agents(std::span<const AgentState> agents) {
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const auto& a = agents[k];
        const std::string who = "agent " + std::to_string(k);
        if (a.id != static_cast<int>(k)) {
            throw std::invalid_argument(who + ": id must equal its index, got " + std::to_string(a.id));
        }
        if (!is_finite(a.center)) {
            throw std::invalid_argument(who + ": center is not finite");
        }
        if (!(a.r_u >= 0.0) || !(a.r_s > a.r_u) || !std::isfinite(a.r_s)) {
            throw std::invalid_argument(who + ": radii must satisfy 0 <= r_u < r_s");
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (agents[j].center == a.center) {
                throw std::invalid_argument(who + ": center coincides with agent " + std::to_string(j));
            }
        }
    }
}

PairwiseRegion pairwise_h_region(const AgentState& i, const AgentState& j) {
    if (i.center == j.center) {
        throw std::invalid_argument("pairwise region: agents " + std::to_string(i.id) + " and " +
                                    std::to_string(j.id) + " have coincident centers");
    }
    const double d = distance(i.center, j.center);
    const double sum = i.r_u + j.r_u;
    if (std::abs(d - sum) <= kTangentTolerance) {
        return {PairRegime::DegenerateRay, std::nullopt};
    }
    if (d < sum) {
        return {PairRegime::Empty, std::nullopt};
    }
    return {PairRegime::Branch, HyperbolaBranch{i.center, j.center, 0.5 * sum}};
}

std::vector<std::vector<int>> candidate_neighbors(std::span<const AgentState> agents,
                                                  const ConvexRegion& /*region*/,
                                                  CandidateStrategy strategy) {
    validate_agents(agents);
    const int n = static_cast<int>(agents.size());
    std::vector<std::vector<int>> out(n);
    if (strategy == CandidateStrategy::AllPairs) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    out[i].push_back(j);
                }
            }
        }
        return out;
    }
    std::vector<Vec2> centers;
    centers.reserve(agents.size());
    for (const auto& a : agents) {
        centers.push_back(a.center);
    }
    for (const auto& [a, b] : delaunay_edges(centers)) {
        out[a].push_back(b);
        out[b].push_back(a);
    }
    for (auto& list : out) {
        std::sort(list.begin(), list.end());
    }
    return out;
}

namespace {

CellRegion build_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                      const std::vector<int>& candidates) {
    // Overlap with any agent empties the cell whether or not it is a candidate.
    for (const auto& other : agents) {
        if (other.id != i && pairwise_h_region(agents[i], other).regime != PairRegime::Branch) {
            return {};
        }
    }
    CellRegion cell = cell_from_region(region);
    for (int j : candidates) {
        if (cell.empty()) {
            break;
        }
        const auto pair = pairwise_h_region(agents[i], agents[j]);
        cell = clip_halfregion_hyperbolic(cell, *pair.branch, SegmentSource::hyperbola(i, j));
    }
    return cell;
}

} // namespace

CellRegion gv_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region,
                   CandidateStrategy strategy) {
    if (i < 0 || i >= static_cast<int>(agents.size())) {
        throw std::out_of_range("gv_cell: agent index out of range");
    }
    const auto candidates = candidate_neighbors(agents, region, strategy);
    return build_cell(i, agents, region, candidates[i]);
}

std::vector<int> hyperbolic_neighbors(const CellRegion& cell, double min_length) {
    std::set<int> found;
    for (const auto& loop : cell.loops) {
        for (const auto& seg : loop) {
            if (seg.source.kind == SourceKind::HyperbolaEdge && seg.length() > min_length) {
                found.insert(seg.source.second);
            }
        }
    }
    return {found.begin(), found.end()};
}

GvDiagram gv_diagram(std::span<const AgentState> agents, const ConvexRegion& region,
                     CandidateStrategy strategy) {
    const auto candidates = candidate_neighbors(agents, region, strategy);
    GvDiagram diagram;
    diagram.cells.reserve(agents.size());
    double assigned = 0.0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        diagram.cells.push_back(build_cell(static_cast<int>(i), agents, region, candidates[i]));
        diagram.gd_neighbors.push_back(hyperbolic_neighbors(diagram.cells.back()));
        assigned += region_area(diagram.cells.back());
    }
    diagram.neutral_area = agents.empty() ? region.area() : std::max(0.0, region.area() - assigned);
    return diagram;
}

CellRegion voronoi_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region) {
    CellRegion cell = cell_from_region(region);
    const Vec2 xi = agents[i].center;
    for (const auto& other : agents) {
        if (other.id == i) {
            continue;
        }
        const Vec2 xj = other.center;
        cell = clip_halfplane(cell, HalfPlane{0.5 * (xi + xj), xj - xi}, SegmentSource::hyperbola(i, other.id));
    }
    return cell;
}

} // namespace gvcover
