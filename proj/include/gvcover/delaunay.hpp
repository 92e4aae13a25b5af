#pragma once

#include "gvcover/vec2.hpp"

#include <span>
#include <utility>
#include <vector>

namespace gvcover {

/// Edges (i < j) of a Delaunay triangulation of the points, Bowyer–Watson.
/// Edges between hull points that only close a triangle with the bounding
/// super-triangle are kept too, so the result is a superset of the true
/// Delaunay edge set. Collinear inputs yield the chain of consecutive points.
std::vector<std::pair<int, int>> delaunay_edges(std::span<const Vec2> points);

} // namespace gvcover
