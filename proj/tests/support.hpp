#pragma once

// Shared helpers for tests: random instances and brute-force grid oracles.

#include "gvcover/coverage.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testing {

using namespace gvcover;

inline ConvexRegion unit_square() { return ConvexRegion({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

/// Random convex polygon of roughly unit scale: sorted angles on a jittered circle.
inline ConvexRegion random_region(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const int k = 5 + static_cast<int>(jitter(rng) * 4);
    for (;;) {
        std::vector<double> angles;
        for (int i = 0; i < k; ++i) {
            angles.push_back(jitter(rng) * 2.0 * M_PI);
        }
        std::sort(angles.begin(), angles.end());
        std::vector<Vec2> v;
        for (double a : angles) {
            v.push_back({0.5 + 0.6 * std::cos(a), 0.5 + 0.6 * std::sin(a)});
        }
        try {
            ConvexRegion r(v);
            if (r.area() > 0.6) {
                return r;
            }
        } catch (const GeometryError&) {
        }
    }
}

/// n agents with centers inside the region, pairwise separation > 2·r_u + margin.
inline std::vector<AgentState> random_agents(std::mt19937_64& rng, int n, const ConvexRegion& region, double r_u,
                                             double r_s, double margin = 0.02) {
    const auto box = region.bounds();
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
    std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
    std::vector<AgentState> agents;
    while (static_cast<int>(agents.size()) < n) {
        const double x = ux(rng);
        const double y = uy(rng);
        const Vec2 p{x, y};
        if (!region.contains(p)) {
            continue;
        }
        bool ok = true;
        for (const auto& a : agents) {
            ok = ok && distance(a.center, p) > 2.0 * r_u + margin;
        }
        if (ok) {
            agents.push_back({static_cast<int>(agents.size()), p, r_u, r_s, true});
        }
    }
    return agents;
}

/// Area of {x in box : pred(x)} by res × res cell midpoints.
inline double grid_area(const BoundingBox& box, int res, const std::function<bool(const Vec2&)>& pred) {
    const double hx = box.width() / res;
    const double hy = box.height() / res;
    long long hits = 0;
    for (int r = 0; r < res; ++r) {
        const double y = box.lo.y + (r + 0.5) * hy;
        for (int c = 0; c < res; ++c) {
            if (pred({box.lo.x + (c + 0.5) * hx, y})) {
                ++hits;
            }
        }
    }
    return hits * hx * hy;
}

inline bool near_rel(double a, double b, double rel, double abs_floor = 1e-12) {
    return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

} // namespace testing
