#include "gvcover/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace gvcover {

namespace {

struct Triangle {
    std::array<int, 3> v;
};

// Positive when d lies strictly inside the circumcircle of the CCW triangle abc.
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

} // namespace

std::vector<std::pair<int, int>> delaunay_edges(std::span<const Vec2> points) {
    const int n = static_cast<int>(points.size());
    std::vector<std::pair<int, int>> edges;
    if (n < 2) {
        return edges;
    }
    if (n == 2) {
        edges.emplace_back(0, 1);
        return edges;
    }

    Vec2 lo = points[0];
    Vec2 hi = points[0];
    for (const auto& p : points) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const Vec2 mid = 0.5 * (lo + hi);
    const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});

    std::vector<Vec2> pts(points.begin(), points.end());
    pts.push_back(mid + Vec2{-100.0 * span, -100.0 * span});
    pts.push_back(mid + Vec2{100.0 * span, -100.0 * span});
    pts.push_back(mid + Vec2{0.0, 100.0 * span});

    std::vector<Triangle> tris{{{n, n + 1, n + 2}}};
    for (int p = 0; p < n; ++p) {
        std::vector<Triangle> keep;
        std::vector<std::pair<int, int>> boundary;
        for (const auto& t : tris) {
            if (incircle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[p]) > 0.0) {
                for (int k = 0; k < 3; ++k) {
                    const std::pair<int, int> e{t.v[k], t.v[(k + 1) % 3]};
                    // Shared edges of the cavity appear once in each direction.
                    const auto twin = std::find(boundary.begin(), boundary.end(), std::pair{e.second, e.first});
                    if (twin != boundary.end()) {
                        boundary.erase(twin);
                    } else {
                        boundary.push_back(e);
                    }
                }
            } else {
                keep.push_back(t);
            }
        }
        for (const auto& [a, b] : boundary) {
            keep.push_back({{a, b, p}});
        }
        tris = std::move(keep);
    }

    std::set<std::pair<int, int>> unique;
    for (const auto& t : tris) {
        for (int k = 0; k < 3; ++k) {
            int a = t.v[k];
            int b = t.v[(k + 1) % 3];
            if (a < n && b < n) {
                unique.insert({std::min(a, b), std::max(a, b)});
            }
        }
    }
    edges.assign(unique.begin(), unique.end());
    return edges;
}

} // namespace gvcover
