#pragma once

// Planar kernel: convex regions, circles, hyperbola branches, loops of typed
// boundary segments, clipping, and boundary integrals.

#include "gvcover/vec2.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gvcover {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BoundingBox {
    Vec2 lo;
    Vec2 hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double diameter() const { return std::hypot(width(), height()); }
};

/// Strictly convex polygon, vertices stored counter-clockwise.
class ConvexRegion {
public:
    ConvexRegion() = default;
    /// Throws GeometryError unless the vertices form a strictly convex CCW polygon.
    explicit ConvexRegion(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double area() const;
    double perimeter() const;
    BoundingBox bounds() const;
    bool contains(const Vec2& p) const;
    /// Outward unit normal of edge k (from vertex k to vertex k+1).
    Vec2 edge_normal(std::size_t k) const;
    /// Euclidean distance from p to the boundary line of edge k (positive inside).
    double edge_distance(std::size_t k, const Vec2& p) const;

    friend bool operator==(const ConvexRegion&, const ConvexRegion&) = default;

private:
    std::vector<Vec2> vertices_;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

/// One branch of a hyperbola with foci focus_near and focus_far: the locus
/// ‖x − focus_far‖ − ‖x − focus_near‖ = 2a, bending around focus_near.
///
/// Parametrized as center + a·cosh(t)·e1 + b·sinh(t)·e2 where e1 points from
/// focus_far to focus_near and e2 is e1 turned clockwise, so that increasing t
/// keeps the convex side (the one containing focus_near) on the left. t = 0 is
/// the vertex. With a = 0 the branch is the perpendicular bisector.
class HyperbolaBranch {
public:
    HyperbolaBranch(Vec2 focus_near, Vec2 focus_far, double semi_transverse);

    const Vec2& focus_near() const { return near_; }
    const Vec2& focus_far() const { return far_; }
    double semi_transverse() const { return a_; }
    double semi_conjugate() const { return b_; }
    double focal_distance() const { return d_; }
    const Vec2& center() const { return center_; }
    double eccentricity() const { return d_ / (2.0 * a_); }
    const Vec2& axis() const { return e1_; }
    const Vec2& transverse_axis_perp() const { return e2_; }

    Vec2 point(double t) const;
    Vec2 derivative(double t) const;
    /// Parameter of the curve point sharing p's coordinate along e2.
    double parameter_of(const Vec2& p) const;
    /// ‖p − focus_far‖ − ‖p − focus_near‖ − 2a; zero on the branch, positive
    /// on the focus_near side.
    double focal_residual(const Vec2& p) const;

    /// ∂x/∂focus of the curve point at fixed parameter t.
    Mat2 jacobian_near(double t) const;
    Mat2 jacobian_far(double t) const;

    friend bool operator==(const HyperbolaBranch& l, const HyperbolaBranch& r) {
        return l.near_ == r.near_ && l.far_ == r.far_ && l.a_ == r.a_;
    }

private:
    Vec2 near_;
    Vec2 far_;
    double a_;
    double b_;
    double d_;
    Vec2 center_;
    Vec2 e1_;
    Vec2 e2_;
};

/// Evaluate a branch at parameter t (t = 0 is the vertex).
inline Vec2 hyperbola_point(const HyperbolaBranch& branch, double t) { return branch.point(t); }

/// Straight line with unit direction; parameter is arc length from origin.
struct Line {
    Vec2 origin;
    Vec2 direction;

    friend bool operator==(const Line&, const Line&) = default;
};

inline bool operator==(const Circle& l, const Circle& r) {
    return l.center == r.center && l.radius == r.radius;
}

/// Line: arc length. Circle: angle in radians, CCW. Hyperbola: branch parameter.
using Curve = std::variant<Line, Circle, HyperbolaBranch>;

enum class SourceKind { RegionBoundary, SensingBoundary, HyperbolaEdge };

/// Which constraint produced a boundary piece. RegionBoundary: first = edge
/// index of the region. SensingBoundary: first = agent. HyperbolaEdge: first =
/// owning agent i, second = neighbor j.
struct SegmentSource {
    SourceKind kind = SourceKind::RegionBoundary;
    int first = -1;
    int second = -1;

    static SegmentSource region(int edge) { return {SourceKind::RegionBoundary, edge, -1}; }
    static SegmentSource sensing(int agent) { return {SourceKind::SensingBoundary, agent, -1}; }
    static SegmentSource hyperbola(int i, int j) { return {SourceKind::HyperbolaEdge, i, j}; }

    friend bool operator==(const SegmentSource&, const SegmentSource&) = default;
};

/// A piece of a curve over the parameter range [t0, t1], t0 <= t1, traversed in
/// increasing parameter with the enclosed region on the left.
struct BoundarySegment {
    Curve curve;
    double t0 = 0.0;
    double t1 = 0.0;
    SegmentSource source;

    Vec2 point(double t) const;
    Vec2 derivative(double t) const;
    Vec2 start() const { return point(t0); }
    Vec2 end() const { return point(t1); }
    double length() const;
    /// Upper bound on the arc length between parameters s0 and s1.
    double arc_bound(double s0, double s1) const;
};

using Loop = std::vector<BoundarySegment>;

/// Closed region bounded by CCW loops of typed segments. No loops means empty.
struct CellRegion {
    std::vector<Loop> loops;

    bool empty() const { return loops.empty(); }
    std::size_t segment_count() const;
};

/// Half-plane {x : dot(normal, x − point) <= 0}; normal points outward.
struct HalfPlane {
    Vec2 point;
    Vec2 normal;
};

/// Implicit region {x : value(x) >= 0} whose boundary curve, traversed with
/// increasing parameter, keeps the region on its left.
class Constraint {
public:
    Constraint(Curve curve, SegmentSource source);

    double value(const Vec2& p) const;
    /// Lipschitz constant of value() with respect to the point.
    double lipschitz() const;
    double parameter_of(const Vec2& p) const;
    const Curve& curve() const { return curve_; }
    const SegmentSource& source() const { return source_; }

private:
    Curve curve_;
    SegmentSource source_;
};

CellRegion cell_from_region(const ConvexRegion& region);

/// Intersection of a cell with an implicit constraint region. Works loop by
/// loop; each loop is assumed to bound a convex set.
CellRegion clip(const CellRegion& cell, const Constraint& constraint);

CellRegion clip_halfplane(const CellRegion& cell, const HalfPlane& plane,
                          SegmentSource source = SegmentSource::region(-1));
/// Non-positive radius yields an empty cell.
CellRegion clip_disk(const CellRegion& cell, const Circle& disk,
                     SegmentSource source = SegmentSource::sensing(-1));
/// Keeps {x : ‖x − far‖ − ‖x − near‖ >= 2a}. Pieces contributed by the branch
/// carry `source`.
CellRegion clip_halfregion_hyperbolic(const CellRegion& cell, const HyperbolaBranch& branch,
                                      SegmentSource source = SegmentSource::hyperbola(-1, -1));

double segment_green(const BoundarySegment& seg, const Vec2& origin);
double region_area(const CellRegion& cell);
bool contains(const CellRegion& cell, const Vec2& p);
BoundingBox bounds(const CellRegion& cell);

/// ∫ integrand(x, n) ds over a segment, n the outward unit normal. Adaptive
/// Gauss–Legendre; stops once successive refinements differ by less than tol.
Vec2 boundary_integral(const BoundarySegment& seg,
                       const std::function<Vec2(const Vec2&, const Vec2&)>& integrand,
                       double tol = 1e-8);

/// ∫ f·n ds over a segment.
Vec2 line_integral(const BoundarySegment& seg, const std::function<double(const Vec2&)>& f,
                   double tol = 1e-8);

/// Scalar adaptive Gauss–Legendre on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

/// Points along a segment with chord deviation at most max_chord_error.
std::vector<Vec2> sample_segment(const BoundarySegment& seg, double max_chord_error);

/// Geometric tolerances shared by the kernel.
namespace tolerance {
inline constexpr double snap = 1e-9;        // endpoints closer than this are merged
inline constexpr double closure = 1e-7;     // loop closing check
inline constexpr double min_length = 1e-11; // pieces shorter than this are dropped
inline constexpr double root = 1e-13;       // bracket width for crossing parameters
} // namespace tolerance

/// True if consecutive endpoints of every loop meet within tolerance::closure.
bool is_closed(const CellRegion& cell);

} // namespace gvcover
