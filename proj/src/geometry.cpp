#include "gvcover/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace gvcover {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

// ---------------------------------------------------------------------------
// ConvexRegion

ConvexRegion::ConvexRegion(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw GeometryError("convex region needs at least 3 vertices, got " + std::to_string(n));
    }
    for (const auto& v : vertices_) {
        if (!is_finite(v)) {
            throw GeometryError("convex region vertex is not finite");
        }
    }
    double turning = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = vertices_[k];
        const Vec2& b = vertices_[(k + 1) % n];
        const Vec2& c = vertices_[(k + 2) % n];
        if (!(cross(b - a, c - b) > 0.0)) {
            throw GeometryError("convex region is not strictly convex and counter-clockwise at vertex " +
                                std::to_string((k + 1) % n));
        }
        turning += std::atan2(cross(b - a, c - b), dot(b - a, c - b));
    }
    // Exactly one full turn rules out star-shaped self-intersecting traversals.
    if (std::abs(turning - kTwoPi) > 1e-6) {
        throw GeometryError("convex region boundary is self-intersecting");
    }
}

double ConvexRegion::area() const {
    double twice = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        twice += cross(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
    }
    return 0.5 * twice;
}

double ConvexRegion::perimeter() const {
    double total = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        total += distance(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
    }
    return total;
}

BoundingBox ConvexRegion::bounds() const {
    BoundingBox box{vertices_.front(), vertices_.front()};
    for (const auto& v : vertices_) {
        box.lo = {std::min(box.lo.x, v.x), std::min(box.lo.y, v.y)};
        box.hi = {std::max(box.hi.x, v.x), std::max(box.hi.y, v.y)};
    }
    return box;
}

bool ConvexRegion::contains(const Vec2& p) const {
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        if (edge_distance(k, p) < 0.0) {
            return false;
        }
    }
    return true;
}

Vec2 ConvexRegion::edge_normal(std::size_t k) const {
    const Vec2 dir = normalized(vertices_[(k + 1) % vertices_.size()] - vertices_[k]);
    return {dir.y, -dir.x};
}

double ConvexRegion::edge_distance(std::size_t k, const Vec2& p) const {
    return -dot(edge_normal(k), p - vertices_[k]);
}

// ---------------------------------------------------------------------------
// HyperbolaBranch

HyperbolaBranch::HyperbolaBranch(Vec2 focus_near, Vec2 focus_far, double semi_transverse)
    : near_(focus_near), far_(focus_far), a_(semi_transverse) {
    if (!is_finite(near_) || !is_finite(far_) || !std::isfinite(a_) || a_ < 0.0) {
        throw GeometryError("hyperbola branch: invalid foci or semi-transverse length");
    }
    d_ = distance(near_, far_);
    if (!(d_ > 2.0 * a_)) {
        throw GeometryError("hyperbola branch: focal distance must exceed 2a (degenerate branch)");
    }
    center_ = 0.5 * (near_ + far_);
    e1_ = (near_ - far_) / d_;
    e2_ = {e1_.y, -e1_.x};
    b_ = std::sqrt((0.5 * d_ - a_) * (0.5 * d_ + a_));
}

Vec2 HyperbolaBranch::point(double t) const {
    return center_ + (a_ * std::cosh(t)) * e1_ + (b_ * std::sinh(t)) * e2_;
}

Vec2 HyperbolaBranch::derivative(double t) const {
    return (a_ * std::sinh(t)) * e1_ + (b_ * std::cosh(t)) * e2_;
}

double HyperbolaBranch::parameter_of(const Vec2& p) const {
    return std::asinh(dot(p - center_, e2_) / b_);
}

double HyperbolaBranch::focal_residual(const Vec2& p) const {
    return distance(p, far_) - distance(p, near_) - 2.0 * a_;
}

Mat2 HyperbolaBranch::jacobian_near(double t) const {
    // Center moves at half rate; the frame rotates with the focal axis and the
    // conjugate length b follows the focal distance.
    const double ch = std::cosh(t);
    const double sh = std::sinh(t);
    return 0.5 * Mat2::identity() + (a_ * ch / d_) * Mat2::outer(e2_, e2_) +
           (d_ * sh / (4.0 * b_)) * Mat2::outer(e2_, e1_) - (b_ * sh / d_) * Mat2::outer(e1_, e2_);
}

Mat2 HyperbolaBranch::jacobian_far(double t) const {
    return Mat2::identity() - jacobian_near(t);
}

// ---------------------------------------------------------------------------
// BoundarySegment

Vec2 BoundarySegment::point(double t) const {
    return std::visit(Overloaded{
                          [t](const Line& l) { return l.origin + t * l.direction; },
                          [t](const Circle& c) {
                              return c.center + c.radius * Vec2{std::cos(t), std::sin(t)};
                          },
                          [t](const HyperbolaBranch& h) { return h.point(t); },
                      },
                      curve);
}

Vec2 BoundarySegment::derivative(double t) const {
    return std::visit(Overloaded{
                          [](const Line& l) { return l.direction; },
                          [t](const Circle& c) {
                              return c.radius * Vec2{-std::sin(t), std::cos(t)};
                          },
                          [t](const HyperbolaBranch& h) { return h.derivative(t); },
                      },
                      curve);
}

double BoundarySegment::arc_bound(double s0, double s1) const {
    const double span = std::abs(s1 - s0);
    return std::visit(Overloaded{
                          [span](const Line&) { return span; },
                          [span](const Circle& c) { return span * c.radius; },
                          [&](const HyperbolaBranch& h) {
                              // Speed grows with |t|, so the larger endpoint speed bounds it.
                              return span * std::max(norm(h.derivative(s0)), norm(h.derivative(s1)));
                          },
                      },
                      curve);
}

double BoundarySegment::length() const {
    if (std::holds_alternative<HyperbolaBranch>(curve)) {
        return integrate([this](double t) { return norm(derivative(t)); }, t0, t1, 1e-12);
    }
    return arc_bound(t0, t1);
}

std::size_t CellRegion::segment_count() const {
    std::size_t count = 0;
    for (const auto& loop : loops) {
        count += loop.size();
    }
    return count;
}

bool is_closed(const CellRegion& cell) {
    for (const auto& loop : cell.loops) {
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const auto& next = loop[(k + 1) % loop.size()];
            if (distance(loop[k].end(), next.start()) > tolerance::closure) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Constraint

Constraint::Constraint(Curve curve, SegmentSource source)
    : curve_(std::move(curve)), source_(source) {}

double Constraint::value(const Vec2& p) const {
    return std::visit(Overloaded{
                          [&p](const Line& l) { return cross(l.direction, p - l.origin); },
                          [&p](const Circle& c) { return c.radius - distance(p, c.center); },
                          [&p](const HyperbolaBranch& h) { return h.focal_residual(p); },
                      },
                      curve_);
}

double Constraint::lipschitz() const {
    return std::holds_alternative<HyperbolaBranch>(curve_) ? 2.0 : 1.0;
}

double Constraint::parameter_of(const Vec2& p) const {
    return std::visit(Overloaded{
                          [&p](const Line& l) { return dot(p - l.origin, l.direction); },
                          [&p](const Circle& c) {
                              return std::atan2(p.y - c.center.y, p.x - c.center.x);
                          },
                          [&p](const HyperbolaBranch& h) { return h.parameter_of(p); },
                      },
                      curve_);
}

CellRegion cell_from_region(const ConvexRegion& region) {
    Loop loop;
    const auto& v = region.vertices();
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec2 edge = v[(k + 1) % v.size()] - v[k];
        const double len = norm(edge);
        loop.push_back({Line{v[k], edge / len}, 0.0, len, SegmentSource::region(static_cast<int>(k))});
    }
    return CellRegion{{std::move(loop)}};
}

// ---------------------------------------------------------------------------
// Area and containment

double segment_green(const BoundarySegment& seg, const Vec2& origin) {
    // ½ ∫ cross(p − origin, p') dt
    return std::visit(
        Overloaded{
            [&](const Line&) { return 0.5 * cross(seg.start() - origin, seg.end() - origin); },
            [&](const Circle& c) {
                const Vec2 o = c.center - origin;
                const double r = c.radius;
                return 0.5 * (r * o.x * (std::sin(seg.t1) - std::sin(seg.t0)) +
                              r * o.y * (std::cos(seg.t0) - std::cos(seg.t1)) + r * r * (seg.t1 - seg.t0));
            },
            [&](const HyperbolaBranch& h) {
                const Vec2 o = h.center() - origin;
                const Vec2 A = h.semi_transverse() * h.axis();
                const Vec2 B = h.semi_conjugate() * h.transverse_axis_perp();
                return 0.5 * (cross(o, A) * (std::cosh(seg.t1) - std::cosh(seg.t0)) +
                              cross(o, B) * (std::sinh(seg.t1) - std::sinh(seg.t0)) +
                              cross(A, B) * (seg.t1 - seg.t0));
            },
        },
        seg.curve);
}

double region_area(const CellRegion& cell) {
    double area = 0.0;
    for (const auto& loop : cell.loops) {
        if (loop.empty()) {
            continue;
        }
        const Vec2 origin = loop.front().start();
        for (const auto& seg : loop) {
            area += segment_green(seg, origin);
        }
    }
    return area;
}

namespace {

// Parameters in [t0, t1) where the segment meets the horizontal line y = py.
void horizontal_hits(const BoundarySegment& seg, double py, std::vector<double>& out) {
    out.clear();
    auto push = [&](double t) {
        if (t >= seg.t0 && t < seg.t1) {
            out.push_back(t);
        }
    };
    std::visit(Overloaded{
                   [&](const Line& l) {
                       if (l.direction.y != 0.0) {
                           push((py - l.origin.y) / l.direction.y);
                       }
                   },
                   [&](const Circle& c) {
                       const double s = (py - c.center.y) / c.radius;
                       if (!(std::abs(s) < 1.0)) {
                           return;
                       }
                       const double base[2] = {std::asin(s), std::numbers::pi - std::asin(s)};
                       for (double b : base) {
                           const double k0 = std::ceil((seg.t0 - b) / kTwoPi);
                           for (double k = k0; b + k * kTwoPi < seg.t1; k += 1.0) {
                               push(b + k * kTwoPi);
                           }
                       }
                   },
                   [&](const HyperbolaBranch& h) {
                       // A cosh t + B sinh t = C, solved in w = e^t.
                       const double A = h.semi_transverse() * h.axis().y;
                       const double B = h.semi_conjugate() * h.transverse_axis_perp().y;
                       const double C = py - h.center().y;
                       const double qa = A + B;
                       const double qb = -2.0 * C;
                       const double qc = A - B;
                       if (std::abs(qa) < 1e-300) {
                           if (qb != 0.0) {
                               const double w = -qc / qb;
                               if (w > 0.0) {
                                   push(std::log(w));
                               }
                           }
                           return;
                       }
                       const double disc = qb * qb - 4.0 * qa * qc;
                       if (disc < 0.0) {
                           return;
                       }
                       const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
                       std::array<double, 2> roots{q / qa, q != 0.0 ? qc / q : -qb / (2.0 * qa)};
                       if (disc == 0.0) {
                           roots[1] = roots[0];
                       }
                       for (int k = 0; k < (disc == 0.0 ? 1 : 2); ++k) {
                           if (roots[k] > 0.0) {
                               push(std::log(roots[k]));
                           }
                       }
                   },
               },
               seg.curve);
}

} // namespace

bool contains(const CellRegion& cell, const Vec2& p) {
    bool inside = false;
    std::vector<double> hits;
    for (const auto& loop : cell.loops) {
        for (const auto& seg : loop) {
            horizontal_hits(seg, p.y, hits);
            for (double t : hits) {
                if (seg.point(t).x > p.x && seg.derivative(t).y != 0.0) {
                    inside = !inside;
                }
            }
        }
    }
    return inside;
}

BoundingBox bounds(const CellRegion& cell) {
    BoundingBox box{{HUGE_VAL, HUGE_VAL}, {-HUGE_VAL, -HUGE_VAL}};
    for (const auto& loop : cell.loops) {
        for (const auto& seg : loop) {
            for (const Vec2& q : sample_segment(seg, 1e-4 * std::max(seg.length(), 1e-12))) {
                box.lo = {std::min(box.lo.x, q.x), std::min(box.lo.y, q.y)};
                box.hi = {std::max(box.hi.x, q.x), std::max(box.hi.y, q.y)};
            }
        }
    }
    return box;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

using Rule = boost::math::quadrature::gauss<double, 10>;

template <class T, class F>
T gauss_rule(const F& f, double a, double b) {
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T sum{};
    for (std::size_t k = 0; k < x.size(); ++k) {
        sum += w[k] * (f(mid + half * x[k]) + f(mid - half * x[k]));
    }
    return half * sum;
}

double magnitude(double v) { return std::abs(v); }
double magnitude(const Vec2& v) { return norm(v); }

template <class T, class F>
T adaptive(const F& f, double a, double b, const T& whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const T left = gauss_rule<T>(f, a, m);
    const T right = gauss_rule<T>(f, m, b);
    const T refined = left + right;
    if (depth <= 0 || magnitude(refined - whole) < tol) {
        return refined;
    }
    return adaptive<T>(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive<T>(f, m, b, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) {
        return 0.0;
    }
    return adaptive<double>(f, a, b, gauss_rule<double>(f, a, b), tol, 30);
}

Vec2 boundary_integral(const BoundarySegment& seg,
                       const std::function<Vec2(const Vec2&, const Vec2&)>& integrand, double tol) {
    if (seg.t1 <= seg.t0) {
        return {};
    }
    // Outward normal times ds is the right-hand normal of the derivative.
    auto f = [&](double t) {
        const Vec2 d = seg.derivative(t);
        const double speed = norm(d);
        if (speed == 0.0) {
            return Vec2{};
        }
        const Vec2 n{d.y / speed, -d.x / speed};
        return speed * integrand(seg.point(t), n);
    };
    return adaptive<Vec2>(f, seg.t0, seg.t1, gauss_rule<Vec2>(f, seg.t0, seg.t1), tol, 30);
}

Vec2 line_integral(const BoundarySegment& seg, const std::function<double(const Vec2&)>& f, double tol) {
    return boundary_integral(
        seg, [&f](const Vec2& x, const Vec2& n) { return f(x) * n; }, tol);
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

void sample_recursive(const BoundarySegment& seg, double s0, const Vec2& p0, double s1, const Vec2& p1,
                      double tol, int depth, std::vector<Vec2>& out) {
    const double sm = 0.5 * (s0 + s1);
    const Vec2 pm = seg.point(sm);
    const Vec2 chord = p1 - p0;
    const double len = norm(chord);
    const double deviation = len > 0.0 ? std::abs(cross(chord, pm - p0)) / len : distance(pm, p0);
    // Quarter points also checked so an S-shaped span cannot hide behind its midpoint.
    const Vec2 pq = seg.point(0.5 * (s0 + sm));
    const double deviation_q = len > 0.0 ? std::abs(cross(chord, pq - p0)) / len : distance(pq, p0);
    if (depth > 0 && std::max(deviation, deviation_q) > tol) {
        sample_recursive(seg, s0, p0, sm, pm, tol, depth - 1, out);
        sample_recursive(seg, sm, pm, s1, p1, tol, depth - 1, out);
        return;
    }
    out.push_back(p1);
}

} // namespace

std::vector<Vec2> sample_segment(const BoundarySegment& seg, double max_chord_error) {
    std::vector<Vec2> out{seg.start()};
    if (seg.t1 <= seg.t0) {
        return out;
    }
    // Start from a few pieces so closed circles are not judged by a degenerate chord.
    constexpr int kInitial = 8;
    Vec2 prev = seg.start();
    for (int k = 1; k <= kInitial; ++k) {
        const double s0 = seg.t0 + (seg.t1 - seg.t0) * (k - 1) / kInitial;
        const double s1 = k == kInitial ? seg.t1 : seg.t0 + (seg.t1 - seg.t0) * k / kInitial;
        const Vec2 next = seg.point(s1);
        sample_recursive(seg, s0, prev, s1, next, max_chord_error, 24, out);
        prev = next;
    }
    return out;
}

} // namespace gvcover
