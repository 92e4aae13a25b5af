#include "gvcover/geometry.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace gvcover {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sign-changing brackets are narrowed to this arc length before root polishing.
constexpr double kBracketArc = 1e-7;
constexpr int kMaxDepth = 64;

struct Piece {
    BoundarySegment seg;
    bool kept = false;
};

double refine_root(const BoundarySegment& seg, const Constraint& c, double s0, double g0, double s1,
                   double g1) {
    auto f = [&](double s) { return c.value(seg.point(s)); };
    auto done = [](double a, double b) {
        return std::abs(b - a) <= tolerance::root * std::max(1.0, std::abs(a));
    };
    std::uintmax_t iterations = 100;
    const auto bracket = boost::math::tools::toms748_solve(f, s0, s1, g0, g1, done, iterations);
    return 0.5 * (bracket.first + bracket.second);
}

// Collects parameters in (s0, s1) where the constraint value changes sign.
// An interval is discarded when the Lipschitz bound proves the value cannot
// reach zero inside it.
void find_crossings(const BoundarySegment& seg, const Constraint& c, double s0, double g0, double s1,
                    double g1, int depth, std::vector<double>& roots) {
    const bool pos0 = g0 >= 0.0;
    const bool pos1 = g1 >= 0.0;
    const double arc = seg.arc_bound(s0, s1);
    if (pos0 == pos1 && std::abs(g0) + std::abs(g1) > c.lipschitz() * arc) {
        return;
    }
    const bool leaf = depth >= kMaxDepth || arc < tolerance::min_length ||
                      (pos0 != pos1 && arc < kBracketArc);
    if (leaf) {
        if (pos0 != pos1) {
            roots.push_back(refine_root(seg, c, s0, g0, s1, g1));
        }
        return;
    }
    const double sm = 0.5 * (s0 + s1);
    const double gm = c.value(seg.point(sm));
    find_crossings(seg, c, s0, g0, sm, gm, depth + 1, roots);
    find_crossings(seg, c, sm, gm, s1, g1, depth + 1, roots);
}

void split_segment(const BoundarySegment& seg, const Constraint& c, std::vector<Piece>& out) {
    if (seg.source == c.source()) {
        // Already lies on this constraint's curve.
        out.push_back({seg, true});
        return;
    }
    std::vector<double> roots;
    find_crossings(seg, c, seg.t0, c.value(seg.start()), seg.t1, c.value(seg.end()), 0, roots);
    std::sort(roots.begin(), roots.end());

    const std::size_t first = out.size();
    double from = seg.t0;
    auto emit = [&](double to) {
        if (seg.arc_bound(from, to) < tolerance::min_length) {
            return;
        }
        BoundarySegment piece = seg;
        piece.t0 = from;
        piece.t1 = to;
        const bool kept = c.value(seg.point(0.5 * (from + to))) >= 0.0;
        out.push_back({piece, kept});
        from = to;
    };
    for (double r : roots) {
        emit(r);
    }
    emit(seg.t1);
    if (from != seg.t1 && out.size() > first) {
        // Trailing sliver too short to stand alone: extend the last piece.
        out.back().seg.t1 = seg.t1;
    }
}

std::optional<BoundarySegment> fill_arc(const Constraint& c, const Vec2& from, const Vec2& to) {
    if (distance(from, to) < tolerance::snap) {
        return std::nullopt;
    }
    double t0 = c.parameter_of(from);
    double t1 = c.parameter_of(to);
    if (std::holds_alternative<Circle>(c.curve())) {
        while (t1 <= t0) {
            t1 += kTwoPi;
        }
        while (t1 - t0 > kTwoPi) {
            t1 -= kTwoPi;
        }
    } else if (t1 <= t0) {
        return std::nullopt;
    }
    return BoundarySegment{c.curve(), t0, t1, c.source()};
}

void append_merged(Loop& loop, const BoundarySegment& seg) {
    if (!loop.empty()) {
        auto& last = loop.back();
        if (last.source == seg.source && last.curve == seg.curve &&
            std::abs(last.t1 - seg.t0) <= 1e-15 * std::max(1.0, std::abs(seg.t0))) {
            last.t1 = seg.t1;
            return;
        }
    }
    loop.push_back(seg);
}

double loop_area(const Loop& loop) {
    if (loop.empty()) {
        return 0.0;
    }
    double area = 0.0;
    const Vec2 origin = loop.front().start();
    for (const auto& seg : loop) {
        area += segment_green(seg, origin);
    }
    return area;
}

std::optional<Loop> clip_loop(const Loop& loop, const Constraint& c) {
    std::vector<Piece> pieces;
    for (const auto& seg : loop) {
        split_segment(seg, c, pieces);
    }
    const auto kept_count = std::count_if(pieces.begin(), pieces.end(), [](const Piece& p) { return p.kept; });
    if (kept_count == static_cast<long>(pieces.size())) {
        return loop;
    }
    if (kept_count == 0) {
        // Whole boundary discarded: either disjoint, or a bounded constraint
        // region (a disk) sits entirely inside the loop.
        if (const auto* circle = std::get_if<Circle>(&c.curve())) {
            const Vec2 probe = circle->center + Vec2{circle->radius, 0.0};
            if (contains(CellRegion{{loop}}, probe)) {
                return Loop{BoundarySegment{*circle, 0.0, kTwoPi, c.source()}};
            }
        }
        return std::nullopt;
    }

    const std::size_t n = pieces.size();
    std::size_t start = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (pieces[k].kept && !pieces[(k + n - 1) % n].kept) {
            start = k;
            break;
        }
    }

    Loop out;
    std::optional<Vec2> exit_point;
    for (std::size_t step = 0; step < n; ++step) {
        const Piece& piece = pieces[(start + step) % n];
        if (!piece.kept) {
            if (!exit_point) {
                exit_point = out.back().end();
            }
            continue;
        }
        if (exit_point) {
            if (auto arc = fill_arc(c, *exit_point, piece.seg.start())) {
                append_merged(out, *arc);
            }
            exit_point.reset();
        }
        append_merged(out, piece.seg);
    }
    if (!pieces[(start + n - 1) % n].kept) {
        const Vec2 exit = out.back().end();
        if (auto arc = fill_arc(c, exit, out.front().start())) {
            append_merged(out, *arc);
        }
    }

    std::erase_if(out, [](const BoundarySegment& s) { return s.arc_bound(s.t0, s.t1) < tolerance::min_length; });
    if (out.empty() || loop_area(out) <= 1e-16) {
        return std::nullopt;
    }
    return out;
}

} // namespace

CellRegion clip(const CellRegion& cell, const Constraint& constraint) {
    CellRegion result;
    for (const auto& loop : cell.loops) {
        if (auto clipped = clip_loop(loop, constraint)) {
            result.loops.push_back(std::move(*clipped));
        }
    }
    return result;
}

CellRegion clip_halfplane(const CellRegion& cell, const HalfPlane& plane, SegmentSource source) {
    const double len = norm(plane.normal);
    if (!(len > 0.0)) {
        throw GeometryError("half-plane normal must be nonzero");
    }
    const Vec2 n = plane.normal / len;
    return clip(cell, Constraint{Line{plane.point, perp(n)}, source});
}

CellRegion clip_disk(const CellRegion& cell, const Circle& disk, SegmentSource source) {
    if (!(disk.radius > 0.0)) {
        return {};
    }
    return clip(cell, Constraint{disk, source});
}

CellRegion clip_halfregion_hyperbolic(const CellRegion& cell, const HyperbolaBranch& branch,
                                      SegmentSource source) {
    return clip(cell, Constraint{branch, source});
}

} // namespace gvcover
