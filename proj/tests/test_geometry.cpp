#include "support.hpp"

#include "gvcover/geometry.hpp"

#include <doctest.h>

#include <numbers>

using namespace gvcover;
using testing::grid_area;
using testing::unit_square;

namespace {

constexpr double kPi = std::numbers::pi;

CellRegion square_cell() { return cell_from_region(unit_square()); }

BoundarySegment full_circle(Vec2 c, double r) { return {Circle{c, r}, 0.0, 2.0 * kPi, SegmentSource::sensing(0)}; }

} // namespace

TEST_CASE("convex region validation") {
    CHECK_NOTHROW(ConvexRegion({{0, 0}, {1, 0}, {0, 1}}));
    CHECK_THROWS_AS(ConvexRegion({{0, 0}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(ConvexRegion({{0, 0}, {0, 1}, {1, 0}}), GeometryError);                 // clockwise
    CHECK_THROWS_AS(ConvexRegion({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), GeometryError);         // collinear
    CHECK_THROWS_AS(ConvexRegion({{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}), GeometryError); // reflex
    CHECK_THROWS_AS(ConvexRegion({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 0.5}}), GeometryError);
    CHECK_THROWS_AS(ConvexRegion({{0, 0}, {1, 0}, {NAN, 1}}), GeometryError);

    const auto sq = unit_square();
    CHECK(sq.area() == doctest::Approx(1.0));
    CHECK(sq.perimeter() == doctest::Approx(4.0));
    CHECK(sq.contains({0.5, 0.5}));
    CHECK_FALSE(sq.contains({1.5, 0.5}));
    CHECK(sq.edge_normal(0).y == doctest::Approx(-1.0));
    CHECK(sq.edge_distance(0, {0.5, 0.25}) == doctest::Approx(0.25));
}

TEST_CASE("hyperbola_point") {
    const HyperbolaBranch br({0, 0}, {0.4, 0}, 0.05);

    SUBCASE("vertex lies on the focal segment") {
        const Vec2 v = hyperbola_point(br, 0.0);
        CHECK(v.x == doctest::Approx(0.15).epsilon(1e-12));
        CHECK(v.y == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("distance difference is 2a") {
        for (double t = -4.0; t <= 4.0; t += 0.25) {
            const Vec2 p = hyperbola_point(br, t);
            const double diff = distance(p, br.focus_far()) - distance(p, br.focus_near());
            CHECK(std::abs(diff - 0.1) <= 1e-9 * std::max(0.1, distance(p, br.focus_far())));
        }
    }
    SUBCASE("swapping foci mirrors across the bisector") {
        const HyperbolaBranch other({0.4, 0}, {0, 0}, 0.05);
        for (double t = -2.0; t <= 2.0; t += 0.5) {
            const Vec2 p = hyperbola_point(br, t);
            const Vec2 mirrored{0.4 - p.x, p.y};
            const Vec2 q = hyperbola_point(other, -t);
            CHECK(q.x == doctest::Approx(mirrored.x).epsilon(1e-12));
            CHECK(q.y == doctest::Approx(mirrored.y).epsilon(1e-12));
        }
    }
    SUBCASE("eccentricity and parameter inverse") {
        CHECK(br.eccentricity() == doctest::Approx(4.0));
        CHECK(br.parameter_of(hyperbola_point(br, 1.3)) == doctest::Approx(1.3));
    }
    SUBCASE("zero semi-transverse gives the bisector") {
        const HyperbolaBranch bis({0, 0}, {0.4, 0}, 0.0);
        for (double t = -2.0; t <= 2.0; t += 0.5) {
            CHECK(hyperbola_point(bis, t).x == doctest::Approx(0.2));
        }
    }
    CHECK_THROWS_AS(HyperbolaBranch({0, 0}, {0.1, 0}, 0.05), GeometryError);
}

TEST_CASE("clip_halfregion_hyperbolic") {
    SUBCASE("square split between two foci") {
        const HyperbolaBranch br({0.3, 0.5}, {0.7, 0.5}, 0.05);
        const auto cell = clip_halfregion_hyperbolic(square_cell(), br, SegmentSource::hyperbola(0, 1));
        REQUIRE_FALSE(cell.empty());
        CHECK(is_closed(cell));
        CHECK(contains(cell, {0.0 + 1e-6, 0.5}));
        CHECK_FALSE(contains(cell, {1.0 - 1e-6, 0.5}));
        // membership oracle at the two probes
        CHECK(distance(Vec2{0, 0.5}, {0.7, 0.5}) - distance(Vec2{0, 0.5}, {0.3, 0.5}) >= 0.1);
        CHECK(distance(Vec2{1, 0.5}, {0.7, 0.5}) - distance(Vec2{1, 0.5}, {0.3, 0.5}) < 0.1);
        CHECK(region_area(cell) < 1.0);
        bool tagged = false;
        for (const auto& seg : cell.loops.front()) {
            tagged = tagged || seg.source == SegmentSource::hyperbola(0, 1);
        }
        CHECK(tagged);
    }
    SUBCASE("branch outside the cell, cell kept") {
        const HyperbolaBranch br({0.5, 0.5}, {5.0, 0.5}, 0.05);
        const auto cell = clip_halfregion_hyperbolic(square_cell(), br);
        CHECK(region_area(cell) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cell.segment_count() == 4);
    }
    SUBCASE("cell entirely discarded") {
        const HyperbolaBranch br({5.0, 0.5}, {0.5, 0.5}, 0.05);
        CHECK(clip_halfregion_hyperbolic(square_cell(), br).empty());
    }
}

TEST_CASE("clip_halfplane") {
    const auto half = clip_halfplane(square_cell(), {{0.5, 0}, {1, 0}});
    CHECK(region_area(half) == doctest::Approx(0.5).epsilon(1e-12));
    const auto same = clip_halfplane(square_cell(), {{2, 0}, {1, 0}});
    CHECK(region_area(same) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.segment_count() == 4);
    CHECK(clip_halfplane(square_cell(), {{-1, 0}, {1, 0}}).empty());
}

TEST_CASE("clip_disk") {
    SUBCASE("disk inside the cell") {
        const auto c = clip_disk(square_cell(), {{0.5, 0.5}, 0.25}, SegmentSource::sensing(3));
        REQUIRE(c.loops.size() == 1);
        REQUIRE(c.loops.front().size() == 1);
        CHECK(std::holds_alternative<Circle>(c.loops.front().front().curve));
        CHECK(c.loops.front().front().source == SegmentSource::sensing(3));
        CHECK(region_area(c) == doctest::Approx(kPi * 0.0625).epsilon(1e-12));
    }
    SUBCASE("disjoint") { CHECK(clip_disk(square_cell(), {{3, 3}, 0.25}).empty()); }
    SUBCASE("quarter disk at a corner") {
        const auto c = clip_disk(square_cell(), {{0, 0}, 0.25});
        CHECK(region_area(c) == doctest::Approx(kPi * 0.0625 / 4.0).epsilon(1e-12));
        CHECK(region_area(c) == doctest::Approx(0.049087385).epsilon(1e-8));
    }
    SUBCASE("non-positive radius") {
        CHECK(clip_disk(square_cell(), {{0.5, 0.5}, 0.0}).empty());
        CHECK(clip_disk(square_cell(), {{0.5, 0.5}, -1.0}).empty());
    }
    SUBCASE("cell inside the disk") {
        CHECK(region_area(clip_disk(square_cell(), {{0.5, 0.5}, 2.0})) == doctest::Approx(1.0));
    }
}

TEST_CASE("region_area") {
    CHECK(region_area(square_cell()) == doctest::Approx(1.0).epsilon(1e-14));
    const CellRegion disk{{Loop{full_circle({0.3, 0.2}, 0.25)}}};
    CHECK(region_area(disk) == doctest::Approx(0.19634954084936207).epsilon(1e-12));
    CHECK(region_area(CellRegion{}) == 0.0);

    SUBCASE("hyperbolic region vs grid sampling") {
        const HyperbolaBranch br({0.35, 0.4}, {0.75, 0.65}, 0.05);
        const auto cell = clip_halfregion_hyperbolic(square_cell(), br);
        const double oracle = grid_area({{0, 0}, {1, 1}}, 1000, [&](const Vec2& x) {
            return distance(x, br.focus_far()) - distance(x, br.focus_near()) >= 0.1;
        });
        CHECK(testing::near_rel(region_area(cell), oracle, 1e-3));
    }
}

TEST_CASE("line_integral") {
    const auto one = [](const Vec2&) { return 1.0; };
    const double r = 0.3;
    SUBCASE("full circle") {
        const Vec2 v = line_integral(full_circle({0.1, 0.2}, r), one);
        CHECK(std::abs(v.x) < 1e-12);
        CHECK(std::abs(v.y) < 1e-12);
    }
    SUBCASE("right half circle") {
        const BoundarySegment seg{Circle{{0, 0}, r}, -kPi / 2, kPi / 2, SegmentSource::sensing(0)};
        const Vec2 v = line_integral(seg, one);
        CHECK(v.x == doctest::Approx(2.0 * r).epsilon(1e-12));
        CHECK(std::abs(v.y) < 1e-12);
    }
    SUBCASE("arc formula for an arbitrary range") {
        const double t1 = 0.3;
        const double t2 = 2.1;
        const BoundarySegment seg{Circle{{0, 0}, r}, t1, t2, SegmentSource::sensing(0)};
        const Vec2 v = line_integral(seg, one);
        CHECK(v.x == doctest::Approx(r * (std::sin(t2) - std::sin(t1))).epsilon(1e-12));
        CHECK(v.y == doctest::Approx(r * (std::cos(t1) - std::cos(t2))).epsilon(1e-12));
    }
    SUBCASE("left edge of the unit square") {
        // traversed counter-clockwise, (0,1) -> (0,0), outward normal (-1, 0)
        const BoundarySegment seg{Line{{0, 1}, {0, -1}}, 0.0, 1.0, SegmentSource::region(3)};
        const Vec2 v = line_integral(seg, one);
        CHECK(v.x == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(std::abs(v.y) < 1e-14);
    }
    SUBCASE("non-uniform integrand on a hyperbolic arc matches a fine Riemann sum") {
        const HyperbolaBranch br({0, 0}, {0.4, 0.1}, 0.05);
        const BoundarySegment seg{br, -1.2, 0.8, SegmentSource::hyperbola(0, 1)};
        const auto f = [](const Vec2& x) { return 1.0 + x.x * x.x + 0.5 * x.y; };
        const Vec2 v = line_integral(seg, f);
        Vec2 ref{};
        const int m = 200000;
        const double h = (seg.t1 - seg.t0) / m;
        for (int k = 0; k < m; ++k) {
            const double t = seg.t0 + (k + 0.5) * h;
            const Vec2 d = seg.derivative(t);
            ref += f(seg.point(t)) * h * Vec2{d.y, -d.x};
        }
        CHECK(v.x == doctest::Approx(ref.x).epsilon(1e-8));
        CHECK(v.y == doctest::Approx(ref.y).epsilon(1e-8));
    }
}

TEST_CASE("clipping is monotone and idempotent") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const Vec2 near{u(rng), u(rng)};
        Vec2 far{u(rng), u(rng)};
        if (distance(near, far) < 0.15) {
            continue;
        }
        const HyperbolaBranch br(near, far, 0.05);
        const Circle disk{{u(rng), u(rng)}, 0.1 + 0.4 * u(rng)};
        const HalfPlane hp{{u(rng), u(rng)}, normalized(Vec2{u(rng) - 0.5, u(rng) - 0.5})};

        const auto base = square_cell();
        const auto once_h = clip_halfregion_hyperbolic(base, br, SegmentSource::hyperbola(0, 1));
        const auto twice_h = clip_halfregion_hyperbolic(once_h, br, SegmentSource::hyperbola(0, 1));
        const auto once_d = clip_disk(once_h, disk);
        const auto twice_d = clip_disk(once_d, disk);
        const auto once_p = clip_halfplane(once_d, hp);
        const auto twice_p = clip_halfplane(once_p, hp);

        CHECK(region_area(once_h) <= region_area(base) + 1e-12);
        CHECK(region_area(once_d) <= region_area(once_h) + 1e-12);
        CHECK(region_area(once_p) <= region_area(once_d) + 1e-12);
        CHECK(std::abs(region_area(twice_h) - region_area(once_h)) < 1e-9);
        CHECK(std::abs(region_area(twice_d) - region_area(once_d)) < 1e-9);
        CHECK(std::abs(region_area(twice_p) - region_area(once_p)) < 1e-9);
        CHECK(is_closed(once_p));
    }
}

TEST_CASE("constructed cells agree with the defining inequalities") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<HyperbolaBranch, int>> cuts;
        const Vec2 own{0.3 + 0.4 * u(rng), 0.3 + 0.4 * u(rng)};
        CellRegion cell = square_cell();
        std::vector<Vec2> others;
        while (others.size() < 4) {
            const Vec2 p{u(rng), u(rng)};
            if (distance(p, own) > 0.14) {
                others.push_back(p);
            }
        }
        for (std::size_t j = 0; j < others.size(); ++j) {
            cell = clip_halfregion_hyperbolic(cell, HyperbolaBranch(own, others[j], 0.05),
                                              SegmentSource::hyperbola(0, static_cast<int>(j) + 1));
        }
        const Circle disk{own, 0.25};
        cell = clip_disk(cell, disk);
        const auto inside = [&](const Vec2& x) {
            if (distance(x, own) > 0.25) {
                return false;
            }
            for (const auto& o : others) {
                if (distance(x, o) - distance(x, own) < 0.1) {
                    return false;
                }
            }
            return true;
        };
        const int res = 300;
        int agree = 0;
        for (int r = 0; r < res; ++r) {
            for (int c = 0; c < res; ++c) {
                const Vec2 x{(c + 0.5) / res, (r + 0.5) / res};
                agree += contains(cell, x) == inside(x) ? 1 : 0;
            }
        }
        CHECK(agree >= 0.999 * res * res);
        const double oracle = grid_area({{0, 0}, {1, 1}}, 2000, inside);
        CHECK(std::abs(region_area(cell) - oracle) <= std::max(1e-3 * oracle, 2e-6));

        for (const auto& loop : cell.loops) {
            for (const auto& seg : loop) {
                if (const auto* br = std::get_if<HyperbolaBranch>(&seg.curve)) {
                    for (const Vec2& p : sample_segment(seg, 1e-4)) {
                        const double scale = std::max(2.0 * br->semi_transverse(), distance(p, br->focus_far()));
                        CHECK(std::abs(br->focal_residual(p)) <= 1e-9 * scale);
                    }
                }
            }
        }
    }
}

TEST_CASE("sample_segment respects the chord tolerance") {
    const HyperbolaBranch br({0, 0}, {0.4, 0}, 0.05);
    const BoundarySegment seg{br, -2.0, 2.0, SegmentSource::hyperbola(0, 1)};
    const double tol = 1e-3;
    const auto pts = sample_segment(seg, tol);
    REQUIRE(pts.size() >= 2);
    CHECK(distance(pts.front(), seg.start()) < 1e-12);
    CHECK(distance(pts.back(), seg.end()) < 1e-12);
    // every curve point is within tol of the polyline
    for (double t = seg.t0; t <= seg.t1; t += 1e-3) {
        const Vec2 p = seg.point(t);
        double best = HUGE_VAL;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const Vec2 d = pts[k + 1] - pts[k];
            const double s = std::clamp(dot(p - pts[k], d) / dot(d, d), 0.0, 1.0);
            best = std::min(best, distance(p, pts[k] + s * d));
        }
        CHECK(best <= tol * 1.0001);
    }
}

TEST_CASE("point containment and bounds") {
    const auto c = clip_disk(square_cell(), {{1.0, 0.5}, 0.3});
    CHECK(contains(c, {0.9, 0.5}));
    CHECK_FALSE(contains(c, {0.6, 0.5}));
    CHECK_FALSE(contains(c, {1.1, 0.5}));
    const auto b = bounds(c);
    CHECK(b.lo.x == doctest::Approx(0.7));
    CHECK(b.hi.x == doctest::Approx(1.0));
    CHECK(b.lo.y == doctest::Approx(0.2));
    CHECK(b.hi.y == doctest::Approx(0.8));
}
