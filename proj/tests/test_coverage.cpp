#include "support.hpp"

#include "gvcover/coverage.hpp"

#include <doctest.h>

#include <numbers>

using namespace gvcover;
using testing::random_agents;
using testing::unit_square;

namespace {

constexpr double kDiskArea = std::numbers::pi * 0.25 * 0.25;

AgentState agent(int id, Vec2 c, double r_u = 0.05, double r_s = 0.3) { return {id, c, r_u, r_s, true}; }

ConvexRegion big_square() { return ConvexRegion({{0, 0}, {4, 0}, {4, 4}, {0, 4}}); }

} // namespace

TEST_CASE("guaranteed_sensing_disk") {
    const auto c = guaranteed_sensing_disk(agent(0, {1, 2}));
    CHECK(c.radius == doctest::Approx(0.25));
    CHECK(c.center == Vec2{1, 2});
    CHECK(guaranteed_sensing_disk(agent(0, {0, 0}, 0.0, 0.3)).radius == doctest::Approx(0.3));
    CHECK_THROWS_WITH_AS(guaranteed_sensing_disk(agent(0, {0, 0}, 0.3, 0.3)), doctest::Contains("no guaranteed sensing"),
                         std::invalid_argument);
}

TEST_CASE("Density") {
    CHECK(Density::uniform(2.0)({5, 5}) == 2.0);
    CHECK(Density::uniform(2.0).sup() == 2.0);
    CHECK_THROWS_AS(Density::uniform(-1.0), std::invalid_argument);

    DensityGrid g;
    g.width = 3;
    g.height = 2;
    g.box = {{0, 0}, {2, 1}};
    g.values = {0, 1, 2, 3, 4, 5};
    const auto d = Density::grid(g);
    CHECK(d({0, 0}) == doctest::Approx(0));
    CHECK(d({2, 1}) == doctest::Approx(5));
    CHECK(d({0.5, 0.5}) == doctest::Approx(2.0)); // bilinear: mean of 0,1,3,4
    CHECK(d({-1, -1}) == doctest::Approx(0));     // clamped
    CHECK(d.sup() == 5.0);
    CHECK(d == Density::grid(g));
    CHECK_FALSE(d == Density::uniform(1.0));

    g.values.pop_back();
    CHECK_THROWS_AS(Density::grid(g), std::invalid_argument);
}

TEST_CASE("sensed_cell") {
    SUBCASE("interior agent senses its full disk") {
        const std::vector agents{agent(0, {2, 2})};
        const auto d = gv_diagram(agents, big_square());
        const auto c = sensed_cell(0, d, agents);
        CHECK(region_area(c) == doctest::Approx(kDiskArea).epsilon(1e-12));
        CHECK(kDiskArea == doctest::Approx(0.196350).epsilon(1e-6));
    }
    SUBCASE("empty cell gives an empty sensed cell") {
        const std::vector agents{agent(0, {2, 2}), agent(1, {2.08, 2})};
        const auto d = gv_diagram(agents, big_square());
        CHECK(sensed_cell(0, d, agents).empty());
        CHECK(sensed_cell(1, d, agents).empty());
    }
    SUBCASE("random instances vs grid oracle") {
        std::mt19937_64 rng(3);
        const auto sq = unit_square();
        for (int trial = 0; trial < 4; ++trial) {
            const auto agents = random_agents(rng, 5, sq, 0.05, 0.3);
            const auto d = gv_diagram(agents, sq);
            for (int i = 0; i < 5; ++i) {
                const double a = region_area(sensed_cell(i, d, agents));
                const double oracle = testing::grid_area(
                    sq.bounds(), 1000, [&](const Vec2& x) { return in_sensed_cell(i, agents, sq, x); });
                CHECK(std::abs(a - oracle) <= std::max(0.01 * oracle, 1e-5));
            }
        }
    }
}

TEST_CASE("objective") {
    SUBCASE("single interior agent") {
        const auto r = objective(std::vector{agent(0, {2, 2})}, big_square(), Density::uniform(1.0));
        CHECK(r.total_H == doctest::Approx(kDiskArea).epsilon(1e-12));
        CHECK(r.coverage_fraction == doctest::Approx(1.0));
    }
    SUBCASE("zero density") {
        const auto r = objective(std::vector{agent(0, {2, 2}), agent(1, {2.5, 2})}, big_square(), Density::uniform(0.0));
        CHECK(r.total_H == 0.0);
        CHECK(r.coverage_fraction == 0.0);
    }
    SUBCASE("spread network reaches full coverage") {
        // ten agents far enough apart that every sensing disk fits in its cell
        std::vector<AgentState> agents;
        for (int k = 0; k < 10; ++k) {
            agents.push_back(agent(k, {0.4 + 0.8 * (k % 5), 0.5 + 0.9 * (k / 5)}));
        }
        const auto r = objective(agents, big_square(), Density::uniform(1.0));
        CHECK(r.coverage_fraction == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.total_H == doctest::Approx(10 * kDiskArea));
    }
    SUBCASE("report bookkeeping") {
        std::mt19937_64 rng(8);
        const auto agents = random_agents(rng, 6, unit_square(), 0.05, 0.3);
        const auto r = objective(agents, unit_square(), Density::uniform(1.0));
        double sum = 0.0;
        for (double h : r.per_agent_H) {
            sum += h;
        }
        CHECK(r.total_H == doctest::Approx(sum).epsilon(1e-14));
        CHECK(r.coverage_fraction >= 0.0);
        CHECK(r.coverage_fraction <= 1.0);
        CHECK(r.max_H == doctest::Approx(std::min(1.0, 6 * kDiskArea)));
    }
}

TEST_CASE("sampled_objective") {
    const auto sq = unit_square();
    CHECK(sampled_objective(std::vector<AgentState>{}, sq, Density::uniform(1.0), 200) == 0.0);
    const ConvexRegion box({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(sampled_objective(std::vector{agent(0, {0.5, 0.5})}, box, Density::uniform(1.0), 1000) ==
          doctest::Approx(kDiskArea).epsilon(0.01));
    CHECK_THROWS_AS(sampled_objective(std::vector{agent(0, {0.5, 0.5})}, box, Density::uniform(1.0), 50),
                    std::invalid_argument);
}

TEST_CASE("objective matches the sampling oracle on random instances") {
    std::mt19937_64 rng(41);
    const auto sq = unit_square();
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const auto agents = random_agents(rng, n, sq, 0.05, 0.3);
        const double exact = objective(agents, sq, Density::uniform(1.0)).total_H;
        const double sampled = sampled_objective(agents, sq, Density::uniform(1.0), 600);
        CHECK(exact == doctest::Approx(sampled).epsilon(0.01));
    }
}

TEST_CASE("non-uniform densities") {
    std::mt19937_64 rng(43);
    const auto sq = unit_square();
    const auto field = [](const Vec2& x) { return 1.0 + 2.0 * x.x * x.y + std::sin(3.0 * x.y); };
    const auto phi = Density::callable(field, 4.0);
    DensityGrid g;
    g.width = 21;
    g.height = 21;
    g.box = {{0, 0}, {1, 1}};
    for (std::size_t r = 0; r < g.height; ++r) {
        for (std::size_t c = 0; c < g.width; ++c) {
            g.values.push_back(field({c / 20.0, r / 20.0}));
        }
    }
    const auto grid = Density::grid(g);
    for (int trial = 0; trial < 6; ++trial) {
        const auto agents = random_agents(rng, 2 + trial, sq, 0.05, 0.3);
        for (const auto& density : {phi, grid}) {
            const double exact = objective(agents, sq, density).total_H;
            const double sampled = sampled_objective(agents, sq, density, 800);
            CHECK(exact == doctest::Approx(sampled).epsilon(0.01));
        }
    }
    SUBCASE("integrate_density of a linear field over a disk") {
        const auto lin = Density::callable([](const Vec2& x) { return 2.0 + x.x; }, 3.0);
        const CellRegion disk{{Loop{BoundarySegment{Circle{{0.5, 0.5}, 0.25}, 0.0, 2.0 * std::numbers::pi,
                                                    SegmentSource::sensing(0)}}}};
        // mean of the field over the disk is its value at the center
        CHECK(integrate_density(disk, lin) == doctest::Approx(2.5 * kDiskArea).epsilon(1e-9));
    }
}

TEST_CASE("objective is invariant under rigid motions") {
    std::mt19937_64 rng(47);
    const auto sq = unit_square();
    const double angle = 0.7;
    const Vec2 shift{3.0, -1.5};
    const auto move = [&](const Vec2& p) {
        return Vec2{std::cos(angle) * p.x - std::sin(angle) * p.y, std::sin(angle) * p.x + std::cos(angle) * p.y} + shift;
    };
    std::vector<Vec2> verts;
    for (const auto& v : sq.vertices()) {
        verts.push_back(move(v));
    }
    const ConvexRegion moved_region(verts);
    for (int trial = 0; trial < 5; ++trial) {
        auto agents = random_agents(rng, 5, sq, 0.05, 0.3);
        const double h0 = objective(agents, sq, Density::uniform(1.0)).total_H;
        for (auto& a : agents) {
            a.center = move(a.center);
        }
        const double h1 = objective(agents, moved_region, Density::uniform(1.0)).total_H;
        CHECK(h1 == doctest::Approx(h0).epsilon(1e-9));
    }
}

TEST_CASE("objective bounds and agent removal") {
    std::mt19937_64 rng(53);
    const auto sq = unit_square();
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 5;
        const auto agents = random_agents(rng, n, sq, 0.05, 0.3);
        const auto full = objective(agents, sq, Density::uniform(1.0));
        CHECK(full.total_H <= std::min(sq.area(), n * kDiskArea) + 1e-12);

        const int k = trial % n;
        std::vector<AgentState> rest;
        for (const auto& a : agents) {
            if (a.id != k) {
                auto b = a;
                b.id = static_cast<int>(rest.size());
                rest.push_back(b);
            }
        }
        const auto reduced = objective(rest, sq, Density::uniform(1.0));
        const auto d_full = gv_diagram(agents, sq);
        const auto d_rest = gv_diagram(rest, sq);
        for (const auto& a : rest) {
            const int old_id = a.id >= k ? a.id + 1 : a.id;
            CHECK(reduced.per_agent_H[a.id] >= full.per_agent_H[old_id] - 1e-12);
            // the old cell is contained in the new one
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (int s = 0; s < 500; ++s) {
                const Vec2 p{u(rng), u(rng)};
                if (contains(d_full.cells[old_id], p)) {
                    CHECK(in_gv_cell(a.id, rest, sq, p));
                }
            }
            CHECK(region_area(d_rest.cells[a.id]) >= region_area(d_full.cells[old_id]) - 1e-12);
        }
    }
}
