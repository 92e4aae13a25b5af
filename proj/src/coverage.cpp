#include "gvcover/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gvcover {

// ---------------------------------------------------------------------------
// Density

double DensityGrid::operator()(const Vec2& p) const {
    const double fx = std::clamp((p.x - box.lo.x) / box.width(), 0.0, 1.0) * static_cast<double>(width - 1);
    const double fy = std::clamp((p.y - box.lo.y) / box.height(), 0.0, 1.0) * static_cast<double>(height - 1);
    const std::size_t c0 = std::min(static_cast<std::size_t>(fx), width - 2);
    const std::size_t r0 = std::min(static_cast<std::size_t>(fy), height - 2);
    const double u = fx - static_cast<double>(c0);
    const double v = fy - static_cast<double>(r0);
    auto at = [this](std::size_t r, std::size_t c) { return values[r * width + c]; };
    return (1 - u) * (1 - v) * at(r0, c0) + u * (1 - v) * at(r0, c0 + 1) + (1 - u) * v * at(r0 + 1, c0) +
           u * v * at(r0 + 1, c0 + 1);
}

double DensityGrid::max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

Density Density::uniform(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("uniform density must be finite and >= 0");
    }
    return Density{Uniform{value}};
}

Density Density::callable(std::function<double(const Vec2&)> field, double sup) {
    if (!field) {
        throw std::invalid_argument("density field is empty");
    }
    return Density{Callable{std::move(field), sup}};
}

Density Density::grid(DensityGrid grid) {
    if (grid.width < 2 || grid.height < 2 || grid.values.size() != grid.width * grid.height) {
        throw std::invalid_argument("density grid needs at least 2x2 samples and width*height values");
    }
    if (!(grid.box.width() > 0.0) || !(grid.box.height() > 0.0)) {
        throw std::invalid_argument("density grid bounding box must have positive extent");
    }
    for (double v : grid.values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("density grid values must be finite and >= 0");
        }
    }
    return Density{std::make_shared<const DensityGrid>(std::move(grid))};
}

double Density::operator()(const Vec2& p) const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) {
        return u->value;
    }
    if (const auto* c = std::get_if<Callable>(&kind_)) {
        return c->field(p);
    }
    return (*std::get<std::shared_ptr<const DensityGrid>>(kind_))(p);
}

double Density::uniform_value() const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) {
        return u->value;
    }
    throw std::logic_error("density is not uniform");
}

const DensityGrid* Density::as_grid() const {
    if (const auto* g = std::get_if<std::shared_ptr<const DensityGrid>>(&kind_)) {
        return g->get();
    }
    return nullptr;
}

double Density::sup() const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) {
        return u->value;
    }
    if (const auto* c = std::get_if<Callable>(&kind_)) {
        return c->sup;
    }
    return std::get<std::shared_ptr<const DensityGrid>>(kind_)->max_value();
}

bool operator==(const Density& l, const Density& r) {
    if (l.is_uniform() && r.is_uniform()) {
        return l.uniform_value() == r.uniform_value();
    }
    if (l.as_grid() && r.as_grid()) {
        return *l.as_grid() == *r.as_grid();
    }
    return false;
}

// ---------------------------------------------------------------------------
// Sensed cells and the objective

Circle guaranteed_sensing_disk(const AgentState& agent) {
    if (!(agent.r_s > agent.r_u)) {
        throw std::invalid_argument("agent " + std::to_string(agent.id) +
                                    ": no guaranteed sensing (r_s must exceed r_u)");
    }
    return Circle{agent.center, agent.r_s - agent.r_u};
}

CellRegion sensed_cell(int i, const GvDiagram& diagram, std::span<const AgentState> agents) {
    const auto& cell = diagram.cells.at(static_cast<std::size_t>(i));
    if (cell.empty()) {
        return {};
    }
    return clip_disk(cell, guaranteed_sensing_disk(agents[i]), SegmentSource::sensing(i));
}

double integrate_density(const CellRegion& cell, const Density& phi, double tol) {
    if (cell.empty()) {
        return 0.0;
    }
    if (phi.is_uniform()) {
        return phi.uniform_value() * region_area(cell);
    }
    const double x_ref = bounds(cell).lo.x;
    double total = 0.0;
    for (const auto& loop : cell.loops) {
        for (const auto& seg : loop) {
            // Green's theorem with M = F, F(x, y) = ∫_{x_ref}^{x} φ(s, y) ds.
            auto integrand = [&](double t) {
                const Vec2 p = seg.point(t);
                const double dy = seg.derivative(t).y;
                if (dy == 0.0) {
                    return 0.0;
                }
                const double F = integrate([&](double s) { return phi(Vec2{s, p.y}); }, x_ref, p.x, 0.1 * tol);
                return F * dy;
            };
            total += integrate(integrand, seg.t0, seg.t1, tol);
        }
    }
    return total;
}

double max_objective(std::span<const AgentState> agents, const ConvexRegion& region, const Density& phi) {
    double disks = 0.0;
    for (const auto& a : agents) {
        const double r = guaranteed_sensing_disk(a).radius;
        disks += std::numbers::pi * r * r;
    }
    if (phi.is_uniform()) {
        return phi.uniform_value() * std::min(region.area(), disks);
    }
    return std::min(integrate_density(cell_from_region(region), phi), disks * phi.sup());
}

NetworkSnapshot make_snapshot(std::span<const AgentState> agents, const ConvexRegion& region,
                              CandidateStrategy strategy) {
    NetworkSnapshot snap{{agents.begin(), agents.end()}, region, gv_diagram(agents, region, strategy), {}};
    snap.sensed.reserve(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        snap.sensed.push_back(sensed_cell(static_cast<int>(i), snap.diagram, snap.agents));
    }
    return snap;
}

CoverageReport objective(const NetworkSnapshot& snapshot, const Density& phi) {
    CoverageReport report;
    report.per_agent_H.reserve(snapshot.sensed.size());
    for (const auto& cell : snapshot.sensed) {
        report.per_agent_H.push_back(integrate_density(cell, phi));
        report.total_H += report.per_agent_H.back();
    }
    report.max_H = max_objective(snapshot.agents, snapshot.region, phi);
    report.coverage_fraction = report.max_H > 0.0 ? std::clamp(report.total_H / report.max_H, 0.0, 1.0) : 0.0;
    return report;
}

CoverageReport objective(std::span<const AgentState> agents, const ConvexRegion& region, const Density& phi) {
    return objective(make_snapshot(agents, region), phi);
}

// ---------------------------------------------------------------------------
// Inequality oracle

bool in_gv_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region, const Vec2& x) {
    if (!region.contains(x)) {
        return false;
    }
    const double di = distance(x, agents[i].center);
    for (const auto& other : agents) {
        if (other.id == i) {
            continue;
        }
        // Farthest point of D_i no farther than the nearest point of D_j.
        if (di + agents[i].r_u > distance(x, other.center) - other.r_u) {
            return false;
        }
    }
    return true;
}

bool in_sensed_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region, const Vec2& x) {
    return distance(x, agents[i].center) <= agents[i].r_s - agents[i].r_u && in_gv_cell(i, agents, region, x);
}

double sampled_objective(std::span<const AgentState> agents, const ConvexRegion& region, const Density& phi,
                         int resolution) {
    if (resolution < 100) {
        throw std::invalid_argument("sampled_objective: resolution must be >= 100");
    }
    if (agents.empty()) {
        return 0.0;
    }
    const BoundingBox box = region.bounds();
    const double hx = box.width() / resolution;
    const double hy = box.height() / resolution;
    double sum = 0.0;
    for (int r = 0; r < resolution; ++r) {
        const double y = box.lo.y + (r + 0.5) * hy;
        for (int c = 0; c < resolution; ++c) {
            const Vec2 x{box.lo.x + (c + 0.5) * hx, y};
            // Only the nearest center can own x: the guaranteed condition is
            // stricter than the classical one.
            int nearest = 0;
            double best = HUGE_VAL;
            for (const auto& a : agents) {
                const double d = distance(x, a.center);
                if (d < best) {
                    best = d;
                    nearest = a.id;
                }
            }
            if (in_sensed_cell(nearest, agents, region, x)) {
                sum += phi(x);
            }
        }
    }
    return sum * hx * hy;
}

} // namespace gvcover
