#pragma once

// Guaranteed sensing disks, sensed cells, and the coverage objective.

#include "gvcover/gv_partition.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gvcover {

/// Row-major samples on a regular lattice spanning `box`, bilinearly
/// interpolated and clamped outside. values[row * width + col], row 0 at box.lo.y.
struct DensityGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    BoundingBox box;
    std::vector<double> values;
    std::string source_path;

    double operator()(const Vec2& p) const;
    double max_value() const;

    friend bool operator==(const DensityGrid& l, const DensityGrid& r) {
        return l.width == r.width && l.height == r.height && l.box.lo == r.box.lo && l.box.hi == r.box.hi &&
               l.values == r.values && l.source_path == r.source_path;
    }
};

/// Importance density φ >= 0 over the region.
class Density {
public:
    struct Uniform {
        double value = 1.0;
        friend bool operator==(const Uniform&, const Uniform&) = default;
    };
    struct Callable {
        std::function<double(const Vec2&)> field;
        /// Upper bound of the field, used for the maximum attainable objective.
        double sup = 0.0;
    };

    Density() : kind_(Uniform{1.0}) {}
    static Density uniform(double value);
    static Density callable(std::function<double(const Vec2&)> field, double sup);
    static Density grid(DensityGrid grid);

    double operator()(const Vec2& p) const;
    bool is_uniform() const { return std::holds_alternative<Uniform>(kind_); }
    double uniform_value() const;
    const DensityGrid* as_grid() const;
    double sup() const;

    /// Uniform and grid densities compare by value; callables never compare equal.
    friend bool operator==(const Density& l, const Density& r);

private:
    using Kind = std::variant<Uniform, Callable, std::shared_ptr<const DensityGrid>>;
    explicit Density(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

struct CoverageReport {
    std::vector<double> per_agent_H;
    double total_H = 0.0;
    double max_H = 0.0;
    double coverage_fraction = 0.0;
};

/// C_i^gs: disk of radius r_s − r_u. Throws std::invalid_argument when r_s <= r_u.
Circle guaranteed_sensing_disk(const AgentState& agent);

/// V_i^gs = V_i^g ∩ C_i^gs; circular pieces tagged SensingBoundary(i).
CellRegion sensed_cell(int i, const GvDiagram& diagram, std::span<const AgentState> agents);

/// ∫_cell φ dx. Closed-form boundary integral for uniform φ; otherwise the
/// boundary form ∮ F dy with F(x, y) = ∫ φ(s, y) ds over x, both by quadrature.
double integrate_density(const CellRegion& cell, const Density& phi, double tol = 1e-10);

/// Upper bound used to normalize coverage: min(∫_Ω φ, n·π(r_s − r_u)²·sup φ).
double max_objective(std::span<const AgentState> agents, const ConvexRegion& region, const Density& phi);

/// Network state frozen for one evaluation: diagram plus sensed cells.
struct NetworkSnapshot {
    std::vector<AgentState> agents;
    ConvexRegion region;
    GvDiagram diagram;
    std::vector<CellRegion> sensed;
};

NetworkSnapshot make_snapshot(std::span<const AgentState> agents, const ConvexRegion& region,
                              CandidateStrategy strategy = CandidateStrategy::AllPairs);

CoverageReport objective(const NetworkSnapshot& snapshot, const Density& phi);
CoverageReport objective(std::span<const AgentState> agents, const ConvexRegion& region, const Density& phi);

/// Grid oracle for Σ_i ∫_{V_i^gs} φ using only the defining inequalities:
/// resolution × resolution midpoints over the region's bounding box.
double sampled_objective(std::span<const AgentState> agents, const ConvexRegion& region, const Density& phi,
                         int resolution);

/// Membership in V_i^gs from the defining inequalities alone.
bool in_sensed_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region, const Vec2& x);
/// Membership in V_i^g from the defining inequalities alone.
bool in_gv_cell(int i, std::span<const AgentState> agents, const ConvexRegion& region, const Vec2& x);

} // namespace gvcover
