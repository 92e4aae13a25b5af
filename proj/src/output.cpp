#include "gvcover/output.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gvcover {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

struct View {
    BoundingBox box;
    double scale = 1.0;
    double margin = 20.0;
    double width = 0.0;
    double height = 0.0;

    explicit View(const BoundingBox& b, double size = 800.0) : box(b) {
        const double extent = std::max(b.hi.x - b.lo.x, b.hi.y - b.lo.y);
        scale = (size - 2.0 * margin) / extent;
        width = (b.hi.x - b.lo.x) * scale + 2.0 * margin;
        height = (b.hi.y - b.lo.y) * scale + 2.0 * margin;
    }

    std::string xy(const Vec2& p) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", margin + (p.x - box.lo.x) * scale,
                      margin + (box.hi.y - p.y) * scale);
        return buf;
    }
};

std::vector<Vec2> sample_loop(const Loop& loop, double chord) {
    std::vector<Vec2> pts;
    for (const auto& seg : loop) {
        auto s = sample_segment(seg, chord);
        if (!s.empty()) {
            // the last point of a segment starts the next one
            pts.insert(pts.end(), s.begin(), s.end() - 1);
        }
    }
    return pts;
}

std::string path_data(const CellRegion& cell, const View& view, double chord) {
    std::string d;
    for (const auto& loop : cell.loops) {
        const auto pts = sample_loop(loop, chord);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            d += (k == 0 ? "M" : " L") + view.xy(pts[k]);
        }
        if (!pts.empty()) {
            d += " Z ";
        }
    }
    return d;
}

} // namespace

std::string trace_csv_header(std::size_t agents) {
    std::string h = "step,t";
    for (std::size_t i = 0; i < agents; ++i) {
        const auto s = std::to_string(i);
        h += ",x" + s + ",y" + s + ",ux" + s + ",uy" + s;
    }
    h += ",H,coverage_fraction,neutral_area,min_pairwise_dist";
    return h;
}

void write_trace_csv(const SimTrace& trace, std::ostream& out) {
    const std::size_t n = trace.rows.empty() ? 0 : trace.rows.front().positions.size();
    out << trace_csv_header(n) << '\n';
    for (const auto& row : trace.rows) {
        out << row.step << ',' << num(row.t);
        for (std::size_t i = 0; i < n; ++i) {
            out << ',' << num(row.positions[i].x) << ',' << num(row.positions[i].y) << ','
                << num(row.velocities[i].x) << ',' << num(row.velocities[i].y);
        }
        out << ',' << num(row.H) << ',' << num(row.coverage_fraction) << ',' << num(row.neutral_area) << ','
            << num(row.min_pairwise_distance) << '\n';
    }
}

void emit_trace_csv(const SimTrace& trace, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_trace_csv(trace, out);
}

void emit_coverage_csv(const SimTrace& trace, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "step,t,H,coverage_fraction\n";
    out << "0,0," << num(trace.initial_H) << ',' << num(trace.initial_coverage) << '\n';
    for (const auto& row : trace.rows) {
        out << row.step << ',' << num(row.t) << ',' << num(row.H) << ',' << num(row.coverage_fraction) << '\n';
    }
}

std::string svg_frame(const NetworkSnapshot& snap) {
    const BoundingBox box = snap.region.bounds();
    const View view(box);
    const double chord = 0.002 * norm(box.hi - box.lo);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << view.width << "\" height=\""
        << view.height << "\" viewBox=\"0 0 " << view.width << ' ' << view.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << view.width << "\" height=\"" << view.height
        << "\" fill=\"white\"/>\n";

    svg << "<g id=\"sensed\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"none\">\n";
    for (std::size_t i = 0; i < snap.sensed.size(); ++i) {
        for (const auto& loop : snap.sensed[i].loops) {
            const auto pts = sample_loop(loop, chord);
            svg << "<polygon class=\"sensed\" data-agent=\"" << i << "\" points=\"";
            for (std::size_t k = 0; k < pts.size(); ++k) {
                svg << (k ? " " : "") << view.xy(pts[k]);
            }
            svg << "\"/>\n";
        }
    }
    svg << "</g>\n";

    svg << "<path class=\"region\" d=\"" << path_data(cell_from_region(snap.region), view, chord)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";

    svg << "<g id=\"cells\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.2\">\n";
    for (std::size_t i = 0; i < snap.diagram.cells.size(); ++i) {
        const auto& cell = snap.diagram.cells[i];
        if (cell.empty()) {
            continue;
        }
        svg << "<path class=\"cell\" data-agent=\"" << i << "\" d=\"" << path_data(cell, view, chord) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"sensing\" fill=\"none\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
    for (const auto& a : snap.agents) {
        if (!(a.r_s > a.r_u)) {
            continue;
        }
        const Circle disk = guaranteed_sensing_disk(a);
        const CellRegion full{{Loop{BoundarySegment{disk, 0.0, 2.0 * std::numbers::pi, SegmentSource::sensing(a.id)}}}};
        svg << "<path class=\"sensing\" data-agent=\"" << a.id << "\" stroke=\"" << (a.mobile ? "#31a354" : "red")
            << "\" d=\"" << path_data(full, view, chord) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"agents\">\n";
    for (const auto& a : snap.agents) {
        const auto c = view.xy(a.center);
        const auto comma = c.find(',');
        svg << "<circle class=\"" << (a.mobile ? "agent" : "agent immobile") << "\" data-agent=\"" << a.id
            << "\" cx=\"" << c.substr(0, comma) << "\" cy=\"" << c.substr(comma + 1) << "\" r=\""
            << std::max(2.0, a.r_u * view.scale) << "\" fill=\"" << (a.mobile ? "black" : "red") << "\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void emit_svg_frame(const NetworkSnapshot& snapshot, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << svg_frame(snapshot);
}

} // namespace gvcover
