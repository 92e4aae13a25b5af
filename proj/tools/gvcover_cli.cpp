#include "gvcover/output.hpp"
#include "gvcover/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

void print_warnings(const gvcover::SimTrace& trace) {
    for (const auto& w : trace.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

int cmd_run(const std::string& file, const std::string& law, const std::string& out_dir, int svg_every) {
    gvcover::Scenario sc = gvcover::parse_scenario(file);
    if (law == "full") {
        sc.config.law = gvcover::ControlLaw::Full;
    } else if (law == "suboptimal") {
        sc.config.law = gvcover::ControlLaw::Suboptimal;
    }
    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(sc.outputs.dir) : std::filesystem::path(out_dir);
    const int every = svg_every >= 0 ? svg_every : sc.outputs.svg_every;
    std::filesystem::create_directories(dir);

    gvcover::emit_svg_frame(gvcover::make_snapshot(sc.config.agents, sc.config.region, sc.config.candidates),
                            dir / "initial.svg");
    gvcover::NetworkSnapshot last;
    const auto trace = gvcover::run(sc.config, [&](const gvcover::SimState& state,
                                                   const gvcover::NetworkSnapshot& snap, const gvcover::TraceRow&) {
        if (every > 0 && state.step % every == 0) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%05d.svg", state.step);
            gvcover::emit_svg_frame(snap, dir / name);
        }
        last = snap;
    });
    print_warnings(trace);
    gvcover::emit_trace_csv(trace, dir / "trace.csv");
    gvcover::emit_coverage_csv(trace, dir / "coverage.csv");
    gvcover::emit_svg_frame(last, dir / "final.svg");

    const auto& final_row = trace.rows.back();
    std::printf("steps %d  converged %s  H %.6f -> %.6f  coverage %.4f -> %.4f  min distance %.4f\n",
                final_row.step, trace.converged ? "yes" : "no", trace.initial_H, final_row.H,
                trace.initial_coverage, final_row.coverage_fraction, final_row.min_pairwise_distance);
    std::printf("wrote %s\n", dir.string().c_str());
    return kOk;
}

int cmd_diagram(const std::string& file, const std::string& out) {
    const gvcover::Scenario sc = gvcover::parse_scenario(file);
    const auto snap = gvcover::make_snapshot(sc.config.agents, sc.config.region, sc.config.candidates);
    gvcover::emit_svg_frame(snap, out);
    std::size_t nonempty = 0;
    for (const auto& c : snap.diagram.cells) {
        nonempty += c.empty() ? 0 : 1;
    }
    std::printf("%zu agents, %zu non-empty cells, neutral area %.6f\n", snap.agents.size(), nonempty,
                snap.diagram.neutral_area);
    return kOk;
}

int cmd_validate(const std::string& file) {
    const gvcover::Scenario sc = gvcover::parse_scenario(file);
    std::printf("%s: ok (%zu agents, region area %.6f)\n", file.c_str(), sc.config.agents.size(),
                sc.config.region.area());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Guaranteed Voronoi coverage simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::string law;
    std::string out;
    int svg_every = -1;

    auto* run = app.add_subcommand("run", "Simulate a scenario and write trace.csv, coverage.csv and SVG frames");
    run->add_option("scenario", scenario, "Scenario file")->required();
    run->add_option("--law", law, "Override the control law")->check(CLI::IsMember({"full", "suboptimal"}));
    run->add_option("--out", out, "Output directory (default: scenario's outputs.dir)");
    run->add_option("--svg-every", svg_every, "Write a frame every N steps (0 disables)")
        ->check(CLI::NonNegativeNumber);

    auto* diagram = app.add_subcommand("diagram", "Render the GV diagram of the initial state");
    diagram->add_option("scenario", scenario, "Scenario file")->required();
    diagram->add_option("--out", out, "SVG file to write")->required();

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    validate->add_option("scenario", scenario, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run) {
            return cmd_run(scenario, law, out, svg_every);
        }
        if (*diagram) {
            return cmd_diagram(scenario, out);
        }
        return cmd_validate(scenario);
    } catch (const gvcover::ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
