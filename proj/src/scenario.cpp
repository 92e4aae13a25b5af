#include "gvcover/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

namespace gvcover {

ScenarioError::ScenarioError(const std::string& where, int line, const std::string& message)
    : std::runtime_error(line > 0 ? where + ":" + std::to_string(line) + ": " + message : where + ": " + message),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) {
        out.push_back(tok);
    }
    return out;
}

struct Entry {
    std::string value;
    int line = 0;
};

// section -> key -> entries in file order
using Document = std::map<std::string, std::map<std::string, std::vector<Entry>>>;

const std::map<std::string, std::vector<std::string>>& schema() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"region", {"vertex"}},
        {"agents", {"center", "count", "seed", "spawn_box"}},
        {"radii", {"r_u", "r_s"}},
        {"control", {"law", "alpha", "dt", "max_steps", "max_halvings", "convergence_eps", "candidates"}},
        {"phi", {"uniform", "grid"}},
        {"events", {"immobilize"}},
        {"outputs", {"dir", "svg_every"}},
    };
    return keys;
}

bool repeatable(const std::string& key) { return key == "vertex" || key == "center" || key == "immobilize"; }

class Reader {
public:
    Reader(std::string name, Document doc, std::map<std::string, int> section_lines)
        : name_(std::move(name)), doc_(std::move(doc)), section_lines_(std::move(section_lines)) {}

    [[noreturn]] void fail(int line, const std::string& field, const std::string& message) const {
        throw ScenarioError(name_, line, field + ": " + message);
    }

    bool has_section(const std::string& s) const { return section_lines_.count(s) > 0; }
    int section_line(const std::string& s) const {
        auto it = section_lines_.find(s);
        return it == section_lines_.end() ? 0 : it->second;
    }

    const std::vector<Entry>* entries(const std::string& section, const std::string& key) const {
        auto s = doc_.find(section);
        if (s == doc_.end()) {
            return nullptr;
        }
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    const Entry* single(const std::string& section, const std::string& key) const {
        const auto* list = entries(section, key);
        return list ? &list->front() : nullptr;
    }

    std::vector<double> numbers(const Entry& e, const std::string& field, std::size_t count) const {
        auto toks = split_ws(e.value);
        if (count != 0 && toks.size() != count) {
            fail(e.line, field, "expected " + std::to_string(count) + " number(s), got " + std::to_string(toks.size()));
        }
        std::vector<double> out;
        for (const auto& tok : toks) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                fail(e.line, field, "'" + tok + "' is not a number");
            }
            if (!std::isfinite(v)) {
                fail(e.line, field, "value must be finite");
            }
            out.push_back(v);
        }
        if (out.empty()) {
            fail(e.line, field, "missing value");
        }
        return out;
    }

    double number(const Entry& e, const std::string& field) const { return numbers(e, field, 1).front(); }

    long long integer(const Entry& e, const std::string& field) const {
        const std::string tok = trim(e.value);
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            fail(e.line, field, "'" + tok + "' is not an integer");
        }
        return v;
    }

    const std::string& name() const { return name_; }

private:
    std::string name_;
    Document doc_;
    std::map<std::string, int> section_lines_;
};

Reader tokenize(const std::string& text, const std::string& name) {
    Document doc;
    std::map<std::string, int> section_lines;
    std::string section;
    std::istringstream in(text);
    int line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ScenarioError(name, line_no, "malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section)) {
                throw ScenarioError(name, line_no, "unknown section [" + section + "]");
            }
            if (section_lines.count(section)) {
                throw ScenarioError(name, line_no, "section [" + section + "] appears twice");
            }
            section_lines[section] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError(name, line_no, "expected 'key = value'");
        }
        if (section.empty()) {
            throw ScenarioError(name, line_no, "entry outside of any section");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& allowed = schema().at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ScenarioError(name, line_no, section + "." + key + ": unknown key");
        }
        auto& list = doc[section][key];
        if (!list.empty() && !repeatable(key)) {
            throw ScenarioError(name, line_no, section + "." + key + ": duplicate key (first on line " +
                                                   std::to_string(list.front().line) + ")");
        }
        list.push_back({value, line_no});
    }
    return Reader(name, std::move(doc), std::move(section_lines));
}

std::vector<Vec2> spawn_centers(const ConvexRegion& region, const BoundingBox& box, int count, double min_sep,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x);
    std::uniform_real_distribution<double> uy(box.lo.y, box.hi.y);
    std::vector<Vec2> centers;
    constexpr int kMaxAttempts = 200000;
    for (int attempt = 0; attempt < kMaxAttempts && static_cast<int>(centers.size()) < count; ++attempt) {
        const double x = ux(rng);
        const double y = uy(rng);
        const Vec2 p{x, y};
        if (!region.contains(p)) {
            continue;
        }
        bool clear = true;
        for (const auto& c : centers) {
            if (distance(c, p) < min_sep) {
                clear = false;
                break;
            }
        }
        if (clear) {
            centers.push_back(p);
        }
    }
    return centers;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

DensityGrid load_density_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError(path.string(), 0, "cannot open density grid file");
    }
    std::vector<double> numbers;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        for (const auto& tok : split_ws(raw.substr(0, raw.find('#')))) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw ScenarioError(path.string(), line_no, "'" + tok + "' is not a number");
            }
            numbers.push_back(v);
        }
    }
    if (numbers.size() < 6) {
        throw ScenarioError(path.string(), 0, "density grid header needs width, height and a bounding box");
    }
    DensityGrid grid;
    if (numbers[0] < 2 || numbers[1] < 2 || numbers[0] != std::floor(numbers[0]) ||
        numbers[1] != std::floor(numbers[1])) {
        throw ScenarioError(path.string(), 0, "density grid width and height must be integers >= 2");
    }
    grid.width = static_cast<std::size_t>(numbers[0]);
    grid.height = static_cast<std::size_t>(numbers[1]);
    grid.box = {{numbers[2], numbers[3]}, {numbers[4], numbers[5]}};
    grid.values.assign(numbers.begin() + 6, numbers.end());
    if (grid.values.size() != grid.width * grid.height) {
        throw ScenarioError(path.string(), 0,
                            "density grid has " + std::to_string(grid.values.size()) + " values, expected " +
                                std::to_string(grid.width * grid.height));
    }
    return grid;
}

Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir,
                             const std::string& name) {
    const Reader r = tokenize(text, name);
    Scenario scenario;
    SimConfig& cfg = scenario.config;

    for (const char* required : {"region", "agents", "radii"}) {
        if (!r.has_section(required)) {
            throw ScenarioError(name, 0, std::string("missing required section [") + required + "]");
        }
    }

    // [region]
    const auto* vertex_entries = r.entries("region", "vertex");
    if (!vertex_entries) {
        r.fail(r.section_line("region"), "region.vertex", "at least 3 vertices required");
    }
    std::vector<Vec2> vertices;
    for (const auto& e : *vertex_entries) {
        const auto xy = r.numbers(e, "region.vertex", 2);
        vertices.push_back({xy[0], xy[1]});
    }
    try {
        cfg.region = ConvexRegion(vertices);
    } catch (const GeometryError& err) {
        r.fail(vertex_entries->front().line, "region.vertex", err.what());
    }

    // [radii]
    const Entry* ru = r.single("radii", "r_u");
    const Entry* rs = r.single("radii", "r_s");
    if (!ru) {
        r.fail(r.section_line("radii"), "radii.r_u", "required");
    }
    if (!rs) {
        r.fail(r.section_line("radii"), "radii.r_s", "required");
    }
    const double r_u = r.number(*ru, "radii.r_u");
    const double r_s = r.number(*rs, "radii.r_s");
    if (r_u < 0.0) {
        r.fail(ru->line, "radii.r_u", "must be >= 0");
    }
    if (!(r_s > r_u)) {
        r.fail(rs->line, "radii.r_s", "must exceed r_u (no guaranteed sensing otherwise)");
    }

    // [agents]
    const auto* centers = r.entries("agents", "center");
    const Entry* count = r.single("agents", "count");
    if (const Entry* seed = r.single("agents", "seed")) {
        const long long s = r.integer(*seed, "agents.seed");
        if (s < 0) {
            r.fail(seed->line, "agents.seed", "must be >= 0");
        }
        cfg.rng_seed = static_cast<std::uint64_t>(s);
    }
    std::vector<std::pair<Vec2, int>> placed;
    if (centers && count) {
        r.fail(count->line, "agents.count", "give either explicit centers or count, not both");
    }
    if (centers) {
        for (const auto& e : *centers) {
            const auto xy = r.numbers(e, "agents.center", 2);
            placed.push_back({{xy[0], xy[1]}, e.line});
        }
    } else if (count) {
        const long long n = r.integer(*count, "agents.count");
        if (n < 0) {
            r.fail(count->line, "agents.count", "must be >= 0");
        }
        BoundingBox box = cfg.region.bounds();
        if (const Entry* sb = r.single("agents", "spawn_box")) {
            const auto v = r.numbers(*sb, "agents.spawn_box", 4);
            if (!(v[2] > v[0]) || !(v[3] > v[1])) {
                r.fail(sb->line, "agents.spawn_box", "expected xmin ymin xmax ymax with positive extent");
            }
            box = {{v[0], v[1]}, {v[2], v[3]}};
        }
        const auto spawned = spawn_centers(cfg.region, box, static_cast<int>(n), 2.0 * r_u + kSpawnMargin, cfg.rng_seed);
        if (static_cast<long long>(spawned.size()) != n) {
            r.fail(count->line, "agents.count",
                   "could only place " + std::to_string(spawned.size()) + " agents inside spawn_box");
        }
        for (const auto& c : spawned) {
            placed.push_back({c, count->line});
        }
    }
    for (std::size_t k = 0; k < placed.size(); ++k) {
        const auto& [c, line] = placed[k];
        if (!cfg.region.contains(c)) {
            r.fail(line, "agents.center", "agent " + std::to_string(k) + " lies outside the region");
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (!(distance(c, placed[j].first) > 2.0 * r_u)) {
                r.fail(line, "agents.center",
                       "uncertainty disks of agents " + std::to_string(j) + " and " + std::to_string(k) + " overlap");
            }
        }
        cfg.agents.push_back({static_cast<int>(k), c, r_u, r_s, true});
    }
    const int n = static_cast<int>(cfg.agents.size());

    // [control]
    if (const Entry* e = r.single("control", "law")) {
        const std::string law = trim(e->value);
        if (law == "full") {
            cfg.law = ControlLaw::Full;
        } else if (law == "suboptimal") {
            cfg.law = ControlLaw::Suboptimal;
        } else {
            r.fail(e->line, "control.law", "expected 'full' or 'suboptimal', got '" + law + "'");
        }
    }
    if (const Entry* e = r.single("control", "alpha")) {
        auto gains = r.numbers(*e, "control.alpha", 0);
        for (double g : gains) {
            if (!(g > 0.0)) {
                r.fail(e->line, "control.alpha", "gains must be positive");
            }
        }
        if (gains.size() == 1) {
            gains.assign(static_cast<std::size_t>(n), gains.front());
        } else if (static_cast<int>(gains.size()) != n) {
            r.fail(e->line, "control.alpha",
                   "expected 1 or " + std::to_string(n) + " gains, got " + std::to_string(gains.size()));
        }
        cfg.alpha = std::move(gains);
    }
    if (const Entry* e = r.single("control", "dt")) {
        cfg.dt = r.number(*e, "control.dt");
        if (!(cfg.dt > 0.0)) {
            r.fail(e->line, "control.dt", "must be > 0");
        }
    }
    if (const Entry* e = r.single("control", "max_steps")) {
        const long long steps = r.integer(*e, "control.max_steps");
        if (steps < 1 || steps > 100000000) {
            r.fail(e->line, "control.max_steps", "must be >= 1");
        }
        cfg.max_steps = static_cast<int>(steps);
    }
    if (const Entry* e = r.single("control", "max_halvings")) {
        const long long h = r.integer(*e, "control.max_halvings");
        if (h < 0 || h > 60) {
            r.fail(e->line, "control.max_halvings", "must lie in [0, 60]");
        }
        cfg.max_halvings = static_cast<int>(h);
    }
    if (const Entry* e = r.single("control", "convergence_eps")) {
        const std::string tok = trim(e->value);
        if (tok == "inf") {
            cfg.convergence_eps = HUGE_VAL;
        } else {
            cfg.convergence_eps = r.number(*e, "control.convergence_eps");
        }
        if (!(cfg.convergence_eps >= 0.0)) {
            r.fail(e->line, "control.convergence_eps", "must be >= 0");
        }
    }
    if (const Entry* e = r.single("control", "candidates")) {
        const std::string v = trim(e->value);
        if (v == "all_pairs") {
            cfg.candidates = CandidateStrategy::AllPairs;
        } else if (v == "delaunay") {
            cfg.candidates = CandidateStrategy::Delaunay;
        } else {
            r.fail(e->line, "control.candidates", "expected 'all_pairs' or 'delaunay'");
        }
    }

    // [phi]
    const Entry* uniform = r.single("phi", "uniform");
    const Entry* grid = r.single("phi", "grid");
    if (uniform && grid) {
        r.fail(grid->line, "phi.grid", "give either uniform or grid, not both");
    }
    if (uniform) {
        const double v = r.number(*uniform, "phi.uniform");
        if (!(v >= 0.0)) {
            r.fail(uniform->line, "phi.uniform", "must be >= 0");
        }
        cfg.phi = Density::uniform(v);
    } else if (grid) {
        const std::string rel = trim(grid->value);
        try {
            DensityGrid g = load_density_grid(base_dir / rel);
            g.source_path = rel;
            cfg.phi = Density::grid(std::move(g));
        } catch (const std::exception& err) {
            r.fail(grid->line, "phi.grid", err.what());
        }
    } else {
        cfg.phi = Density::uniform(1.0);
    }

    // [events]
    if (const auto* list = r.entries("events", "immobilize")) {
        for (const auto& e : *list) {
            const auto v = r.numbers(e, "events.immobilize", 2);
            if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
                r.fail(e.line, "events.immobilize", "expected integer step and agent id");
            }
            const int at = static_cast<int>(v[0]);
            const int agent = static_cast<int>(v[1]);
            if (at < 0 || at >= cfg.max_steps) {
                r.fail(e.line, "events.immobilize", "step must lie in [0, max_steps)");
            }
            if (agent < 0 || agent >= n) {
                r.fail(e.line, "events.immobilize", "unknown agent " + std::to_string(agent));
            }
            cfg.events.push_back({at, SimEvent::Kind::Immobilize, agent});
        }
    }

    // [outputs]
    if (const Entry* e = r.single("outputs", "dir")) {
        scenario.outputs.dir = trim(e->value);
        if (scenario.outputs.dir.empty()) {
            r.fail(e->line, "outputs.dir", "must not be empty");
        }
    }
    if (const Entry* e = r.single("outputs", "svg_every")) {
        const long long every = r.integer(*e, "outputs.svg_every");
        if (every < 0) {
            r.fail(e->line, "outputs.svg_every", "must be >= 0");
        }
        scenario.outputs.svg_every = static_cast<int>(every);
    }

    try {
        validate(cfg);
    } catch (const std::invalid_argument& err) {
        throw ScenarioError(name, 0, err.what());
    }
    return scenario;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError(path.string(), 0, "cannot open scenario file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario_text(text.str(), path.parent_path(), path.string());
}

std::string serialize_scenario(const Scenario& scenario) {
    const SimConfig& cfg = scenario.config;
    std::ostringstream out;
    out << "[region]\n";
    for (const auto& v : cfg.region.vertices()) {
        out << "vertex = " << format_number(v.x) << ' ' << format_number(v.y) << '\n';
    }
    out << "\n[agents]\n";
    for (const auto& a : cfg.agents) {
        out << "center = " << format_number(a.center.x) << ' ' << format_number(a.center.y) << '\n';
    }
    out << "seed = " << cfg.rng_seed << '\n';
    const double r_u = cfg.agents.empty() ? 0.0 : cfg.agents.front().r_u;
    const double r_s = cfg.agents.empty() ? 1.0 : cfg.agents.front().r_s;
    out << "\n[radii]\nr_u = " << format_number(r_u) << "\nr_s = " << format_number(r_s) << '\n';
    out << "\n[control]\nlaw = " << (cfg.law == ControlLaw::Full ? "full" : "suboptimal") << '\n';
    if (!cfg.alpha.empty()) {
        out << "alpha =";
        for (double g : cfg.alpha) {
            out << ' ' << format_number(g);
        }
        out << '\n';
    }
    out << "dt = " << format_number(cfg.dt) << '\n';
    out << "max_steps = " << cfg.max_steps << '\n';
    out << "max_halvings = " << cfg.max_halvings << '\n';
    out << "convergence_eps = " << (std::isinf(cfg.convergence_eps) ? "inf" : format_number(cfg.convergence_eps))
        << '\n';
    out << "candidates = " << (cfg.candidates == CandidateStrategy::Delaunay ? "delaunay" : "all_pairs") << '\n';
    out << "\n[phi]\n";
    if (const auto* g = cfg.phi.as_grid()) {
        out << "grid = " << g->source_path << '\n';
    } else if (cfg.phi.is_uniform()) {
        out << "uniform = " << format_number(cfg.phi.uniform_value()) << '\n';
    } else {
        throw std::invalid_argument("serialize_scenario: callable densities have no file form");
    }
    if (!cfg.events.empty()) {
        out << "\n[events]\n";
        for (const auto& e : cfg.events) {
            out << "immobilize = " << e.at_step << ' ' << e.agent << '\n';
        }
    }
    out << "\n[outputs]\ndir = " << scenario.outputs.dir << "\nsvg_every = " << scenario.outputs.svg_every << '\n';
    return out.str();
}

} // namespace gvcover
