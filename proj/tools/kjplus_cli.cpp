// kjplus command-line front end: invariants, orbit geometry, family scans, validation grid.
//
// Exit codes: 0 success / match, 1 mismatch, 2 invalid input or guard band, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kjplus/kjplus.hpp"

using json = nlohmann::ordered_json;
using namespace kjplus;

namespace {

constexpr int schema_version = 1;
constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_invalid = 2;
constexpr int exit_numerical = 3;

struct RunConfig {
    int k = 0;
    int l = 0;
    double e = 0.0;
    std::string direction = "direct";
    std::size_t samples = 0;
    std::string format;
    std::string output;
    double guard_band = default_guard_band;
    int k_max = 6;
    std::size_t grid_points = 200;
    bool verify_counts = false;
    unsigned threads = 0;
    bool json_output = false;
    std::vector<std::string> overlays;
};

std::optional<std::size_t> env_samples() {
    const char* env = std::getenv("KJPLUS_SAMPLES");
    if (!env) return std::nullopt;
    try {
        const long v = std::stol(env);
        if (v >= 16) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw invalid_spec(std::string("KJPLUS_SAMPLES must be an integer >= 16, got '") + env + "'");
}

std::size_t sample_count(const RunConfig& cfg) {
    if (cfg.samples) return cfg.samples;
    return env_samples().value_or(default_sample_count(cfg.k, cfg.l));
}

TorusOrbitSpec spec_of(const RunConfig& cfg) {
    TorusOrbitSpec spec{cfg.k, cfg.l, cfg.e, parse_direction(cfg.direction)};
    spec.validate();
    return spec;
}

json half_integer_json(HalfInteger h) { return json{{"num", h.numerator()}, {"den", h.denominator()}}; }

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw invalid_spec("cannot open output file " + cfg.output);
    out << text;
}

int cmd_invariants(const RunConfig& cfg) {
    const TorusOrbitSpec spec = spec_of(cfg);
    const InvariantReport rep = invariant_report(spec, sample_count(cfg), cfg.guard_band);
    json j;
    j["schema_version"] = schema_version;
    j["k"] = spec.k;
    j["l"] = spec.l;
    j["e"] = spec.e;
    j["direction"] = to_string(spec.direction);
    j["regime"] = to_string(*rep.regime);
    j["j_plus"] = rep.j_plus;
    j["w0"] = rep.w0;
    j["j1"] = half_integer_json(rep.j1);
    j["j2"] = rep.j2;
    j["double_points"] = rep.double_point_count;
    j["faces"] = rep.face_count;
    j["preimage_components"] = rep.preimage_components;
    j["preimage_double_points"] = rep.preimage_double_points;
    j["closed_form"] = {{"j_plus", rep.closed_form->j_plus},
                        {"j1", half_integer_json(rep.closed_form->j1)},
                        {"j2", rep.closed_form->j2}};
    j["match"] = rep.matches();
    j["warnings"] = disaster_warnings(spec, cfg.guard_band);
    write_output(cfg, j.dump(2) + "\n");
    return rep.matches() ? exit_ok : exit_mismatch;
}

std::string orbit_csv(const TorusOrbitSpec& spec, std::size_t n) {
    const OrbitParams p = orbit_params(spec);
    std::ostringstream os;
    os << std::setprecision(17) << "t,x,y\n";
    // Row n repeats the first vertex to close the curve.
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = p.period * static_cast<double>(i % n) / static_cast<double>(n);
        const double t_row = p.period * static_cast<double>(i) / static_cast<double>(n);
        const Point2 q = rotating_position(t, p);
        os << t_row << "," << q.x << "," << q.y << "\n";
    }
    return os.str();
}

bool has_overlay(const RunConfig& cfg, const std::string& name) {
    for (const auto& o : cfg.overlays)
        if (o == name || o == "all") return true;
    return false;
}

std::string orbit_svg(const RunConfig& cfg, const TorusOrbitSpec& spec, std::size_t n) {
    const OrbitParams p = orbit_params(spec);
    const PolylineCurve curve = sample_orbit(spec, n);
    double extent = curve.max_radius();
    std::optional<HillRadii> hill;
    if (has_overlay(cfg, "hill") && p.c < critical_jacobi_energy) {
        hill = hill_radii(p.c);
        extent = std::max(extent, hill->outer);
    }
    extent *= 1.05;
    const double size = 800.0;
    const double scale = size / (2.0 * extent);
    auto sx = [&](double x) { return (x + extent) * scale; };
    auto sy = [&](double y) { return (extent - y) * scale; };

    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << size << R"(" height=")" << size
       << R"(" viewBox="0 0 )" << size << " " << size << R"(">)" << "\n";
    os << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n";
    os << "<!-- T(" << spec.k << "," << spec.l << ") " << to_string(spec.direction) << " e=" << spec.e
       << " c=" << p.c << " -->\n";
    if (has_overlay(cfg, "rays")) {
        for (int j = 0; j < 2 * spec.k; ++j) {
            const Point2 end = polar(extent, j * pi / spec.k);
            os << R"(<line x1=")" << sx(0) << R"(" y1=")" << sy(0) << R"(" x2=")" << sx(end.x) << R"(" y2=")"
               << sy(end.y) << R"(" stroke="#bbbbbb" stroke-width="0.5"/>)" << "\n";
        }
    }
    auto circle = [&](double r, const char* colour, const char* dash) {
        os << R"(<circle cx=")" << sx(0) << R"(" cy=")" << sy(0) << R"(" r=")" << r * scale << R"(" fill="none" stroke=")"
           << colour << R"(" stroke-width="1" stroke-dasharray=")" << dash << R"("/>)" << "\n";
    };
    if (hill) {
        circle(hill->inner, "#2060c0", "6 3");
        circle(hill->outer, "#2060c0", "6 3");
    }
    if (has_overlay(cfg, "rinv")) {
        if (const auto r = tangency_radius(p)) circle(*r, "#c06020", "2 2");
    }
    os << R"(<path fill="none" stroke="black" stroke-width="1" d=")";
    for (std::size_t i = 0; i < curve.size(); ++i)
        os << (i == 0 ? "M" : " L") << sx(curve[i].x) << "," << sy(curve[i].y);
    os << R"( Z"/>)" << "\n";
    if (has_overlay(cfg, "doubles")) {
        for (const auto& d : find_double_points(curve))
            os << R"(<circle cx=")" << sx(d.location.x) << R"(" cy=")" << sy(d.location.y)
               << R"(" r="3" fill="#d02020"/>)" << "\n";
    }
    os << R"(<circle cx=")" << sx(0) << R"(" cy=")" << sy(0) << R"(" r="2.5" fill="black"/>)" << "\n";
    os << "</svg>\n";
    return os.str();
}

int cmd_orbit(const RunConfig& cfg) {
    const TorusOrbitSpec spec = spec_of(cfg);
    const std::size_t n = sample_count(cfg);
    if (cfg.format == "csv")
        write_output(cfg, orbit_csv(spec, n));
    else if (cfg.format == "svg")
        write_output(cfg, orbit_svg(cfg, spec, n));
    else
        throw invalid_spec("orbit: --format must be csv or svg");
    return exit_ok;
}

int cmd_scan(const RunConfig& cfg) {
    validate_pair(cfg.k, cfg.l);
    ScanOptions opt;
    opt.verify_counts = cfg.verify_counts;
    opt.n_samples = cfg.samples;
    const ScanResult res = scan_family(cfg.k, cfg.l, default_eccentricity_grid(cfg.grid_points), opt);
    json j;
    j["schema_version"] = schema_version;
    j["k"] = cfg.k;
    j["l"] = cfg.l;
    j["events"] = json::array();
    for (const auto& ev : res.events)
        j["events"].push_back({{"kind", to_string(ev.kind)},
                               {"eccentricity", ev.eccentricity},
                               {"branch", to_string(ev.branch)},
                               {"detail", ev.detail}});
    j["endpoints"] = json::array();
    for (const auto& ep : res.endpoints)
        j["endpoints"].push_back({{"eccentricity", ep.eccentricity},
                                  {"branch", to_string(ep.branch)},
                                  {"cover", ep.cover},
                                  {"detail", ep.detail}});
    j["warnings"] = res.warnings;
    write_output(cfg, j.dump(2) + "\n");
    return exit_ok;
}

std::string triple_text(int jp, HalfInteger j1, int j2) {
    return std::to_string(jp) + " / " + j1.to_string() + " / " + std::to_string(j2);
}

int cmd_validate(const RunConfig& cfg) {
    if (cfg.k_max < 2) throw invalid_spec("validate: --k-max must be at least 2");
    std::vector<ValidationCell> cells = validation_cells(cfg.k_max);
    const std::size_t n = cfg.samples ? cfg.samples : env_samples().value_or(0);
    run_validation(cells, n, cfg.threads);

    std::size_t failures = 0;
    for (const auto& c : cells)
        if (!c.passed()) ++failures;

    if (cfg.json_output) {
        json j;
        j["schema_version"] = schema_version;
        j["k_max"] = cfg.k_max;
        j["cells"] = json::array();
        for (const auto& c : cells) {
            json cell{{"k", c.spec.k},
                      {"l", c.spec.l},
                      {"direction", to_string(c.spec.direction)},
                      {"e", c.spec.e},
                      {"regime", to_string(c.regime)},
                      {"expected", {{"j_plus", c.expected.j_plus}, {"j1", half_integer_json(c.expected.j1)}, {"j2", c.expected.j2}}}};
            if (c.report)
                cell["computed"] = {{"j_plus", c.report->j_plus}, {"j1", half_integer_json(c.report->j1)}, {"j2", c.report->j2}};
            else
                cell["error"] = c.error;
            cell["pass"] = c.passed();
            j["cells"].push_back(cell);
        }
        j["failures"] = failures;
        write_output(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << std::left << std::setw(9) << "(k,l)" << std::setw(12) << "direction" << std::setw(10) << "e"
           << std::setw(24) << "regime" << std::setw(22) << "J+ / J1 / J2" << std::setw(22) << "closed form"
           << "status\n";
        for (const auto& c : cells) {
            os << std::left << std::setw(9) << ("(" + std::to_string(c.spec.k) + "," + std::to_string(c.spec.l) + ")")
               << std::setw(12) << to_string(c.spec.direction) << std::setw(10) << std::setprecision(4) << c.spec.e
               << std::setw(24) << to_string(c.regime) << std::setw(22)
               << (c.report ? triple_text(c.report->j_plus, c.report->j1, c.report->j2) : std::string("error"))
               << std::setw(22) << triple_text(c.expected.j_plus, c.expected.j1, c.expected.j2)
               << (c.passed() ? "pass" : "FAIL") << "\n";
        }
        os << "\n" << cells.size() - failures << "/" << cells.size() << " cells pass\n";
        if (failures) {
            os << "failing cells:\n";
            for (const auto& c : cells)
                if (!c.passed())
                    os << "  (" << c.spec.k << "," << c.spec.l << ") " << to_string(c.spec.direction) << " e=" << c.spec.e
                       << (c.error.empty() ? "" : ": " + c.error) << "\n";
        }
        write_output(cfg, os.str());
    }
    return failures ? exit_mismatch : exit_ok;
}

void add_spec_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--k", cfg.k, "Number of Kepler ellipse coverings")->required();
    sub->add_option("--l", cfg.l, "Number of rotating-frame coverings")->required();
    sub->add_option("--e", cfg.e, "Eccentricity in [0, 1)")->required();
    sub->add_option("--direction", cfg.direction, "direct or retrograde")->default_val("direct");
    sub->add_option("--samples", cfg.samples, "Orbit sample count (default: KJPLUS_SAMPLES or automatic)");
    sub->add_option("-o,--output", cfg.output, "Output file (default: stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kjplus: J+, J1 and J2 invariants of periodic orbits of the rotating Kepler problem"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* inv = app.add_subcommand("invariants", "Compute J+, J1, J2 of one orbit and compare with the closed forms");
    add_spec_options(inv, cfg);
    inv->add_option("--guard-band", cfg.guard_band, "Minimum distance of e from 0, 1 and the loop-birth threshold")
        ->default_val(default_guard_band);

    auto* orbit = app.add_subcommand("orbit", "Write orbit geometry as CSV or SVG");
    add_spec_options(orbit, cfg);
    orbit->add_option("--format", cfg.format, "csv or svg")->default_val("csv")->check(CLI::IsMember({"csv", "svg"}));
    orbit->add_option("--overlay", cfg.overlays, "SVG overlays: hill, rays, rinv, doubles, all")
        ->check(CLI::IsMember({"hill", "rays", "rinv", "doubles", "all"}));

    auto* scan = app.add_subcommand("scan", "List homotopy events along the eccentricity family");
    scan->add_option("--k", cfg.k, "Number of Kepler ellipse coverings")->required();
    scan->add_option("--l", cfg.l, "Number of rotating-frame coverings")->required();
    scan->add_option("--grid", cfg.grid_points, "Grid points in (0, 1)")->default_val(200)->check(CLI::Range(2, 100000));
    scan->add_flag("--verify-counts", cfg.verify_counts, "Sample orbits on the grid and check double-point counts");
    scan->add_option("--samples", cfg.samples, "Orbit sample count for --verify-counts");
    scan->add_option("-o,--output", cfg.output, "Output file (default: stdout)");

    auto* validate = app.add_subcommand("validate", "Compare numeric and closed-form invariants on a grid of (k, l)");
    validate->add_option("--k-max", cfg.k_max, "Largest max(k, l) in the grid")->default_val(6);
    validate->add_option("--samples", cfg.samples, "Orbit sample count (default: automatic)");
    validate->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)")->default_val(0);
    validate->add_flag("--json", cfg.json_output, "Emit JSON instead of a table");
    validate->add_option("-o,--output", cfg.output, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (*inv) return cmd_invariants(cfg);
        if (*orbit) return cmd_orbit(cfg);
        if (*scan) return cmd_scan(cfg);
        if (*validate) return cmd_validate(cfg);
    } catch (const guard_band_error& e) {
        std::cerr << "error: guard band: " << e.what() << "\n";
        return exit_invalid;
    } catch (const invalid_spec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const numerical_error& e) {
        std::cerr << "error: numerical failure in " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_invalid;
}
