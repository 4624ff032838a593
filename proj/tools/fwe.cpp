// fwe: fiber-weave-effect delay/skew uncertainty toolkit.
//
// Subcommands: catalog, sweep, stats, compare, validate, raster.
// Exit codes: 0 ok, 2 configuration error, 3 solver failure,
// 4 missing sweep data, 5 validation failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwe/lattice.hpp"
#include "fwe/report.hpp"
#include "fwe/stats.hpp"
#include "fwe/svg.hpp"
#include "fwe/sweep.hpp"
#include "fwe/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitMissingData = 4;
constexpr int kExitValidation = 5;

struct MissingDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string catalog_path;
    std::vector<std::string> styles;
    std::string out_dir = ".";
    std::string cache_dir;
    uint64_t seed = 1;
    unsigned threads = 0;
    bool emit_csv = false;
    bool emit_json = false;
    bool emit_svg = false;

    bool builtin = false;  // catalog

    bool single = false;  // sweep/stats/compare
    bool diff = false;
    double w = 4.0;
    double s = 4.0;
    std::string offsets_spec = "-12:12:1";
    int slices = 8;
    double grid = 0.25;

    size_t samples = 100000;  // stats
    int bins = 20;
    std::string thresholds_spec;
    bool kumaraswamy = false;

    double slice_x = 0.0;  // raster
    double window = 0.0;   // raster half-width, 0 = one period
};

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<double> parse_range(const std::string& spec) {
    // "min:max:step" or a comma-separated list
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo, hi, step;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 ||
            hi < lo)
            throw std::invalid_argument("bad range '" + spec + "', expected min:max:step");
        for (long k = 0;; ++k) {
            const double v = lo + k * step;
            if (v > hi + step * 1e-9) break;
            out.push_back(v);
        }
        return out;
    }
    std::istringstream in(spec);
    std::string field;
    while (std::getline(in, field, ',')) out.push_back(std::stod(field));
    if (out.empty()) throw std::invalid_argument("empty list '" + spec + "'");
    return out;
}

std::vector<fwe::CatalogEntry> load_entries(const Options& opt) {
    if (opt.catalog_path.empty()) return fwe::builtin_catalog();
    return fwe::load_catalog(opt.catalog_path);
}

std::vector<fwe::CatalogEntry> select_styles(const Options& opt) {
    const auto entries = load_entries(opt);
    if (opt.styles.empty())
        throw std::invalid_argument("no styles selected; use --styles <names|all>");
    if (opt.styles.size() == 1 && opt.styles[0] == "all") return entries;
    std::vector<fwe::CatalogEntry> picked;
    for (const auto& name : opt.styles) {
        bool found = false;
        for (const auto& entry : entries)
            if (entry.style.name == name) {
                picked.push_back(entry);
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument("style '" + name + "' not found in catalog");
    }
    return picked;
}

std::string cache_dir_or_env(const Options& opt) {
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    if (const char* env = std::getenv("FWE_CACHE_DIR")) return env;
    return {};
}

fwe::SweepConfig sweep_config(const Options& opt) {
    fwe::SweepConfig cfg;
    cfg.offsets = parse_range(opt.offsets_spec);
    cfg.n_slices = opt.slices;
    cfg.grid_mil = opt.grid;
    cfg.threads = opt.threads;
    cfg.validate();
    return cfg;
}

fwe::TraceLayout layout_from(const Options& opt) {
    fwe::TraceLayout layout;
    layout.kind = opt.diff ? fwe::TraceKind::differential : fwe::TraceKind::single;
    layout.w = opt.w;
    layout.s = opt.diff ? opt.s : 0.0;
    layout.validate();
    return layout;
}

std::string sweep_csv_name(const std::string& style, const fwe::TraceLayout& layout) {
    std::string name = "sweep_" + style;
    name += layout.kind == fwe::TraceKind::single ? "_single" : "_diff";
    name += "_w" + fmt_num(layout.w);
    if (layout.kind == fwe::TraceKind::differential) name += "_s" + fmt_num(layout.s);
    return name + ".csv";
}

std::string stats_base_name(const std::string& style, const fwe::TraceLayout& layout) {
    std::string name = "stats_" + style;
    name += layout.kind == fwe::TraceKind::single ? "_dde" : "_dse";
    name += "_w" + fmt_num(layout.w);
    if (layout.kind == fwe::TraceKind::differential) name += "_s" + fmt_num(layout.s);
    return name;
}

void write_file(const fs::path& path, const std::string& content) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join_g12(const std::vector<double>& values) {
    std::string out;
    char buf[40];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", values[i]);
        if (i) out += ',';
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

int cmd_catalog(const Options& opt) {
    const auto entries = opt.builtin ? fwe::builtin_catalog() : load_entries(opt);
    std::printf("%zu styles\n", entries.size());
    if (!entries.empty())
        std::printf("%-10s %6s %6s %6s %6s %6s %6s\n", "name", "x1", "x2", "x3", "y1", "y2",
                    "y3");
    for (const auto& entry : entries) {
        const fwe::FabricStyle& st = entry.style;
        std::printf("%-10s %6g %6g %6g %6g %6g %6g\n", st.name.c_str(), st.x1, st.x2, st.x3,
                    st.y1, st.y2, st.y3);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const Options& opt) {
    const fwe::TraceLayout layout = layout_from(opt);
    const fwe::SweepConfig cfg = sweep_config(opt);
    const std::string cache_dir = cache_dir_or_env(opt);

    for (const auto& entry : select_styles(opt)) {
        const fwe::LatticeModel model = fwe::make_lattice(entry.style, entry.laminate);
        const fwe::CacheKey key = fwe::make_cache_key(entry.style, entry.laminate, layout, cfg);
        const fs::path out_path = fs::path(opt.out_dir) / sweep_csv_name(entry.style.name, layout);

        std::string payload;
        if (!cache_dir.empty()) {
            if (auto cached = fwe::cache_lookup(cache_dir, key)) {
                payload = *cached;
                std::printf("%s: cache hit\n", entry.style.name.c_str());
            }
        }
        if (payload.empty()) {
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<std::string> meta = {
                std::string("fwe sweep cache v1, solver ") + fwe::kSolverVersion,
                "style " + entry.style.name,
                std::string("layout ") +
                    (layout.kind == fwe::TraceKind::single ? "single" : "diff") +
                    " w=" + fmt_num(layout.w) + " s=" + fmt_num(layout.s),
            };
            try {
                if (layout.kind == fwe::TraceKind::single) {
                    const fwe::DelayProfile profile = fwe::run_single_sweep(model, layout, cfg);
                    payload = fwe::to_csv(profile);
                    meta.push_back("z0_min " + join_g12(profile.z0_min));
                    meta.push_back("z0_max " + join_g12(profile.z0_max));
                } else {
                    const fwe::SkewProfile profile = fwe::run_diff_sweep(model, layout, cfg);
                    payload = fwe::to_csv(profile);
                }
            } catch (const fwe::SweepError& e) {
                if (!e.partial_csv().empty())
                    write_file(out_path.string() + ".partial", e.partial_csv());
                std::fprintf(stderr, "sweep failed for %s: %s\n", entry.style.name.c_str(),
                             e.what());
                return kExitSolver;
            }
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            std::printf("%s: swept %zu offsets in %.1f s\n", entry.style.name.c_str(),
                        cfg.sorted_offsets().size(), dt.count());
            if (!cache_dir.empty()) fwe::cache_store(cache_dir, key, payload, meta);
        }
        write_file(out_path, payload);
        std::printf("%s: wrote %s\n", entry.style.name.c_str(), out_path.string().c_str());

        if (opt.emit_svg) {
            const double period = entry.style.y3;
            fwe::SvgSeries samples;
            samples.label = "computed";
            samples.markers = true;
            samples.line = false;
            fwe::SvgSeries spline_line;
            spline_line.label = "spline";
            spline_line.color = "#b5651f";
            std::string title, y_label;
            // The spline overlay needs a period's worth of knots; sparse
            // sweeps are plotted as markers only.
            auto trace_spline = [&](const auto& profile) {
                try {
                    const fwe::PeriodicSpline spline = fwe::build_spline(profile);
                    for (double x = profile.offsets.front(); x <= profile.offsets.back();
                         x += period / 200.0) {
                        spline_line.x.push_back(x);
                        spline_line.y.push_back(spline(x));
                    }
                } catch (const std::invalid_argument&) {
                    spline_line.x.clear();
                    spline_line.y.clear();
                }
            };
            if (layout.kind == fwe::TraceKind::single) {
                const fwe::DelayProfile p = fwe::parse_delay_csv(payload, entry.style.name, period);
                samples.x = p.offsets;
                samples.y = p.delay;
                trace_spline(p);
                title = entry.style.name + " delay vs offset";
                y_label = "delay (ps/inch)";
            } else {
                const fwe::SkewProfile p = fwe::parse_skew_csv(payload, entry.style.name, period);
                samples.x = p.offsets;
                samples.y = p.skew;
                trace_spline(p);
                title = entry.style.name + " skew vs offset";
                y_label = "skew (ps/inch)";
            }
            fs::path svg_path = out_path;
            svg_path.replace_extension(".svg");
            std::vector<fwe::SvgSeries> series;
            if (!spline_line.x.empty()) series.push_back(spline_line);
            series.push_back(samples);
            write_file(svg_path, fwe::svg_xy_chart(title, "offset (mil)", y_label, series));

            if (layout.kind == fwe::TraceKind::single) {
                const fwe::DelayProfile p = fwe::parse_delay_csv(payload, entry.style.name, period);
                fwe::SvgSeries z0_series;
                z0_series.label = "impedance";
                z0_series.markers = true;
                z0_series.x = p.offsets;
                z0_series.y = p.z0;
                fs::path z0_path = out_path;
                z0_path.replace_extension("");
                write_file(z0_path.string() + "_z0.svg",
                           fwe::svg_xy_chart(entry.style.name + " impedance vs offset",
                                             "offset (mil)", "z0 (ohm)", {z0_series}));
            }
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

std::string locate_sweep_payload(const Options& opt, const fwe::CatalogEntry& entry,
                                 const fwe::TraceLayout& layout, const fwe::SweepConfig& cfg) {
    const fs::path out_path = fs::path(opt.out_dir) / sweep_csv_name(entry.style.name, layout);
    if (fs::exists(out_path)) return read_file(out_path);
    const std::string cache_dir = cache_dir_or_env(opt);
    if (!cache_dir.empty()) {
        const fwe::CacheKey key = fwe::make_cache_key(entry.style, entry.laminate, layout, cfg);
        if (auto cached = fwe::cache_lookup(cache_dir, key)) return *cached;
    }
    throw MissingDataError("no sweep data for style '" + entry.style.name + "' (expected " +
                           out_path.string() + "); run `fwe sweep` first");
}

int cmd_stats(const Options& opt) {
    const fwe::TraceLayout layout = layout_from(opt);
    const fwe::SweepConfig cfg = sweep_config(opt);
    fwe::StatsOptions stats_options;
    stats_options.samples = opt.samples;
    stats_options.bins = opt.bins;
    stats_options.seed = opt.seed;
    stats_options.kumaraswamy = opt.kumaraswamy;
    if (!opt.thresholds_spec.empty()) stats_options.thresholds = parse_range(opt.thresholds_spec);

    for (const auto& entry : select_styles(opt)) {
        const std::string payload = locate_sweep_payload(opt, entry, layout, cfg);
        fwe::StatsResult result;
        if (layout.kind == fwe::TraceKind::single) {
            if (fwe::csv_is_skew(payload))
                throw std::invalid_argument("sweep data for '" + entry.style.name +
                                            "' is differential; pass --diff");
            const fwe::DelayProfile profile =
                fwe::parse_delay_csv(payload, entry.style.name, entry.style.y3);
            result = fwe::compute_stats(profile, layout.w, stats_options);
        } else {
            if (!fwe::csv_is_skew(payload))
                throw std::invalid_argument("sweep data for '" + entry.style.name +
                                            "' is single-ended; pass --single");
            const fwe::SkewProfile profile =
                fwe::parse_skew_csv(payload, entry.style.name, entry.style.y3);
            result = fwe::compute_stats(profile, layout.w, layout.s, stats_options);
        }

        const json report = fwe::stats_report_json(result);
        const std::string base = stats_base_name(entry.style.name, layout);
        const fs::path json_path = fs::path(opt.out_dir) / (base + ".json");
        write_file(json_path, report.dump(2) + "\n");
        std::printf("%s: delta_t=%.4f ps/in, wrote %s\n", entry.style.name.c_str(),
                    result.arcsine.delta_t, json_path.string().c_str());

        if (opt.emit_csv)
            write_file(fs::path(opt.out_dir) / (base + "_exceedance.csv"),
                       fwe::exceedance_csv(result));
        if (opt.emit_svg) {
            write_file(fs::path(opt.out_dir) / (base + "_density.svg"),
                       fwe::svg_histogram(entry.style.name + " deviation density",
                                          "deviation (ps/inch)", result.histogram.edges,
                                          result.histogram.density));
            std::vector<std::string> groups;
            std::vector<std::vector<double>> bars(2);
            for (size_t i = 0; i < result.empirical.thresholds.size(); ++i) {
                groups.push_back(fmt_num(result.empirical.thresholds[i]));
                bars[0].push_back(result.empirical.probability[i]);
                bars[1].push_back(result.arcsine_probability[i]);
            }
            const char* kind = layout.kind == fwe::TraceKind::single ? "DDE" : "DSE";
            write_file(fs::path(opt.out_dir) / (base + "_exceedance.svg"),
                       fwe::svg_grouped_bars(entry.style.name + std::string(" ") + kind,
                                             "threshold (ps/inch)", groups,
                                             {"empirical", "arcsine"}, bars));
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

int cmd_compare(const Options& opt) {
    const fwe::TraceLayout layout = layout_from(opt);
    const auto entries = select_styles(opt);
    if (entries.size() < 2) throw std::invalid_argument("compare needs at least 2 styles");
    std::vector<json> reports;
    for (const auto& entry : entries) {
        const fs::path path =
            fs::path(opt.out_dir) / (stats_base_name(entry.style.name, layout) + ".json");
        if (!fs::exists(path))
            throw MissingDataError("no stats report " + path.string() + "; run `fwe stats` first");
        reports.push_back(json::parse(read_file(path)));
    }
    const fwe::ComparisonTable table = fwe::build_comparison(reports);
    std::fputs(fwe::comparison_text(table).c_str(), stdout);

    const char* kind = table.kind == fwe::ExceedanceKind::DDE ? "dde" : "dse";
    if (opt.emit_csv)
        write_file(fs::path(opt.out_dir) / (std::string("compare_") + kind + ".csv"),
                   fwe::comparison_csv(table));
    if (opt.emit_json)
        write_file(fs::path(opt.out_dir) / (std::string("compare_") + kind + ".json"),
                   fwe::comparison_json(table).dump(2) + "\n");
    if (opt.emit_svg) {
        std::vector<std::string> groups;
        for (int t : table.thresholds) groups.push_back(std::to_string(t));
        std::vector<std::string> labels;
        std::vector<std::vector<double>> values;
        for (const auto& row : table.rows) {
            labels.push_back(row.style);
            values.push_back(row.empirical);
        }
        write_file(fs::path(opt.out_dir) / (std::string("compare_") + kind + ".svg"),
                   fwe::svg_grouped_bars(std::string(table.kind == fwe::ExceedanceKind::DDE
                                                         ? "DDE comparison"
                                                         : "DSE comparison"),
                                         "threshold (ps/inch)", groups, labels, values));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int cmd_validate(const Options& opt) {
    fwe::ValidationOptions vopt;
    if (opt.grid > 0.0) vopt.grid_mil = opt.grid;
    vopt.threads = opt.threads;
    const auto cases = fwe::run_validation_suite(vopt);
    bool all_pass = true;
    for (const auto& c : cases) {
        std::printf("[%s] %-44s measured %.6g expected %.6g err %.2f%% (tol %.1f%%)\n",
                    c.pass ? "ok" : "FAIL", c.name.c_str(), c.measured, c.expected,
                    100.0 * c.rel_error, 100.0 * c.tolerance);
        all_pass = all_pass && c.pass;
    }
    return all_pass ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// raster
// ---------------------------------------------------------------------------

int cmd_raster(const Options& opt) {
    if (!std::isfinite(opt.slice_x))
        throw std::invalid_argument("raster slice position must be finite");
    for (const auto& entry : select_styles(opt)) {
        const fwe::LatticeModel model = fwe::make_lattice(entry.style, entry.laminate);
        const double half = opt.window > 0.0 ? opt.window : entry.style.y3;
        const double d = opt.grid;
        fwe::Grid2D grid;
        grid.ny = std::max(8, static_cast<int>(std::lround(2.0 * half / d)));
        grid.nz = std::max(8, static_cast<int>(std::lround(1.5 * entry.laminate.h / d)));
        grid.dy = d;
        grid.dz = d;
        grid.y0 = -half;
        grid.z0 = 0.0;
        const fwe::DielectricRaster raster = fwe::raster_slice(model, opt.slice_x, grid);
        const std::string base = "raster_" + entry.style.name + "_x" + fmt_num(opt.slice_x);
        write_file(fs::path(opt.out_dir) / (base + ".txt"), fwe::to_text_matrix(raster));
        std::printf("%s: wrote %s.txt (%dx%d cells)\n", entry.style.name.c_str(), base.c_str(),
                    grid.ny, grid.nz);
        if (opt.emit_svg)
            write_file(fs::path(opt.out_dir) / (base + ".svg"),
                       fwe::svg_heatmap(entry.style.name + " cross-section at x=" +
                                            fmt_num(opt.slice_x) + " mil",
                                        raster));
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--catalog", opt.catalog_path, "fabric catalog file (default: builtin)");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--cache", opt.cache_dir, "cache directory (or FWE_CACHE_DIR)");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    cmd->add_flag("--csv", opt.emit_csv, "emit CSV outputs");
    cmd->add_flag("--json", opt.emit_json, "emit JSON outputs");
    cmd->add_flag("--svg", opt.emit_svg, "emit SVG plots");
}

void add_layout(CLI::App* cmd, Options& opt) {
    cmd->add_option("--styles", opt.styles, "style names or 'all'")->delimiter(',');
    auto* single = cmd->add_flag("--single", opt.single, "single-ended trace");
    cmd->add_flag("--diff", opt.diff, "differential pair")->excludes(single);
    cmd->add_option("-w,--width", opt.w, "trace width, mil");
    cmd->add_option("-s,--separation", opt.s, "edge-to-edge separation, mil");
}

void add_sweep_params(CLI::App* cmd, Options& opt) {
    cmd->add_option("--offsets", opt.offsets_spec, "offset range min:max:step, mil");
    cmd->add_option("--slices", opt.slices, "cross-sections per lattice period");
    cmd->add_option("--grid", opt.grid, "grid spacing, mil");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fiber weave effect delay/skew uncertainty toolkit"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* catalog = app.add_subcommand("catalog", "list fabric styles");
    catalog->add_option("--catalog", opt.catalog_path, "fabric catalog file");
    catalog->add_flag("--builtin", opt.builtin, "list the built-in styles");

    CLI::App* sweep = app.add_subcommand("sweep", "delay/skew vs offset sweeps");
    add_common(sweep, opt);
    add_layout(sweep, opt);
    add_sweep_params(sweep, opt);

    CLI::App* stats = app.add_subcommand("stats", "DDE/DSE statistics from sweep results");
    add_common(stats, opt);
    add_layout(stats, opt);
    add_sweep_params(stats, opt);
    stats->add_option("--samples", opt.samples, "Monte Carlo samples");
    stats->add_option("--bins", opt.bins, "histogram bins");
    stats->add_option("--thresholds", opt.thresholds_spec, "threshold grid min:max:step");
    stats->add_flag("--kumaraswamy", opt.kumaraswamy, "fit a Kumaraswamy model too");

    CLI::App* compare = app.add_subcommand("compare", "side-by-side exceedance table");
    add_common(compare, opt);
    add_layout(compare, opt);

    CLI::App* validate = app.add_subcommand("validate", "solver validation suite");
    validate->add_option("--grid", opt.grid, "validation grid spacing, mil")->default_val(0.125);
    validate->add_option("--threads", opt.threads, "worker threads");

    CLI::App* raster = app.add_subcommand("raster", "dump a dielectric cross-section");
    add_common(raster, opt);
    raster->add_option("--styles", opt.styles, "style names or 'all'")->delimiter(',');
    raster->add_option("--slice-x", opt.slice_x, "longitudinal slice position, mil");
    raster->add_option("--grid", opt.grid, "grid spacing, mil");
    raster->add_option("--window", opt.window, "half-width of the dumped window, mil");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(catalog)) return cmd_catalog(opt);
        if (app.got_subcommand(sweep)) return cmd_sweep(opt);
        if (app.got_subcommand(stats)) return cmd_stats(opt);
        if (app.got_subcommand(compare)) return cmd_compare(opt);
        if (app.got_subcommand(validate)) return cmd_validate(opt);
        if (app.got_subcommand(raster)) return cmd_raster(opt);
    } catch (const fwe::CatalogError& e) {
        std::fprintf(stderr, "catalog error (line %d): %s\n", e.line(), e.what());
        return kExitConfig;
    } catch (const MissingDataError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitMissingData;
    } catch (const fwe::SweepError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const fwe::SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitOk;
}
