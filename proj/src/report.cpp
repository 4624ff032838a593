#include "fwe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fwe {

namespace {

StatsResult finish_stats(StatsResult result, const StatsOptions& options) {
    result.arcsine = fit_arcsine(result.spline,
                                 result.kind == ExceedanceKind::DDE ? DeviationKind::delay
                                                                    : DeviationKind::skew);
    result.sample = deviation_series(result.spline,
                                     result.kind == ExceedanceKind::DDE ? DeviationKind::delay
                                                                        : DeviationKind::skew,
                                     options.samples, options.seed);
    result.histogram = density(result.sample, options.bins);
    std::vector<double> thresholds;
    if (options.thresholds) {
        thresholds = *options.thresholds;
    } else {
        // mean-referenced deviations of a skewed profile can exceed the
        // arcsine amplitude; the grid runs until the empirical curve hits 0
        const double worst =
            *std::max_element(result.sample.values.begin(), result.sample.values.end());
        const double hi = std::ceil(std::max({0.0, result.arcsine.delta_t, worst}));
        thresholds = make_thresholds(0.0, hi, 0.25);
    }
    result.empirical = exceedance(result.sample, std::move(thresholds), result.kind);
    result.arcsine_probability.reserve(result.empirical.thresholds.size());
    for (double t : result.empirical.thresholds)
        result.arcsine_probability.push_back(arcsine_ccdf(result.arcsine, t));
    if (options.kumaraswamy) {
        result.kumaraswamy = fit_kumaraswamy(result.sample);
        const KumaraswamyModel& km = *result.kumaraswamy;
        result.kumaraswamy_ks =
            ks_statistic(result.sample, [&km](double t) { return km.ccdf(t); });
    }
    return result;
}

}  // namespace

StatsResult compute_stats(const DelayProfile& profile, double w, const StatsOptions& options) {
    StatsResult result;
    result.style = profile.style;
    result.kind = ExceedanceKind::DDE;
    result.w = w;
    result.s = 0.0;
    result.period = profile.period;
    result.spline = build_spline(profile);
    return finish_stats(std::move(result), options);
}

StatsResult compute_stats(const SkewProfile& profile, double w, double s,
                          const StatsOptions& options) {
    StatsResult result;
    result.style = profile.style;
    result.kind = ExceedanceKind::DSE;
    result.w = w;
    result.s = s;
    result.period = profile.period;
    result.spline = build_spline(profile);
    return finish_stats(std::move(result), options);
}

nlohmann::json stats_report_json(const StatsResult& result) {
    nlohmann::json report;
    report["style"] = result.style;
    report["kind"] = result.kind == ExceedanceKind::DDE ? "DDE" : "DSE";
    report["trace"] = {{"w", result.w}, {"s", result.s}};
    report["period_mil"] = result.period;
    report["delta_t_ps_per_in"] = result.arcsine.delta_t;
    report["alpha_rad"] = result.arcsine.alpha;
    report["thresholds"] = result.empirical.thresholds;
    report["empirical_exceedance"] = result.empirical.probability;
    report["arcsine_exceedance"] = result.arcsine_probability;
    if (result.kumaraswamy) {
        report["kumaraswamy"] = {{"a", result.kumaraswamy->a},
                                 {"b", result.kumaraswamy->b},
                                 {"ks", result.kumaraswamy_ks}};
    } else {
        report["kumaraswamy"] = nullptr;
    }
    report["sample"] = {{"n", result.sample.n()},
                        {"bins", static_cast<int>(result.histogram.counts.size())},
                        {"seed", result.sample.seed}};
    report["histogram"] = {{"edges", result.histogram.edges},
                           {"density", result.histogram.density}};
    validate_stats_report(report);
    return report;
}

void validate_stats_report(const nlohmann::json& report) {
    auto fail = [](const std::string& what) {
        throw std::runtime_error("stats report schema violation: " + what);
    };
    for (const char* key : {"style", "kind", "trace", "period_mil", "delta_t_ps_per_in",
                            "thresholds", "empirical_exceedance", "arcsine_exceedance",
                            "kumaraswamy", "sample", "histogram"})
        if (!report.contains(key)) fail(std::string("missing field '") + key + "'");
    if (!report["style"].is_string()) fail("style must be a string");
    const std::string kind = report["kind"].get<std::string>();
    if (kind != "DDE" && kind != "DSE") fail("kind must be DDE or DSE");
    if (!report["trace"].contains("w") || !report["trace"].contains("s"))
        fail("trace must carry w and s");
    const auto& thresholds = report["thresholds"];
    const auto& empirical = report["empirical_exceedance"];
    const auto& arcsine = report["arcsine_exceedance"];
    if (!thresholds.is_array() || thresholds.empty()) fail("thresholds must be non-empty");
    if (empirical.size() != thresholds.size() || arcsine.size() != thresholds.size())
        fail("exceedance arrays must match thresholds");
    double prev_emp = 1.0, prev_arc = 1.0, prev_t = -1.0;
    for (size_t i = 0; i < thresholds.size(); ++i) {
        const double t = thresholds[i].get<double>();
        const double e = empirical[i].get<double>();
        const double a = arcsine[i].get<double>();
        if (t < prev_t) fail("thresholds must ascend");
        if (e < 0.0 || e > 1.0 || a < 0.0 || a > 1.0) fail("probabilities must lie in [0,1]");
        if (e > prev_emp + 1e-12 || a > prev_arc + 1e-12)
            fail("exceedance must be non-increasing");
        if (i == 0 && t == 0.0 && e != 1.0) fail("exceedance at t=0 must be 1");
        prev_t = t;
        prev_emp = e;
        prev_arc = a;
    }
    const auto& sample = report["sample"];
    if (!sample.contains("n") || !sample.contains("bins") || !sample.contains("seed"))
        fail("sample must carry n, bins, seed");
    const auto& hist = report["histogram"];
    if (!hist.contains("edges") || !hist.contains("density")) fail("histogram incomplete");
    if (hist["edges"].size() != hist["density"].size() + 1)
        fail("histogram edges must be density size + 1");
    double integral = 0.0;
    for (size_t b = 0; b < hist["density"].size(); ++b) {
        const double width = hist["edges"][b + 1].get<double>() - hist["edges"][b].get<double>();
        integral += hist["density"][b].get<double>() * width;
    }
    if (std::abs(integral - 1.0) > 1e-9) fail("histogram density must integrate to 1");
}

std::string exceedance_csv(const StatsResult& result) {
    std::string out = result.kumaraswamy
                          ? "threshold_ps_per_in,empirical,arcsine,kumaraswamy\n"
                          : "threshold_ps_per_in,empirical,arcsine\n";
    char buf[160];
    for (size_t i = 0; i < result.empirical.thresholds.size(); ++i) {
        if (result.kumaraswamy) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n",
                          result.empirical.thresholds[i], result.empirical.probability[i],
                          result.arcsine_probability[i],
                          result.kumaraswamy->ccdf(result.empirical.thresholds[i]));
        } else {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n",
                          result.empirical.thresholds[i], result.empirical.probability[i],
                          result.arcsine_probability[i]);
        }
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

ComparisonTable build_comparison(const std::vector<nlohmann::json>& reports, int t_min,
                                 int t_max) {
    if (reports.size() < 2)
        throw std::invalid_argument("build_comparison: need at least 2 stats reports");
    ComparisonTable table;
    for (int t = t_min; t <= t_max; ++t) table.thresholds.push_back(t);
    std::string kind;
    for (const auto& report : reports) {
        validate_stats_report(report);
        if (kind.empty())
            kind = report["kind"].get<std::string>();
        else if (kind != report["kind"].get<std::string>())
            throw std::invalid_argument("build_comparison: mixed DDE/DSE reports");
        ComparisonRow row;
        row.style = report["style"].get<std::string>();
        row.delta_t = report["delta_t_ps_per_in"].get<double>();
        const auto& thresholds = report["thresholds"];
        const auto& empirical = report["empirical_exceedance"];
        const ArcsineModel arc{row.delta_t, 0.0};
        for (int t : table.thresholds) {
            double emp = 0.0;  // beyond the report grid every deviation lies below t
            for (size_t i = 0; i < thresholds.size(); ++i) {
                if (std::abs(thresholds[i].get<double>() - t) < 1e-9) {
                    emp = empirical[i].get<double>();
                    break;
                }
            }
            row.empirical.push_back(emp);
            row.arcsine.push_back(arcsine_ccdf(arc, static_cast<double>(t)));
        }
        table.rows.push_back(std::move(row));
    }
    table.kind = kind == "DSE" ? ExceedanceKind::DSE : ExceedanceKind::DDE;
    return table;
}

std::string comparison_text(const ComparisonTable& table) {
    std::ostringstream out;
    const char* kind = table.kind == ExceedanceKind::DDE ? "DDE" : "DSE";
    out << "style      delta_t";
    for (int t : table.thresholds) out << "  " << kind << "@" << t << " (arc)";
    out << "\n";
    char buf[64];
    for (const auto& row : table.rows) {
        std::snprintf(buf, sizeof buf, "%-10s %7.3f", row.style.c_str(), row.delta_t);
        out << buf;
        for (size_t i = 0; i < table.thresholds.size(); ++i) {
            std::snprintf(buf, sizeof buf, "  %5.1f%% (%5.1f%%)", 100.0 * row.empirical[i],
                          100.0 * row.arcsine[i]);
            out << buf;
        }
        out << "\n";
    }
    const auto refs = fullwave_reference(table.kind);
    if (!refs.empty()) {
        out << "reference " << kind << "@3 from full-wave 3D EM analysis:";
        for (const auto& r : refs) {
            std::snprintf(buf, sizeof buf, " %s=%.0f%%", r.style.c_str(), 100.0 * r.probability);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

std::string comparison_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "style,delta_t_ps_per_in";
    for (int t : table.thresholds) out << ",empirical_" << t << ",arcsine_" << t;
    out << "\n";
    char buf[48];
    for (const auto& row : table.rows) {
        out << row.style;
        std::snprintf(buf, sizeof buf, ",%.12g", row.delta_t);
        out << buf;
        for (size_t i = 0; i < table.thresholds.size(); ++i) {
            std::snprintf(buf, sizeof buf, ",%.12g,%.12g", row.empirical[i], row.arcsine[i]);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::json comparison_json(const ComparisonTable& table) {
    nlohmann::json j;
    j["kind"] = table.kind == ExceedanceKind::DDE ? "DDE" : "DSE";
    j["thresholds_ps_per_in"] = table.thresholds;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        j["rows"].push_back({{"style", row.style},
                             {"delta_t_ps_per_in", row.delta_t},
                             {"empirical", row.empirical},
                             {"arcsine", row.arcsine}});
    }
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& r : fullwave_reference(table.kind))
        refs.push_back({{"style", r.style}, {"threshold_ps_per_in", 3.0},
                        {"probability", r.probability}});
    j["fullwave_reference"] = refs;
    return j;
}

std::vector<FullWaveReference> fullwave_reference(ExceedanceKind kind) {
    if (kind == ExceedanceKind::DDE) return {{"1080", 0.50}, {"3313", 0.60}};
    return {{"1078", 0.44}, {"1080", 0.66}, {"3313", 0.76}};
}

}  // namespace fwe
