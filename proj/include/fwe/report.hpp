#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fwe/stats.hpp"
#include "fwe/sweep.hpp"

namespace fwe {

struct StatsOptions {
    size_t samples = 100000;
    int bins = 20;
    uint64_t seed = 1;
    std::optional<std::vector<double>> thresholds;  // default 0..ceil(delta_t) step 0.25
    bool kumaraswamy = false;
};

/// Everything the statistics stage derives from one sweep profile.
struct StatsResult {
    std::string style;
    ExceedanceKind kind = ExceedanceKind::DDE;
    double w = 0.0;
    double s = 0.0;
    double period = 0.0;
    PeriodicSpline spline;
    ArcsineModel arcsine;
    DeviationSample sample;
    Histogram histogram;
    ExceedanceCurve empirical;
    std::vector<double> arcsine_probability;
    std::optional<KumaraswamyModel> kumaraswamy;
    double kumaraswamy_ks = 0.0;
};

StatsResult compute_stats(const DelayProfile& profile, double w, const StatsOptions& options);
StatsResult compute_stats(const SkewProfile& profile, double w, double s,
                          const StatsOptions& options);

/// Schema-checked JSON document for one DDE/DSE result.
nlohmann::json stats_report_json(const StatsResult& result);

/// Throws std::runtime_error when a report is missing fields, has mismatched
/// array lengths, or violates the exceedance invariants.
void validate_stats_report(const nlohmann::json& report);

/// threshold_ps_per_in,empirical,arcsine[,kumaraswamy] rows.
std::string exceedance_csv(const StatsResult& result);

// ---------------------------------------------------------------------------
// Multi-style comparison
// ---------------------------------------------------------------------------

struct ComparisonRow {
    std::string style;
    double delta_t = 0.0;
    std::vector<double> empirical;  // at integer thresholds
    std::vector<double> arcsine;
};

struct ComparisonTable {
    ExceedanceKind kind = ExceedanceKind::DDE;
    std::vector<int> thresholds;  // ps/inch
    std::vector<ComparisonRow> rows;
};

/// Integer-threshold side-by-side table from >= 2 stats reports of the same
/// kind, rows in the given order.
ComparisonTable build_comparison(const std::vector<nlohmann::json>& reports, int t_min = 1,
                                 int t_max = 8);

std::string comparison_text(const ComparisonTable& table);
std::string comparison_csv(const ComparisonTable& table);
nlohmann::json comparison_json(const ComparisonTable& table);

/// Reference exceedance values at 3 ps/inch reported by full-wave 3D EM
/// analysis of the same laminates, for qualitative comparison only.
struct FullWaveReference {
    std::string style;
    double probability;
};
std::vector<FullWaveReference> fullwave_reference(ExceedanceKind kind);

}  // namespace fwe
