#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fwe/report.hpp"
#include "fwe/svg.hpp"

using namespace fwe;
using nlohmann::json;

namespace {

DelayProfile sinusoid_profile(double amplitude, double mean, double period) {
    DelayProfile p;
    p.style = "synthetic";
    p.period = period;
    for (int o = -12; o <= 12; ++o) {
        p.offsets.push_back(o);
        p.delay.push_back(mean + amplitude * std::sin(2.0 * std::numbers::pi * o / period));
        p.z0.push_back(50.0);
        p.z0_min.push_back(50.0);
        p.z0_max.push_back(50.0);
    }
    return p;
}

SkewProfile sinusoid_skew(double amplitude, double period) {
    SkewProfile p;
    p.style = "synthetic";
    p.period = period;
    for (int o = -12; o <= 12; ++o) {
        p.offsets.push_back(o);
        p.skew.push_back(amplitude * std::sin(2.0 * std::numbers::pi * o / period));
        p.delay_left.push_back(140.0);
        p.delay_right.push_back(140.0);
    }
    return p;
}

}  // namespace

TEST_CASE("compute_stats on a sinusoidal delay profile") {
    StatsOptions options;
    options.kumaraswamy = true;
    const StatsResult r = compute_stats(sinusoid_profile(5.0, 140.0, 14.0), 4.0, options);

    CHECK(r.kind == ExceedanceKind::DDE);
    CHECK(r.arcsine.delta_t == doctest::Approx(5.0).epsilon(1e-3));
    CHECK(r.sample.n() == 100000);
    // default grid: 0 .. ceil(delta_t) step 0.25
    CHECK(r.empirical.thresholds.front() == 0.0);
    CHECK(r.empirical.thresholds.back() == doctest::Approx(5.0));
    CHECK(r.empirical.probability.front() == 1.0);
    // analytic 2/3 at half the amplitude (threshold index for 2.5)
    size_t half = 0;
    for (size_t i = 0; i < r.empirical.thresholds.size(); ++i)
        if (std::abs(r.empirical.thresholds[i] - 2.5) < 1e-12) half = i;
    CHECK(r.empirical.probability[half] == doctest::Approx(2.0 / 3.0).epsilon(0.015));
    CHECK(r.arcsine_probability[half] == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    REQUIRE(r.kumaraswamy.has_value());
    CHECK(r.kumaraswamy_ks < 0.02);

    SUBCASE("report json validates and carries the documented fields") {
        const json report = stats_report_json(r);
        CHECK(report["style"] == "synthetic");
        CHECK(report["kind"] == "DDE");
        CHECK(report["trace"]["w"] == 4.0);
        CHECK(report["period_mil"] == 14.0);
        CHECK(report["sample"]["n"] == 100000);
        CHECK(report["sample"]["bins"] == 20);
        CHECK(report["sample"]["seed"] == 1);
        CHECK(report["thresholds"].size() == report["empirical_exceedance"].size());
        CHECK(report["kumaraswamy"].contains("ks"));
        CHECK_NOTHROW(validate_stats_report(report));
    }

    SUBCASE("tampered reports are rejected") {
        json report = stats_report_json(r);
        json missing = report;
        missing.erase("delta_t_ps_per_in");
        CHECK_THROWS_AS(validate_stats_report(missing), std::runtime_error);

        json bad_kind = report;
        bad_kind["kind"] = "DDX";
        CHECK_THROWS_AS(validate_stats_report(bad_kind), std::runtime_error);

        json rising = report;
        rising["empirical_exceedance"][1] = 1.5;
        CHECK_THROWS_AS(validate_stats_report(rising), std::runtime_error);

        json short_arr = report;
        short_arr["arcsine_exceedance"].erase(0);
        CHECK_THROWS_AS(validate_stats_report(short_arr), std::runtime_error);
    }

    SUBCASE("exceedance csv") {
        const std::string csv = exceedance_csv(r);
        CHECK(csv.rfind("threshold_ps_per_in,empirical,arcsine,kumaraswamy\n", 0) == 0);
        size_t rows = 0;
        for (char c : csv)
            if (c == '\n') ++rows;
        CHECK(rows == r.empirical.thresholds.size() + 1);

        const StatsResult plain =
            compute_stats(sinusoid_profile(5.0, 140.0, 14.0), 4.0, StatsOptions{});
        CHECK(exceedance_csv(plain).rfind("threshold_ps_per_in,empirical,arcsine\n", 0) == 0);
    }
}

TEST_CASE("compute_stats on a constant profile") {
    DelayProfile flat;
    flat.style = "flat";
    flat.period = 14.0;
    for (int o = -12; o <= 12; ++o) {
        flat.offsets.push_back(o);
        flat.delay.push_back(100.0);
        flat.z0.push_back(50.0);
        flat.z0_min.push_back(50.0);
        flat.z0_max.push_back(50.0);
    }
    StatsOptions options;
    options.thresholds = std::vector<double>{0.0, 1.0, 2.0};
    const StatsResult r = compute_stats(flat, 4.0, options);
    CHECK(r.arcsine.delta_t == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.empirical.probability[0] == 1.0);
    CHECK(r.empirical.probability[1] == 0.0);
    CHECK(r.empirical.probability[2] == 0.0);
    CHECK(r.arcsine_probability[1] == 0.0);
    CHECK_NOTHROW(validate_stats_report(stats_report_json(r)));
}

TEST_CASE("compute_stats on a skew profile reports DSE") {
    const StatsResult r = compute_stats(sinusoid_skew(2.0, 14.0), 4.0, 4.0, StatsOptions{});
    CHECK(r.kind == ExceedanceKind::DSE);
    CHECK(r.s == 4.0);
    CHECK(r.arcsine.delta_t == doctest::Approx(2.0).epsilon(1e-3));
    const json report = stats_report_json(r);
    CHECK(report["kind"] == "DSE");
    CHECK(report["trace"]["s"] == 4.0);
}

TEST_CASE("deterministic reports") {
    const DelayProfile p = sinusoid_profile(3.0, 120.0, 14.0);
    const json a = stats_report_json(compute_stats(p, 4.0, StatsOptions{}));
    const json b = stats_report_json(compute_stats(p, 4.0, StatsOptions{}));
    CHECK(a.dump() == b.dump());
    StatsOptions other_seed;
    other_seed.seed = 2;
    const json c = stats_report_json(compute_stats(p, 4.0, other_seed));
    CHECK(a.dump() != c.dump());
}

TEST_CASE("comparison table") {
    std::vector<json> reports;
    for (double amp : {1.5, 4.0}) {
        DelayProfile p = sinusoid_profile(amp, 140.0, 14.0);
        p.style = amp < 2.0 ? "small" : "large";
        reports.push_back(stats_report_json(compute_stats(p, 4.0, StatsOptions{})));
    }
    const ComparisonTable table = build_comparison(reports);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.thresholds == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(table.rows[0].style == "small");
    CHECK(table.rows[0].delta_t < table.rows[1].delta_t);
    for (const auto& row : table.rows)
        for (size_t i = 0; i < row.arcsine.size(); ++i) {
            CHECK(row.arcsine[i] >= 0.0);
            CHECK(row.arcsine[i] <= 1.0);
            // zero beyond the fitted amplitude
            if (table.thresholds[i] >= row.delta_t) CHECK(row.arcsine[i] == 0.0);
            if (table.thresholds[i] >= row.delta_t) CHECK(row.empirical[i] == 0.0);
        }

    SUBCASE("text, csv, json renderings") {
        const std::string text = comparison_text(table);
        CHECK(text.find("small") != std::string::npos);
        CHECK(text.find("DDE@3") != std::string::npos);
        CHECK(text.find("full-wave") != std::string::npos);
        const std::string csv = comparison_csv(table);
        CHECK(csv.rfind("style,delta_t_ps_per_in,empirical_1,arcsine_1", 0) == 0);
        const json j = comparison_json(table);
        CHECK(j["rows"].size() == 2);
        CHECK(j["fullwave_reference"].size() == 2);  // DDE references
    }

    SUBCASE("needs two reports of one kind") {
        CHECK_THROWS_AS(build_comparison({reports[0]}), std::invalid_argument);
        SkewProfile sk = sinusoid_skew(1.0, 14.0);
        sk.style = "skewed";
        std::vector<json> mixed = reports;
        mixed.push_back(stats_report_json(compute_stats(sk, 4.0, 4.0, StatsOptions{})));
        CHECK_THROWS_AS(build_comparison(mixed), std::invalid_argument);
    }
}

TEST_CASE("fullwave reference values") {
    const auto dde = fullwave_reference(ExceedanceKind::DDE);
    REQUIRE(dde.size() == 2);
    CHECK(dde[0].style == "1080");
    CHECK(dde[0].probability == 0.50);
    const auto dse = fullwave_reference(ExceedanceKind::DSE);
    REQUIRE(dse.size() == 3);
    CHECK(dse[2].style == "3313");
    CHECK(dse[2].probability == 0.76);
}

TEST_CASE("svg rendering smoke") {
    const StatsResult r = compute_stats(sinusoid_profile(5.0, 140.0, 14.0), 4.0, StatsOptions{});

    SvgSeries line;
    line.label = "delay";
    for (int i = 0; i < 50; ++i) {
        line.x.push_back(i * 0.28);
        line.y.push_back(140.0 + 5.0 * std::sin(i * 0.126));
    }
    const std::string chart = svg_xy_chart("delay vs offset", "offset (mil)", "ps/inch", {line});
    CHECK(chart.rfind("<svg", 0) == 0);
    CHECK(chart.find("</svg>") != std::string::npos);
    CHECK(chart.find("delay vs offset") != std::string::npos);

    const std::string hist =
        svg_histogram("density", "deviation", r.histogram.edges, r.histogram.density);
    CHECK(hist.rfind("<svg", 0) == 0);
    CHECK(hist.find("rect") != std::string::npos);

    const std::string bars = svg_grouped_bars(
        "DDE", "threshold", {"1", "2"}, {"empirical", "arcsine"}, {{0.9, 0.5}, {0.85, 0.45}});
    CHECK(bars.rfind("<svg", 0) == 0);
    CHECK(bars.find("empirical") != std::string::npos);
}
