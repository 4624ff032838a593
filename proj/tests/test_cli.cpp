#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fwe/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FWE_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fwe_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string str() const { return path.string(); }
};

// fast sweep settings shared by the pipeline tests; the offsets still cover
// one lattice period so the spline stage has enough knots
const std::string kFast = "--offsets -12:12:2 --slices 1 --grid 0.5 --threads 2";

}  // namespace

TEST_CASE("catalog --builtin lists the four styles") {
    const RunResult r = run_cli("catalog --builtin");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("4 styles") != std::string::npos);
    for (const char* name : {"1035", "1080", "1078", "3313"})
        CHECK(r.output.find(name) != std::string::npos);
}

TEST_CASE("catalog file handling") {
    TempDir tmp;
    SUBCASE("empty catalog lists zero styles") {
        std::ofstream(tmp.path / "empty.ini") << "# nothing here\n";
        const RunResult r = run_cli("catalog --catalog " + (tmp.path / "empty.ini").string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0 styles") != std::string::npos);
    }
    SUBCASE("invalid row fails with the line number") {
        std::ofstream(tmp.path / "bad.ini")
            << "[broken]\nx1 = 1\nx2 = 15\nx3 = 14\ny1 = 1\ny2 = 12\ny3 = 14\n";
        const RunResult r = run_cli("catalog --catalog " + (tmp.path / "bad.ini").string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("bundle exceeds pitch") != std::string::npos);
        CHECK(r.output.find("line 1") != std::string::npos);
    }
    SUBCASE("missing file is a config error") {
        const RunResult r = run_cli("catalog --catalog " + (tmp.path / "nope.ini").string());
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("sweep, cache, stats, compare pipeline") {
    TempDir tmp;
    const std::string out = tmp.str() + "/out";
    const std::string cache = tmp.str() + "/cache";
    const std::string common = " --out " + out + " --cache " + cache + " " + kFast;

    // single-ended sweep for two styles
    const RunResult sweep =
        run_cli("sweep --styles 1035,3313 --single -w 4" + common + " --svg");
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.output.find("swept 13 offsets") != std::string::npos);
    const fs::path csv_1035 = fs::path(out) / "sweep_1035_single_w4.csv";
    REQUIRE(fs::exists(csv_1035));
    const std::string first = slurp(csv_1035);
    CHECK(first.rfind("offset_mil,delay_ps_per_in,z0_ohm\n", 0) == 0);
    CHECK(fs::exists(fs::path(out) / "sweep_1035_single_w4.svg"));

    SUBCASE("rerun hits the cache byte for byte") {
        const RunResult again = run_cli("sweep --styles 1035,3313 --single -w 4" + common);
        CHECK(again.exit_code == 0);
        CHECK(again.output.find("cache hit") != std::string::npos);
        CHECK(slurp(csv_1035) == first);
    }

    SUBCASE("stats consumes the sweep and reports validate") {
        const RunResult stats = run_cli("stats --styles 1035,3313 --single -w 4" + common +
                                        " --samples 20000 --seed 7 --csv --kumaraswamy");
        CHECK(stats.exit_code == 0);
        const fs::path report_path = fs::path(out) / "stats_1035_dde_w4.json";
        REQUIRE(fs::exists(report_path));
        const nlohmann::json report = nlohmann::json::parse(slurp(report_path));
        CHECK_NOTHROW(fwe::validate_stats_report(report));
        CHECK(report["style"] == "1035");
        CHECK(report["sample"]["seed"] == 7);
        CHECK(report["kumaraswamy"].contains("a"));
        CHECK(report["kumaraswamy"]["ks"].get<double>() < 0.2);
        CHECK(fs::exists(fs::path(out) / "stats_1035_dde_w4_exceedance.csv"));

        // deterministic: identical invocation, identical bytes
        const std::string bytes = slurp(report_path);
        const RunResult rerun = run_cli("stats --styles 1035 --single -w 4" + common +
                                        " --samples 20000 --seed 7 --kumaraswamy");
        CHECK(rerun.exit_code == 0);
        CHECK(slurp(report_path) == bytes);

        const RunResult cmp = run_cli("compare --styles 1035,3313 --single -w 4 --out " + out);
        CHECK(cmp.exit_code == 0);
        CHECK(cmp.output.find("1035") != std::string::npos);
        CHECK(cmp.output.find("DDE@3") != std::string::npos);
    }

    SUBCASE("compare wants at least two styles") {
        const RunResult r = run_cli("compare --styles 1035 --single -w 4 --out " + out);
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("stats without sweep data exits 4 with a hint") {
    TempDir tmp;
    const RunResult r =
        run_cli("stats --styles 1035 --single -w 4 --out " + tmp.str() + " " + kFast);
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("run `fwe sweep`") != std::string::npos);
}

TEST_CASE("stats on a constant synthetic profile gives a zero-width model") {
    TempDir tmp;
    std::ofstream(tmp.path / "sweep_1035_single_w4.csv")
        << "offset_mil,delay_ps_per_in,z0_ohm\n-12,140,70\n-11,140,70\n-10,140,70\n-9,140,70\n"
           "-8,140,70\n-7,140,70\n-6,140,70\n-5,140,70\n-4,140,70\n-3,140,70\n-2,140,70\n"
           "-1,140,70\n0,140,70\n1,140,70\n2,140,70\n3,140,70\n4,140,70\n5,140,70\n6,140,70\n"
           "7,140,70\n8,140,70\n9,140,70\n10,140,70\n11,140,70\n12,140,70\n";
    const RunResult r = run_cli("stats --styles 1035 --single -w 4 --out " + tmp.str() +
                                " --thresholds 0:2:1 --samples 5000");
    CHECK(r.exit_code == 0);
    const nlohmann::json report =
        nlohmann::json::parse(slurp(tmp.path / "stats_1035_dde_w4.json"));
    CHECK(report["delta_t_ps_per_in"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(report["empirical_exceedance"][1].get<double>() == 0.0);
    CHECK(report["empirical_exceedance"][2].get<double>() == 0.0);
}

TEST_CASE("kind mismatch between sweep data and stats flags") {
    TempDir tmp;
    const std::string common = " --out " + tmp.str() + " " + kFast;
    REQUIRE(run_cli("sweep --styles 1035 --diff -w 4 -s 4" + common).exit_code == 0);
    const RunResult r = run_cli("stats --styles 1035 --single -w 4" + common);
    CHECK(r.exit_code == 4);  // the single-ended CSV is absent
    const RunResult ok = run_cli("stats --styles 1035 --diff -w 4 -s 4" + common);
    CHECK(ok.exit_code == 0);
    const nlohmann::json report =
        nlohmann::json::parse(slurp(tmp.path / "stats_1035_dse_w4_s4.json"));
    CHECK(report["kind"] == "DSE");
}

TEST_CASE("raster dumps") {
    TempDir tmp;
    const std::string out = " --out " + tmp.str();

    const RunResult r = run_cli("raster --styles 1035 --slice-x 0 --grid 0.5" + out + " --svg");
    CHECK(r.exit_code == 0);
    const std::string text = slurp(tmp.path / "raster_1035_x0.txt");
    CHECK(text.find("6") != std::string::npos);
    CHECK(text.find("3.5") != std::string::npos);
    CHECK(text.find("1") != std::string::npos);
    CHECK(fs::exists(tmp.path / "raster_1035_x0.svg"));

    SUBCASE("one lattice period apart produces identical files") {
        REQUIRE(run_cli("raster --styles 1035 --slice-x 14 --grid 0.5" + out).exit_code == 0);
        CHECK(slurp(tmp.path / "raster_1035_x14.txt") == text);
    }

    SUBCASE("homogenized custom style collapses to one laminate value") {
        std::ofstream(tmp.path / "homog.ini")
            << "[flat]\nx1 = 0.8\nx2 = 9\nx3 = 14\ny1 = 0.8\ny2 = 12\ny3 = 14\n"
               "eps_glass = 3.5\neps_resin = 3.5\n";
        REQUIRE(run_cli("raster --styles flat --slice-x 0 --grid 0.5 --catalog " +
                        (tmp.path / "homog.ini").string() + out)
                    .exit_code == 0);
        const std::string flat = slurp(tmp.path / "raster_flat_x0.txt");
        CHECK(flat.find("3.5") != std::string::npos);
        CHECK(flat.find("6") == std::string::npos);
    }
}

TEST_CASE("config errors exit 2") {
    CHECK(run_cli("sweep --styles unknown_style --single").exit_code == 2);
    CHECK(run_cli("sweep --styles 1035 --no-such-flag").exit_code == 2);
    CHECK(run_cli("stats").exit_code == 2);  // no styles given
    CHECK(run_cli("").exit_code == 2);       // subcommand required
}

TEST_CASE("FWE_CACHE_DIR selects the cache location") {
    TempDir tmp;
    const std::string env_cache = tmp.str() + "/envcache";
    const std::string cmd = std::string("FWE_CACHE_DIR=") + env_cache + " " + FWE_CLI_PATH +
                            " sweep --styles 1035 --single -w 4 --out " + tmp.str() + " " +
                            kFast + " 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    REQUIRE(fs::exists(env_cache));
    bool has_entry = false;
    for (const auto& e : fs::directory_iterator(env_cache))
        has_entry = has_entry || e.path().extension() == ".csv";
    CHECK(has_entry);
}
