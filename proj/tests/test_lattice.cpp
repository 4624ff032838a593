#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fwe/lattice.hpp"
#include "fwe/stats.hpp"

using namespace fwe;

namespace {

LatticeModel style_1035() {
    return make_lattice(FabricStyle{"1035", 0.8, 9.0, 14.0, 0.8, 12.0, 14.0}, Laminate{});
}

// Independent estimate of the glass fraction: count eps_glass hits on a
// 512^3 voxel raster of one unit cell using only the public point query.
double voxel_glass_fraction(const LatticeModel& model, int n = 512) {
    const FabricStyle& s = model.style();
    const double h = model.laminate().h;
    long glass = 0;
    for (int k = 0; k < n; ++k) {
        const double z = (k + 0.5) * h / n;
        for (int j = 0; j < n; ++j) {
            const double y = (j + 0.5) * s.y3 / n;
            for (int i = 0; i < n; ++i) {
                const double x = (i + 0.5) * s.x3 / n;
                if (model.eps_at(x, y, z) == model.laminate().eps_glass) ++glass;
            }
        }
    }
    return static_cast<double>(glass) / (static_cast<double>(n) * n * n);
}

}  // namespace

TEST_CASE("table styles build valid models") {
    for (const auto& entry : builtin_catalog()) {
        CHECK_NOTHROW(make_lattice(entry.style, entry.laminate));
    }
}

TEST_CASE("make_lattice rejects invalid geometry") {
    Laminate lam{};
    CHECK_THROWS_WITH_AS(make_lattice(FabricStyle{"bad", 0.8, 15.0, 14.0, 0.8, 12.0, 14.0}, lam),
                         doctest::Contains("bundle exceeds pitch"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_lattice(FabricStyle{"bad", 2.5, 9.0, 14.0, 2.5, 12.0, 14.0}, lam),
                         doctest::Contains("layers exceed laminate height"), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(FabricStyle{"bad", 0.8, 9.0, 14.0, 0.9, 12.0, 14.0}, lam),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(FabricStyle{"bad", 0.8, 0.0, 14.0, 0.8, 12.0, 14.0}, lam),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(FabricStyle{"1035", 0.8, 9.0, 14.0, 0.8, 12.0, 14.0},
                                 Laminate{4.0, 0.75, 3.0, 3.5}),
                    std::invalid_argument);
}

TEST_CASE("eps_at hits the three material values") {
    const LatticeModel model = style_1035();
    // resin valley: x between bundle columns, y between bundle rows
    CHECK(model.eps_at(7.0, 7.0, 2.0) == 3.5);
    // air above the laminate
    CHECK(model.eps_at(0.0, 0.0, 5.0) == 1.0);
    // glass hill: both bundles present, query the lower layer
    CHECK(model.eps_at(0.0, 0.0, 1.7) == 6.0);
    // and the upper layer
    CHECK(model.eps_at(0.0, 0.0, 2.3) == 6.0);
}

TEST_CASE("periodicity holds exactly at random points") {
    const LatticeModel model = style_1035();
    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = (rng.next_unit() - 0.5) * 40.0;
        const double y = (rng.next_unit() - 0.5) * 40.0;
        const double z = rng.next_unit() * 5.0;
        const int k = static_cast<int>(rng.next() % 7) - 3;
        const int m = static_cast<int>(rng.next() % 7) - 3;
        CHECK(model.eps_at(x, y, z) == model.eps_at(x + k * 14.0, y + m * 14.0, z));
    }
}

TEST_CASE("mirror symmetry about y = 0 for all builtin styles") {
    for (const auto& entry : builtin_catalog()) {
        const LatticeModel model = make_lattice(entry.style, entry.laminate);
        SplitMix64 rng(11);
        for (int trial = 0; trial < 100; ++trial) {
            const double x = (rng.next_unit() - 0.5) * 50.0;
            const double y = (rng.next_unit() - 0.5) * 50.0;
            const double z = rng.next_unit() * entry.laminate.h;
            CHECK(model.eps_at(x, y, z) == model.eps_at(x, -y, z));
        }
    }
}

TEST_CASE("stratification: laminate values only inside, exactly 1 above") {
    const LatticeModel model = style_1035();
    SplitMix64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = (rng.next_unit() - 0.5) * 30.0;
        const double y = (rng.next_unit() - 0.5) * 30.0;
        const double inside = model.eps_at(x, y, rng.next_unit() * 4.0);
        CHECK((inside == 3.5 || inside == 6.0));
        CHECK(model.eps_at(x, y, 4.0 + rng.next_unit() * 10.0 + 1e-9) == 1.0);
    }
}

TEST_CASE("glass fraction closed form") {
    const LatticeModel model = style_1035();
    CHECK(model.glass_fraction() == doctest::Approx(0.30).epsilon(1e-12));

    // fully glass layers degenerate to 2*x1/h
    const LatticeModel solid =
        make_lattice(FabricStyle{"solid", 0.8, 14.0, 14.0, 0.8, 14.0, 14.0}, Laminate{});
    CHECK(solid.glass_fraction() == doctest::Approx(2.0 * 0.8 / 4.0).epsilon(1e-12));
}

TEST_CASE("glass fraction matches 512^3 voxel count within 1%") {
    for (const auto& entry : builtin_catalog()) {
        const LatticeModel model = make_lattice(entry.style, entry.laminate);
        const double voxel = voxel_glass_fraction(model);
        CHECK(std::abs(model.glass_fraction() - voxel) / voxel < 0.01);
    }
}

TEST_CASE("raster_slice samples cell centers") {
    Grid2D grid;
    grid.ny = 56;
    grid.nz = 24;
    grid.dy = 0.5;
    grid.dz = 0.25;
    grid.y0 = -14.0;
    grid.z0 = 0.0;

    SUBCASE("homogenized model fills laminate and air uniformly") {
        const LatticeModel homog =
            make_lattice(FabricStyle{"1035", 0.8, 9.0, 14.0, 0.8, 12.0, 14.0},
                         Laminate{4.0, 0.75, 3.5, 3.5});
        const DielectricRaster raster = raster_slice(homog, 3.0, grid);
        for (int j = 0; j < grid.nz; ++j)
            for (int i = 0; i < grid.ny; ++i)
                CHECK(raster.eps_at_cell(i, j) == (grid.cell_z(j) > 4.0 ? 1.0 : 3.5));
    }

    SUBCASE("periodic slices are identical") {
        const LatticeModel model = style_1035();
        const DielectricRaster a = raster_slice(model, 3.25, grid);
        const DielectricRaster b = raster_slice(model, 3.25 + 14.0, grid);
        CHECK(a.eps() == b.eps());
    }

    SUBCASE("slice through a Y-running bundle column shows glass in the lower layer") {
        const LatticeModel model = style_1035();
        const DielectricRaster raster = raster_slice(model, 0.0, grid);
        int glass_cells = 0;
        for (int j = 0; j < grid.nz; ++j)
            for (int i = 0; i < grid.ny; ++i) {
                CHECK(raster.eps_at_cell(i, j) ==
                      model.eps_at(0.0, grid.cell_y(i), grid.cell_z(j)));
                if (grid.cell_z(j) < 2.0 && raster.eps_at_cell(i, j) == 6.0) ++glass_cells;
            }
        CHECK(glass_cells > 0);
    }

    SUBCASE("non-positive spacing is rejected") {
        Grid2D bad = grid;
        bad.dy = 0.0;
        CHECK_THROWS_AS(raster_slice(style_1035(), 0.0, bad), std::invalid_argument);
    }
}

TEST_CASE("text matrix contains exactly the lattice permittivities") {
    Grid2D grid;
    grid.ny = 28;
    grid.nz = 12;
    grid.dy = 1.0;
    grid.dz = 0.5;
    grid.y0 = -14.0;
    grid.z0 = 0.0;
    const DielectricRaster raster = raster_slice(style_1035(), 0.0, grid);
    const std::string text = to_text_matrix(raster);
    std::set<std::string> seen;
    std::string token;
    for (char c : text) {
        if (c == ',' || c == '\n') {
            seen.insert(token);
            token.clear();
        } else {
            token += c;
        }
    }
    CHECK(seen == std::set<std::string>{"1", "3.5", "6"});
}

TEST_CASE("shipped catalog matches the builtin styles") {
    const auto shipped = load_catalog(std::string(FWE_DATA_DIR) + "/fabrics.ini");
    const auto builtin = builtin_catalog();
    REQUIRE(shipped.size() == builtin.size());
    for (size_t i = 0; i < shipped.size(); ++i) {
        CHECK(shipped[i].style.name == builtin[i].style.name);
        CHECK(shipped[i].style.x1 == builtin[i].style.x1);
        CHECK(shipped[i].style.x2 == builtin[i].style.x2);
        CHECK(shipped[i].style.x3 == builtin[i].style.x3);
        CHECK(shipped[i].style.y2 == builtin[i].style.y2);
        CHECK(shipped[i].style.y3 == builtin[i].style.y3);
        CHECK(shipped[i].laminate.h == 4.0);
        CHECK(shipped[i].laminate.eps_glass == 6.0);
    }
}

TEST_CASE("catalog parsing") {
    SUBCASE("builtin has the four styles") {
        const auto entries = builtin_catalog();
        REQUIRE(entries.size() == 4);
        CHECK(entries[0].style.name == "1035");
        CHECK(entries[1].style.name == "1080");
        CHECK(entries[1].style.x1 == 1.35);
        CHECK(entries[1].style.y3 == 22.0);
        CHECK(entries[2].style.name == "1078");
        CHECK(entries[3].style.name == "3313");
        CHECK(entries[3].style.x1 == 1.7);
    }

    SUBCASE("round trip with laminate override") {
        const std::string text =
            "# custom deck\n"
            "[thin]\n"
            "x1 = 0.5\nx2 = 7\nx3 = 12\ny1 = 0.5\ny2 = 9\ny3 = 13\n"
            "h = 3\nt = 0.6\neps_glass = 5.8\neps_resin = 3.2\n";
        const auto entries = parse_catalog(text);
        REQUIRE(entries.size() == 1);
        CHECK(entries[0].style.name == "thin");
        CHECK(entries[0].laminate.h == 3.0);
        CHECK(entries[0].laminate.eps_resin == 3.2);
    }

    SUBCASE("empty catalog is fine") { CHECK(parse_catalog("# nothing\n").empty()); }

    SUBCASE("invalid row reports its line") {
        const std::string text = "[bad]\nx1 = 0.8\nx2 = 15\nx3 = 14\ny1 = 0.8\ny2 = 12\ny3 = 14\n";
        try {
            parse_catalog(text);
            FAIL("expected CatalogError");
        } catch (const CatalogError& e) {
            CHECK(e.line() == 1);
            CHECK(std::string(e.what()).find("bundle exceeds pitch") != std::string::npos);
        }
    }

    SUBCASE("malformed number reports its line") {
        try {
            parse_catalog("[a]\nx1 = fast\n");
            FAIL("expected CatalogError");
        } catch (const CatalogError& e) {
            CHECK(e.line() == 2);
        }
    }
}
