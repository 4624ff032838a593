#include "fwe/validate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "fwe/constants.hpp"
#include "fwe/fieldsolver.hpp"
#include "fwe/hammerstad.hpp"

namespace fwe {

namespace {

struct MicrostripResult {
    double eps_eff = 0.0;
    double z0 = 0.0;
    double delay = 0.0;
};

constexpr double kValidationStripThickness = 0.5;  // mil, fixed across grids

// Uniform-dielectric microstrip solved on a trace-centered box with the
// ground wall below and insulating walls 10h away laterally and above.
MicrostripResult solve_uniform_microstrip(double w_over_h, double eps_r, double grid_mil) {
    const double h = 4.0;  // mil; pure scaling otherwise
    const double w = w_over_h * h;
    const double d = grid_mil;
    const int jh = std::max(1, static_cast<int>(std::lround(h / d)));
    const int jt = std::max(1, static_cast<int>(std::lround(kValidationStripThickness / d)));
    const int half_w = std::max(1, static_cast<int>(std::lround(w / 2.0 / d)));
    const int margin = static_cast<int>(std::lround(10.0 * h / d));

    Grid2D grid;
    grid.ny = 2 * (half_w + margin);
    grid.nz = jh + static_cast<int>(std::lround(10.0 * h / d));
    grid.dy = d;
    grid.dz = d;
    grid.y0 = -(half_w + margin) * d;
    grid.z0 = 0.0;

    DielectricRaster loaded(grid, 1.0);
    std::vector<double> eps(static_cast<size_t>(grid.cells()), 1.0);
    for (int j = 0; j < jh; ++j)
        for (int i = 0; i < grid.ny; ++i) eps[grid.index(i, j)] = eps_r;
    loaded.fill_eps(eps);
    loaded.add_conductor_rect("trace", margin, margin + 2 * half_w, jh, jh + jt);

    DielectricRaster vacuum(grid, 1.0);
    vacuum.add_conductor_rect("trace", margin, margin + 2 * half_w, jh, jh + jt);

    const FieldSolution sol_c0 = solve_laplace(vacuum, {{"trace", 1.0}});
    // the vacuum field is a good starting guess for the loaded solve
    const FieldSolution sol_c = solve_laplace(loaded, {{"trace", 1.0}}, 1e-8, 0, &sol_c0);
    const double c = capacitance(sol_c, loaded, "trace");
    const double c0 = capacitance(sol_c0, vacuum, "trace");
    const LineParams lp = effective_params(c, c0);
    return MicrostripResult{lp.eps_eff, lp.z0_ohm, lp.delay_ps_per_in};
}

ValidationCase make_case(const std::string& name, double measured, double expected,
                         double tolerance) {
    ValidationCase c;
    c.name = name;
    c.measured = measured;
    c.expected = expected;
    c.rel_error = expected != 0.0 ? std::abs(measured - expected) / std::abs(expected)
                                  : std::abs(measured);
    c.tolerance = tolerance;
    c.pass = c.rel_error <= tolerance;
    return c;
}

}  // namespace

std::vector<ValidationCase> run_validation_suite(const ValidationOptions& options) {
    std::vector<ValidationCase> cases;

    // parallel plate: full-width sheet over the ground wall, uniform eps
    if (options.parallel_plate) {
        const double eps_r = 4.0;
        Grid2D grid;
        grid.ny = 64;
        grid.nz = 48;
        grid.dy = 0.25;
        grid.dz = 0.25;
        grid.y0 = 0.0;
        grid.z0 = 0.0;
        const int jh = 32;
        DielectricRaster raster(grid, eps_r);
        raster.add_conductor_rect("plate", 0, grid.ny, jh, jh + 2);
        const FieldSolution sol = solve_laplace(raster, {{"plate", 1.0}});
        const double c = capacitance(sol, raster, "plate");
        const double b = grid.ny * grid.dy;
        const double gap = jh * grid.dz;
        const double expected = kEps0 * eps_r * b / gap;
        cases.push_back(make_case("parallel plate C", c, expected, 0.005));
    }

    // Hammerstad-Jensen microstrip grid
    if (options.microstrip) {
        const double ratios[] = {0.5, 1.0, 2.0};
        const double perms[] = {2.2, 4.0, 6.0};
        struct Job {
            double u, er;
            MicrostripResult got;
        };
        std::vector<Job> jobs;
        for (double u : ratios)
            for (double er : perms) jobs.push_back({u, er, {}});

        unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
        threads = static_cast<unsigned>(std::min<size_t>(threads, jobs.size()));
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
                    jobs[i].got = solve_uniform_microstrip(jobs[i].u, jobs[i].er, options.grid_mil);
            });
        for (auto& th : pool) th.join();

        const double t_norm = kValidationStripThickness / 4.0;
        for (const Job& job : jobs) {
            const MicrostripParams hj = hammerstad_jensen(job.u, job.er, t_norm);
            char name[96];
            std::snprintf(name, sizeof name, "microstrip w/h=%.1f er=%.1f eps_eff", job.u, job.er);
            cases.push_back(make_case(name, job.got.eps_eff, hj.eps_eff, 0.03));
            std::snprintf(name, sizeof name, "microstrip w/h=%.1f er=%.1f z0", job.u, job.er);
            cases.push_back(make_case(name, job.got.z0, hj.z0_ohm, 0.05));
        }
    }

    if (options.grid_convergence) {
        const MicrostripResult coarse = solve_uniform_microstrip(1.0, 4.0, options.grid_mil * 2.0);
        const MicrostripResult fine = solve_uniform_microstrip(1.0, 4.0, options.grid_mil);
        const double shift = std::abs(coarse.delay - fine.delay) / fine.delay;
        cases.push_back(make_case("microstrip delay grid-halving shift", shift, 0.0, 0.005));
    }

    return cases;
}

}  // namespace fwe
