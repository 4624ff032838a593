#include "fwe/fieldsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fwe/constants.hpp"

namespace fwe {

namespace {

// Physical edge coefficients of the cell-centered 5-point scheme. Values are
// dimensionless geometry*permittivity factors such that C contributions are
// eps0 * k * (dphi)^2 terms. Metal counts as infinite permittivity, which
// pins the Dirichlet value to the shared cell face; edges between two metal
// cells carry no dielectric flux and get k = 0.
struct EdgeCoefficients {
    int ny = 0, nz = 0;
    std::vector<double> kx;    // (ny-1)*nz, between (i,j) and (i+1,j)
    std::vector<double> kz;    // ny*(nz-1), between (i,j) and (i,j+1)
    std::vector<double> kbot;  // ny, between (i,0) and the ground wall
};

double edge_k(double eps_a, bool metal_a, double eps_b, bool metal_b, double ratio) {
    if (metal_a && metal_b) return 0.0;
    if (metal_a) return 2.0 * eps_b * ratio;
    if (metal_b) return 2.0 * eps_a * ratio;
    return 2.0 * eps_a * eps_b / (eps_a + eps_b) * ratio;
}

EdgeCoefficients edge_coefficients(const DielectricRaster& raster) {
    const Grid2D& g = raster.grid();
    const std::vector<int>& cond = raster.conductor_of();
    EdgeCoefficients e;
    e.ny = g.ny;
    e.nz = g.nz;
    e.kx.resize(static_cast<size_t>(g.ny - 1) * g.nz);
    e.kz.resize(static_cast<size_t>(g.ny) * (g.nz - 1));
    e.kbot.resize(static_cast<size_t>(g.ny));
    auto eps = [&](int c) { return raster.eps()[c]; };
    const double rx = g.dz / g.dy;
    const double rz = g.dy / g.dz;
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i + 1 < g.ny; ++i) {
            const int a = g.index(i, j), b = g.index(i + 1, j);
            e.kx[static_cast<size_t>(j) * (g.ny - 1) + i] =
                edge_k(eps(a), cond[a] >= 0, eps(b), cond[b] >= 0, rx);
        }
    }
    for (int j = 0; j + 1 < g.nz; ++j) {
        for (int i = 0; i < g.ny; ++i) {
            const int a = g.index(i, j), b = g.index(i, j + 1);
            e.kz[static_cast<size_t>(j) * g.ny + i] =
                edge_k(eps(a), cond[a] >= 0, eps(b), cond[b] >= 0, rz);
        }
    }
    for (int i = 0; i < g.ny; ++i) {
        const int a = g.index(i, 0);
        // ground wall sits on the cell face; metal-on-ground carries no flux
        e.kbot[i] = (cond[a] >= 0) ? 0.0 : 2.0 * eps(a) * rz;
    }
    return e;
}

// Padded working arrays: stride ny+2, one halo ring of zeros, so sweeps can
// read all four neighbours unconditionally.
struct System {
    int ny = 0, nz = 0, stride = 0;
    size_t padded = 0;
    std::vector<double> kw, ke, ks, kn, diag, invdiag, b;
    std::vector<char> free_cell;
    size_t pidx(int i, int j) const {
        return static_cast<size_t>(j + 1) * stride + (i + 1);
    }
};

System assemble(const DielectricRaster& raster, const EdgeCoefficients& e,
                const std::map<std::string, double>& excitation) {
    const Grid2D& g = raster.grid();
    const std::vector<int>& cond = raster.conductor_of();

    std::vector<double> volts(raster.conductors().size(), 0.0);
    for (size_t c = 0; c < raster.conductors().size(); ++c) {
        auto it = excitation.find(raster.conductors()[c].id);
        if (it != excitation.end()) volts[c] = it->second;
    }
    for (const auto& [id, v] : excitation) {
        (void)v;
        raster.conductor(id);  // throws on unknown id
    }

    System s;
    s.ny = g.ny;
    s.nz = g.nz;
    s.stride = g.ny + 2;
    s.padded = static_cast<size_t>(g.ny + 2) * (g.nz + 2);
    s.kw.assign(s.padded, 0.0);
    s.ke.assign(s.padded, 0.0);
    s.ks.assign(s.padded, 0.0);
    s.kn.assign(s.padded, 0.0);
    s.diag.assign(s.padded, 1.0);
    s.invdiag.assign(s.padded, 1.0);
    s.b.assign(s.padded, 0.0);
    s.free_cell.assign(s.padded, 0);

    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.ny; ++i) {
            const int c = g.index(i, j);
            if (cond[c] >= 0) continue;
            const size_t p = s.pidx(i, j);
            s.free_cell[p] = 1;
            double d = 0.0, rhs = 0.0;
            auto couple = [&](double k, int ni, int nj, double& kslot) {
                if (k == 0.0) return;
                d += k;
                const int nc = g.index(ni, nj);
                if (cond[nc] >= 0)
                    rhs += k * volts[cond[nc]];
                else
                    kslot = k;
            };
            if (i > 0) couple(e.kx[static_cast<size_t>(j) * (g.ny - 1) + i - 1], i - 1, j, s.kw[p]);
            if (i + 1 < g.ny) couple(e.kx[static_cast<size_t>(j) * (g.ny - 1) + i], i + 1, j, s.ke[p]);
            if (j > 0) couple(e.kz[static_cast<size_t>(j - 1) * g.ny + i], i, j - 1, s.ks[p]);
            if (j + 1 < g.nz) couple(e.kz[static_cast<size_t>(j) * g.ny + i], i, j + 1, s.kn[p]);
            if (j == 0) d += e.kbot[i];  // ground wall at 0 V adds no rhs
            s.diag[p] = d;
            s.invdiag[p] = 1.0 / d;
            s.b[p] = rhs;
        }
    }
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void matvec(const System& s, const std::vector<double>& x, std::vector<double>& y) {
    const int stride = s.stride;
    for (int j = 0; j < s.nz; ++j) {
        const size_t row = s.pidx(0, j);
        const double* xp = x.data() + row;
        double* yp = y.data() + row;
        const double* kw = s.kw.data() + row;
        const double* ke = s.ke.data() + row;
        const double* ks = s.ks.data() + row;
        const double* kn = s.kn.data() + row;
        const double* dg = s.diag.data() + row;
        const char* fr = s.free_cell.data() + row;
        for (int i = 0; i < s.ny; ++i) {
            yp[i] = fr[i] ? dg[i] * xp[i] - kw[i] * xp[i - 1] - ke[i] * xp[i + 1] -
                                ks[i] * xp[i - stride] - kn[i] * xp[i + stride]
                          : 0.0;
        }
    }
}

// z = M^-1 r with M the SSOR splitting (D - wE) D^-1 (D - wF), constant
// scale dropped. Fixed row-major forward and reverse sweeps keep results
// bitwise reproducible.
void ssor_apply(const System& s, double omega, const std::vector<double>& r,
                std::vector<double>& z, std::vector<double>& work) {
    const int stride = s.stride;
    for (int j = 0; j < s.nz; ++j) {
        const size_t row = s.pidx(0, j);
        double* v = work.data() + row;
        const double* rp = r.data() + row;
        const double* kw = s.kw.data() + row;
        const double* ks = s.ks.data() + row;
        const double* inv = s.invdiag.data() + row;
        const char* fr = s.free_cell.data() + row;
        for (int i = 0; i < s.ny; ++i)
            v[i] = fr[i] ? (rp[i] + omega * (kw[i] * v[i - 1] + ks[i] * v[i - stride])) * inv[i]
                         : 0.0;
    }
    for (int j = s.nz - 1; j >= 0; --j) {
        const size_t row = s.pidx(0, j);
        double* zp = z.data() + row;
        const double* v = work.data() + row;
        const double* ke = s.ke.data() + row;
        const double* kn = s.kn.data() + row;
        const double* dg = s.diag.data() + row;
        const double* inv = s.invdiag.data() + row;
        const char* fr = s.free_cell.data() + row;
        for (int i = s.ny - 1; i >= 0; --i)
            zp[i] = fr[i] ? (dg[i] * v[i] + omega * (ke[i] * zp[i + 1] + kn[i] * zp[i + stride])) *
                                inv[i]
                          : 0.0;
    }
}

constexpr double kSsorOmega = 1.9;

}  // namespace

FieldSolution solve_laplace(const DielectricRaster& raster,
                            const std::map<std::string, double>& excitation, double tol,
                            long max_iter, const FieldSolution* warm_start) {
    const Grid2D& g = raster.grid();
    g.validate();
    if (raster.conductors().empty())
        throw std::invalid_argument("solve_laplace: raster has no conductors");
    if (!(tol > 0.0) || tol > 1e-3)
        throw std::invalid_argument("solve_laplace: tol must be in (0, 1e-3]");
    if (max_iter <= 0) max_iter = 200L * std::max(g.ny, g.nz);

    const EdgeCoefficients edges = edge_coefficients(raster);
    const System s = assemble(raster, edges, excitation);

    std::vector<double> x(s.padded, 0.0), r(s.padded, 0.0), z(s.padded, 0.0), p(s.padded, 0.0),
        q(s.padded, 0.0), work(s.padded, 0.0);

    if (warm_start && warm_start->potential.size() == static_cast<size_t>(g.cells())) {
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.ny; ++i) {
                const size_t p_idx = s.pidx(i, j);
                if (s.free_cell[p_idx]) x[p_idx] = warm_start->potential[g.index(i, j)];
            }
    }

    const double bnorm = std::sqrt(dot(s.b, s.b));
    FieldSolution out;
    long iterations = 0;
    double rel_residual = 0.0;

    if (bnorm > 0.0) {
        matvec(s, x, q);
        for (size_t i = 0; i < s.padded; ++i) r[i] = s.b[i] - q[i];
        bool converged = false;
        while (!converged && iterations < max_iter) {
            ssor_apply(s, kSsorOmega, r, z, work);
            double rho = dot(r, z);
            p = z;
            // inner PCG run; restarted with the true residual if drift shows
            while (iterations < max_iter) {
                matvec(s, p, q);
                const double alpha = rho / dot(p, q);
                for (size_t i = 0; i < s.padded; ++i) x[i] += alpha * p[i];
                for (size_t i = 0; i < s.padded; ++i) r[i] -= alpha * q[i];
                ++iterations;
                if (std::sqrt(dot(r, r)) <= tol * bnorm) break;
                ssor_apply(s, kSsorOmega, r, z, work);
                const double rho_new = dot(r, z);
                const double beta = rho_new / rho;
                rho = rho_new;
                for (size_t i = 0; i < s.padded; ++i) p[i] = z[i] + beta * p[i];
            }
            matvec(s, x, q);
            for (size_t i = 0; i < s.padded; ++i) r[i] = s.b[i] - q[i];
            converged = std::sqrt(dot(r, r)) <= tol * bnorm;
        }
        rel_residual = std::sqrt(dot(r, r)) / bnorm;
        if (!converged) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "solve_laplace: no convergence after %ld iterations (residual %.3e)",
                          iterations, rel_residual);
            throw SolverError(msg, rel_residual, iterations);
        }
    }

    out.potential.assign(static_cast<size_t>(g.cells()), 0.0);
    std::vector<double> volts(raster.conductors().size(), 0.0);
    for (size_t c = 0; c < raster.conductors().size(); ++c) {
        auto it = excitation.find(raster.conductors()[c].id);
        if (it != excitation.end()) volts[c] = it->second;
    }
    const std::vector<int>& cond = raster.conductor_of();
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.ny; ++i) {
            const int c = g.index(i, j);
            out.potential[c] = cond[c] >= 0 ? volts[cond[c]] : x[s.pidx(i, j)];
        }
    out.residual = rel_residual;
    out.iterations = iterations;
    return out;
}

namespace {

void check_solution(const FieldSolution& solution, const DielectricRaster& raster) {
    if (solution.potential.size() != static_cast<size_t>(raster.grid().cells()))
        throw std::invalid_argument("field solution does not match raster");
}

}  // namespace

double capacitance(const FieldSolution& solution, const DielectricRaster& raster,
                   const std::string& conductor) {
    check_solution(solution, raster);
    raster.conductor(conductor);
    const Grid2D& g = raster.grid();
    const EdgeCoefficients e = edge_coefficients(raster);
    const std::vector<double>& phi = solution.potential;
    double energy2 = 0.0;  // 2 * W / eps0
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i + 1 < g.ny; ++i) {
            const double d = phi[g.index(i, j)] - phi[g.index(i + 1, j)];
            energy2 += e.kx[static_cast<size_t>(j) * (g.ny - 1) + i] * d * d;
        }
    for (int j = 0; j + 1 < g.nz; ++j)
        for (int i = 0; i < g.ny; ++i) {
            const double d = phi[g.index(i, j)] - phi[g.index(i, j + 1)];
            energy2 += e.kz[static_cast<size_t>(j) * g.ny + i] * d * d;
        }
    for (int i = 0; i < g.ny; ++i) {
        const double d = phi[g.index(i, 0)];
        energy2 += e.kbot[i] * d * d;
    }
    return kEps0 * energy2;  // C = 2 W / V^2 with V = 1
}

double charge_on_conductor(const FieldSolution& solution, const DielectricRaster& raster,
                           const std::string& conductor) {
    check_solution(solution, raster);
    const Grid2D& g = raster.grid();
    const std::vector<int>& cond = raster.conductor_of();
    int target = -1;
    for (size_t c = 0; c < raster.conductors().size(); ++c)
        if (raster.conductors()[c].id == conductor) target = static_cast<int>(c);
    if (target < 0) throw std::invalid_argument("charge_on_conductor: no conductor '" + conductor + "'");

    const EdgeCoefficients e = edge_coefficients(raster);
    const std::vector<double>& phi = solution.potential;
    double flux = 0.0;
    auto accumulate = [&](int ca, int cb, double k) {
        const bool a_in = cond[ca] == target, b_in = cond[cb] == target;
        if (a_in == b_in) return;
        const double from = a_in ? phi[ca] : phi[cb];
        const double to = a_in ? phi[cb] : phi[ca];
        flux += k * (from - to);
    };
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i + 1 < g.ny; ++i)
            accumulate(g.index(i, j), g.index(i + 1, j),
                       e.kx[static_cast<size_t>(j) * (g.ny - 1) + i]);
    for (int j = 0; j + 1 < g.nz; ++j)
        for (int i = 0; i < g.ny; ++i)
            accumulate(g.index(i, j), g.index(i, j + 1), e.kz[static_cast<size_t>(j) * g.ny + i]);
    return kEps0 * flux;
}

CapacitanceMatrix capacitance_matrix(const DielectricRaster& raster, double tol, long max_iter) {
    if (raster.conductors().size() != 2)
        throw std::invalid_argument("capacitance_matrix: raster must have exactly 2 conductors");
    const std::string id0 = raster.conductors()[0].id;
    const std::string id1 = raster.conductors()[1].id;
    CapacitanceMatrix m;
    FieldSolution col0 = solve_laplace(raster, {{id0, 1.0}, {id1, 0.0}}, tol, max_iter);
    m.c11 = charge_on_conductor(col0, raster, id0);
    m.c21 = charge_on_conductor(col0, raster, id1);
    FieldSolution col1 = solve_laplace(raster, {{id0, 0.0}, {id1, 1.0}}, tol, max_iter);
    m.c12 = charge_on_conductor(col1, raster, id0);
    m.c22 = charge_on_conductor(col1, raster, id1);
    return m;
}

LineParams effective_params(double c, double c0) {
    if (!(c0 > 0.0))
        throw std::invalid_argument("effective_params: c0 must be positive");
    if (c < c0)
        throw std::runtime_error("effective_params: c < c0, solver inconsistency");
    LineParams p;
    p.c = c;
    p.c0 = c0;
    p.eps_eff = c / c0;
    p.delay_ps_per_in = std::sqrt(p.eps_eff) * kVacuumDelayPsPerInch;
    p.z0_ohm = 1.0 / (kSpeedOfLight * std::sqrt(c * c0));
    return p;
}

}  // namespace fwe
