#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwe/raster.hpp"

namespace fwe {

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, double residual, long iterations)
        : std::runtime_error(msg), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    long iterations() const { return iterations_; }

private:
    double residual_;
    long iterations_;
};

struct FieldSolution {
    std::vector<double> potential;  // per cell; conductor cells at their excitation
    double residual = 0.0;          // final relative residual
    long iterations = 0;
};

/// Solves div(eps grad phi) = 0 on the raster with conductors and the bottom
/// boundary (ground plane) as Dirichlet surfaces and insulating left/right/top
/// walls. Cell-centered 5-point scheme; shared-edge permittivities are
/// harmonic means of adjacent cell values, with metal treated as infinite
/// (clamping the potential on the conductor face). Preconditioned conjugate
/// gradients; converged when the relative residual drops below tol.
/// max_iter <= 0 selects the default 200 * max(ny, nz). An optional warm
/// start seeds the iteration from a previous solution on the same grid.
FieldSolution solve_laplace(const DielectricRaster& raster,
                            const std::map<std::string, double>& excitation,
                            double tol = 1e-8, long max_iter = 0,
                            const FieldSolution* warm_start = nullptr);

/// Per-unit-length capacitance from the discrete field energy, C = 2 W / V^2.
/// The solution must have been computed with `conductor` at 1 V and all other
/// conductors at 0 V.
double capacitance(const FieldSolution& solution, const DielectricRaster& raster,
                   const std::string& conductor);

/// Per-unit-length free charge on a conductor from the flux through its
/// surface (Gauss), usable as a cross-check against the energy route.
double charge_on_conductor(const FieldSolution& solution, const DielectricRaster& raster,
                           const std::string& conductor);

struct CapacitanceMatrix {
    double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;  // F/m, Maxwell form
};

/// 2x2 Maxwell capacitance matrix of a two-conductor raster; column j comes
/// from exciting conductor j at 1 V with the other grounded.
CapacitanceMatrix capacitance_matrix(const DielectricRaster& raster, double tol = 1e-10,
                                     long max_iter = 0);

struct LineParams {
    double c = 0.0;       // F/m with dielectric
    double c0 = 0.0;      // F/m with vacuum dielectric
    double eps_eff = 1.0;
    double delay_ps_per_in = 0.0;
    double z0_ohm = 0.0;
};

/// Line parameters from loaded and vacuum capacitance: eps_eff = c/c0,
/// delay = sqrt(eps_eff) * inch/c_light, z0 = 1/(c_light * sqrt(c * c0)).
LineParams effective_params(double c, double c0);

}  // namespace fwe
