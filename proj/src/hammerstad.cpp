#include "fwe/hammerstad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwe {

namespace {

constexpr double kEta0 = 376.730313668;  // free-space impedance, ohm

double z01(double u) {
    const double f = 6.0 + (2.0 * std::numbers::pi - 6.0) *
                               std::exp(-std::pow(30.666 / u, 0.7528));
    return kEta0 / (2.0 * std::numbers::pi) *
           std::log(f / u + std::sqrt(1.0 + (2.0 / u) * (2.0 / u)));
}

double eps_eff0(double u, double eps_r) {
    const double u4 = u * u * u * u;
    const double a = 1.0 + std::log((u4 + (u / 52.0) * (u / 52.0)) / (u4 + 0.432)) / 49.0 +
                     std::log(1.0 + std::pow(u / 18.1, 3.0)) / 18.7;
    const double b = 0.564 * std::pow((eps_r - 0.9) / (eps_r + 3.0), 0.053);
    return (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * std::pow(1.0 + 10.0 / u, -a * b);
}

}  // namespace

MicrostripParams hammerstad_jensen(double u, double eps_r, double t_norm) {
    if (!(u > 0.0)) throw std::invalid_argument("hammerstad_jensen: w/h must be positive");
    if (!(eps_r >= 1.0)) throw std::invalid_argument("hammerstad_jensen: eps_r must be >= 1");
    if (t_norm < 0.0) throw std::invalid_argument("hammerstad_jensen: t/h must be >= 0");

    double u1 = u, ur = u;
    if (t_norm > 0.0) {
        const double coth = 1.0 / std::tanh(std::sqrt(6.517 * u));
        const double dw1 = t_norm / std::numbers::pi *
                           std::log(1.0 + 4.0 * std::numbers::e / (t_norm * coth * coth));
        const double dwr = 0.5 * dw1 * (1.0 + 1.0 / std::cosh(std::sqrt(eps_r - 1.0)));
        u1 = u + dw1;
        ur = u + dwr;
    }
    MicrostripParams p;
    const double ee_r = eps_eff0(ur, eps_r);
    const double zr = z01(ur);
    p.eps_eff = ee_r * (z01(u1) / zr) * (z01(u1) / zr);
    p.z0_ohm = zr / std::sqrt(ee_r);
    return p;
}

}  // namespace fwe
