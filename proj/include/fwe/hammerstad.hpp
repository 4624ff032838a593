#pragma once

namespace fwe {

struct MicrostripParams {
    double eps_eff = 1.0;
    double z0_ohm = 0.0;
};

/// Closed-form effective permittivity and characteristic impedance of a
/// microstrip from the Hammerstad-Jensen model. u = w/h; t_norm = t/h adds
/// the strip-thickness correction when positive. Accuracy of the published
/// model is a fraction of a percent over 0.01 <= u <= 100.
MicrostripParams hammerstad_jensen(double u, double eps_r, double t_norm = 0.0);

}  // namespace fwe
