#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fwe/sweep.hpp"

namespace fwe {

/// Deterministic 64-bit generator (splitmix64). Uniform doubles are built
/// from the top 53 bits so sequences are identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next();
    double next_unit();  // [0, 1)

private:
    uint64_t state_;
};

/// Periodic cubic interpolation of a sampled profile over one lattice
/// period. Knots are folded into [0, L), duplicates averaged; the spline is
/// C2 across the seam and its period mean comes from exact integration of
/// the cubic pieces.
class PeriodicSpline {
public:
    /// Throws std::invalid_argument with fewer than 4 distinct folded knots
    /// or when the folded knots leave a cyclic gap wider than L/3.
    static PeriodicSpline fit(std::span<const double> positions, std::span<const double> values,
                              double period);

    double operator()(double x) const;  // evaluated modulo the period
    double period() const { return period_; }
    double mean() const { return mean_; }
    size_t knot_count() const { return knots_.size(); }

    struct Extrema {
        double min_value = 0.0;
        double max_value = 0.0;
        double argmin = 0.0;
        double argmax = 0.0;
    };
    /// Exact spline extrema from the critical points of every cubic piece.
    Extrema extrema() const;

private:
    double period_ = 0.0;
    double mean_ = 0.0;
    std::vector<double> knots_;   // ascending in [0, L)
    std::vector<double> values_;
    std::vector<double> second_;  // second derivative at knots
    double piece(double x, size_t i) const;
};

PeriodicSpline build_spline(const DelayProfile& profile);
PeriodicSpline build_spline(const SkewProfile& profile);

enum class DeviationKind { delay, skew };

struct DeviationSample {
    std::vector<double> values;  // ps/inch, >= 0
    uint64_t seed = 0;
    size_t n() const { return values.size(); }
};

/// Monte Carlo deviations for trace offsets drawn uniformly over one period:
/// |spline(x) - mean| for delay profiles, |spline(x)| for skew profiles.
DeviationSample deviation_series(const PeriodicSpline& spline, DeviationKind kind, size_t n,
                                 uint64_t seed);

struct Histogram {
    std::vector<double> edges;    // bins + 1 entries, uniform
    std::vector<size_t> counts;
    std::vector<double> density;  // integrates to 1
};

/// Deviation density on uniform bins over [0, max(sample)].
Histogram density(const DeviationSample& sample, int bins = 20);

/// Raw profile values (delay, or signed skew) at offsets drawn uniformly
/// over one period; the input of the value-density histograms.
std::vector<double> sample_profile_values(const PeriodicSpline& spline, size_t n, uint64_t seed);

/// Density of raw values on uniform bins spanning [min, max]. For near
/// sinusoidal profiles this is the U-shaped density with the outer bins
/// dominant.
Histogram value_density(const std::vector<double>& values, int bins = 20);

enum class ExceedanceKind { DDE, DSE };

struct ExceedanceCurve {
    std::vector<double> thresholds;
    std::vector<double> probability;  // P(T >= t), non-increasing
    ExceedanceKind kind = ExceedanceKind::DDE;
};

/// Empirical CCDF P(T >= t) at the given ascending thresholds.
ExceedanceCurve exceedance(const DeviationSample& sample, std::vector<double> thresholds,
                           ExceedanceKind kind = ExceedanceKind::DDE);

std::vector<double> make_thresholds(double lo, double hi, double step);

struct ArcsineModel {
    double delta_t = 0.0;  // maximal deviation, ps/inch
    double alpha = 0.0;    // profile phase, reporting only
};

/// Density 2 / (pi * dt * sqrt(1 - (t/dt)^2)) on [0, dt). Throws outside the
/// support; the t = dt pole is rejected.
double arcsine_pdf(const ArcsineModel& model, double t);

/// CCDF 1 - (2/pi) asin(t/dt); clamps to 0 above dt, throws for t < 0.
double arcsine_ccdf(const ArcsineModel& model, double t);

/// One-parameter fit from spline extrema: delta_t = (max - min)/2 for delay
/// profiles, max |spline| for skew profiles.
ArcsineModel fit_arcsine(const PeriodicSpline& spline, DeviationKind kind);

struct KumaraswamyModel {
    double a = 1.0;
    double b = 1.0;
    double delta_t = 0.0;  // scale
    double ccdf(double t) const;  // (1 - (t/delta_t)^a)^b on [0, delta_t]
};

/// Two-parameter fit: least squares between the Kumaraswamy CCDF and the
/// empirical CCDF on a 101-point grid, coarse log-grid search over
/// a, b in [0.1, 10] plus compass refinement until the parameter step in
/// log space drops below 1e-4.
KumaraswamyModel fit_kumaraswamy(const DeviationSample& sample);

/// Sup-norm distance between the empirical CCDF and a model CCDF, evaluated
/// at every distinct sample value and immediately above it (capturing both
/// sides of each empirical step).
double ks_statistic(const DeviationSample& sample,
                    const std::function<double(double)>& model_ccdf);

}  // namespace fwe
