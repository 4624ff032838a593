#include "fwe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fwe {

uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Periodic cubic spline
// ---------------------------------------------------------------------------

namespace {

double fold(double x, double period) {
    double u = std::fmod(x, period);
    if (u < 0.0) u += period;
    if (u >= period) u = 0.0;
    return u;
}

// Dense LU with partial pivoting; the cyclic tridiagonal systems here have a
// few dozen unknowns at most.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        if (a[pivot * n + col] == 0.0)
            throw std::runtime_error("PeriodicSpline: singular system");
        if (pivot != col) {
            for (size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        for (size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (size_t k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (size_t k = row + 1; k < n; ++k) acc -= a[row * n + k] * x[k];
        x[row] = acc / a[row * n + row];
    }
    return x;
}

}  // namespace

PeriodicSpline PeriodicSpline::fit(std::span<const double> positions,
                                   std::span<const double> values, double period) {
    if (!(period > 0.0))
        throw std::invalid_argument("PeriodicSpline: period must be positive");
    if (positions.size() != values.size())
        throw std::invalid_argument("PeriodicSpline: length mismatch");

    // fold into [0, L), sort, average duplicates
    std::vector<std::pair<double, double>> pts;
    pts.reserve(positions.size());
    for (size_t i = 0; i < positions.size(); ++i)
        pts.emplace_back(fold(positions[i], period), values[i]);
    std::sort(pts.begin(), pts.end());
    const double merge_tol = 1e-9 * period;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < pts.size();) {
        size_t j = i;
        double sum = 0.0;
        while (j < pts.size() && pts[j].first - pts[i].first <= merge_tol) sum += pts[j++].second;
        xs.push_back(pts[i].first);
        ys.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    const size_t n = xs.size();
    if (n < 4)
        throw std::invalid_argument("PeriodicSpline: need at least 4 distinct knots per period");
    double max_gap = xs.front() + period - xs.back();
    for (size_t i = 0; i + 1 < n; ++i) max_gap = std::max(max_gap, xs[i + 1] - xs[i]);
    if (max_gap > period / 3.0)
        throw std::invalid_argument("PeriodicSpline: period not uniformly covered by knots");

    // C2 periodic spline: cyclic system for the knot second derivatives
    std::vector<double> h(n);
    for (size_t i = 0; i < n; ++i)
        h[i] = (i + 1 < n ? xs[i + 1] : xs[0] + period) - xs[i];
    std::vector<double> a(n * n, 0.0), rhs(n);
    for (size_t i = 0; i < n; ++i) {
        const size_t prev = (i + n - 1) % n;
        const size_t next = (i + 1) % n;
        a[i * n + prev] += h[prev] / 6.0;
        a[i * n + i] += (h[prev] + h[i]) / 3.0;
        a[i * n + next] += h[i] / 6.0;
        const double d_next = (ys[next] - ys[i]) / h[i];
        const double d_prev = (ys[i] - ys[prev]) / h[prev];
        rhs[i] = d_next - d_prev;
    }
    PeriodicSpline s;
    s.period_ = period;
    s.knots_ = std::move(xs);
    s.values_ = std::move(ys);
    s.second_ = solve_dense(std::move(a), std::move(rhs));

    // exact integral of the cubic pieces
    double integral = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const size_t next = (i + 1) % n;
        const double hi = h[i];
        integral += hi * (s.values_[i] + s.values_[next]) / 2.0 -
                    hi * hi * hi * (s.second_[i] + s.second_[next]) / 24.0;
    }
    s.mean_ = integral / period;
    return s;
}

double PeriodicSpline::piece(double x, size_t i) const {
    const size_t n = knots_.size();
    const size_t next = (i + 1) % n;
    const double x1 = (i + 1 < n ? knots_[next] : knots_[0] + period_);
    const double h = x1 - knots_[i];
    const double u = x - knots_[i];
    const double v = x1 - x;
    return (second_[i] * v * v * v + second_[next] * u * u * u) / (6.0 * h) +
           (values_[i] / h - second_[i] * h / 6.0) * v +
           (values_[next] / h - second_[next] * h / 6.0) * u;
}

double PeriodicSpline::operator()(double x) const {
    const double u = fold(x, period_);
    const size_t n = knots_.size();
    // knots_ ascending; find the piece containing u
    size_t i = std::upper_bound(knots_.begin(), knots_.end(), u) - knots_.begin();
    i = (i == 0) ? n - 1 : i - 1;
    double xx = u;
    if (i == n - 1 && u < knots_.back()) xx = u + period_;  // u before first knot, wrap piece
    return piece(xx, i);
}

PeriodicSpline::Extrema PeriodicSpline::extrema() const {
    const size_t n = knots_.size();
    Extrema ext;
    bool first = true;
    auto consider = [&](double x, double value) {
        if (first) {
            ext.min_value = ext.max_value = value;
            ext.argmin = ext.argmax = fold(x, period_);
            first = false;
            return;
        }
        if (value < ext.min_value) {
            ext.min_value = value;
            ext.argmin = fold(x, period_);
        }
        if (value > ext.max_value) {
            ext.max_value = value;
            ext.argmax = fold(x, period_);
        }
    };
    for (size_t i = 0; i < n; ++i) {
        const size_t next = (i + 1) % n;
        const double x0 = knots_[i];
        const double x1 = (i + 1 < n ? knots_[next] : knots_[0] + period_);
        const double h = x1 - x0;
        consider(x0, values_[i]);
        // critical points: derivative of the cubic piece is quadratic in u
        const double m0 = second_[i], m1 = second_[next];
        const double qa = (m1 - m0) / (2.0 * h);
        const double qb = m0;
        const double qc = (values_[next] - values_[i]) / h - h * (2.0 * m0 + m1) / 6.0;
        // S'(x0 + u) = qa u^2 + qb u + qc, solved in the cancellation-safe form
        auto try_root = [&](double u) {
            if (u > 0.0 && u < h) consider(x0 + u, piece(x0 + u, i));
        };
        if (qa != 0.0) {
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc >= 0.0) {
                const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
                try_root(q / qa);
                if (q != 0.0) try_root(qc / q);
            }
        } else if (qb != 0.0) {
            try_root(-qc / qb);
        }
    }
    return ext;
}

PeriodicSpline build_spline(const DelayProfile& profile) {
    if (!(profile.period > 0.0))
        throw std::invalid_argument("build_spline: profile period must be positive");
    return PeriodicSpline::fit(profile.offsets, profile.delay, profile.period);
}

PeriodicSpline build_spline(const SkewProfile& profile) {
    if (!(profile.period > 0.0))
        throw std::invalid_argument("build_spline: profile period must be positive");
    return PeriodicSpline::fit(profile.offsets, profile.skew, profile.period);
}

// ---------------------------------------------------------------------------
// Deviation sampling and empirical statistics
// ---------------------------------------------------------------------------

DeviationSample deviation_series(const PeriodicSpline& spline, DeviationKind kind, size_t n,
                                 uint64_t seed) {
    if (n < 1) throw std::invalid_argument("deviation_series: n must be >= 1");
    DeviationSample sample;
    sample.seed = seed;
    sample.values.resize(n);
    SplitMix64 rng(seed);
    const double mean = spline.mean();
    const double period = spline.period();
    for (size_t i = 0; i < n; ++i) {
        const double x = rng.next_unit() * period;
        const double v = spline(x);
        sample.values[i] = kind == DeviationKind::delay ? std::abs(v - mean) : std::abs(v);
    }
    return sample;
}

Histogram density(const DeviationSample& sample, int bins) {
    if (bins < 1) throw std::invalid_argument("density: bins must be >= 1");
    if (sample.values.empty()) throw std::invalid_argument("density: empty sample");
    if (sample.values.size() < static_cast<size_t>(bins))
        throw std::invalid_argument("density: need at least as many samples as bins");
    double top = *std::max_element(sample.values.begin(), sample.values.end());
    if (top <= 0.0) top = 1e-12;  // width floor for degenerate all-zero samples
    Histogram h;
    h.edges.resize(bins + 1);
    const double width = top / bins;
    for (int b = 0; b <= bins; ++b) h.edges[b] = b * width;
    h.counts.assign(bins, 0);
    for (double v : sample.values) {
        int b = static_cast<int>(v / width);
        if (b >= bins) b = bins - 1;  // top edge closed
        if (b < 0) b = 0;
        ++h.counts[b];
    }
    h.density.resize(bins);
    const double norm = 1.0 / (static_cast<double>(sample.values.size()) * width);
    for (int b = 0; b < bins; ++b) h.density[b] = static_cast<double>(h.counts[b]) * norm;
    return h;
}

std::vector<double> sample_profile_values(const PeriodicSpline& spline, size_t n,
                                          uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_profile_values: n must be >= 1");
    std::vector<double> values(n);
    SplitMix64 rng(seed);
    for (size_t i = 0; i < n; ++i) values[i] = spline(rng.next_unit() * spline.period());
    return values;
}

Histogram value_density(const std::vector<double>& values, int bins) {
    if (bins < 1) throw std::invalid_argument("value_density: bins must be >= 1");
    if (values.size() < static_cast<size_t>(bins))
        throw std::invalid_argument("value_density: need at least as many samples as bins");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    double width = (*hi_it - lo) / bins;
    if (width <= 0.0) width = 1e-12;
    Histogram h;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
    h.counts.assign(bins, 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        if (b >= bins) b = bins - 1;
        if (b < 0) b = 0;
        ++h.counts[b];
    }
    h.density.resize(bins);
    const double norm = 1.0 / (static_cast<double>(values.size()) * width);
    for (int b = 0; b < bins; ++b) h.density[b] = static_cast<double>(h.counts[b]) * norm;
    return h;
}

ExceedanceCurve exceedance(const DeviationSample& sample, std::vector<double> thresholds,
                           ExceedanceKind kind) {
    for (size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] < 0.0)
            throw std::invalid_argument("exceedance: thresholds must be >= 0");
        if (i && thresholds[i] < thresholds[i - 1])
            throw std::invalid_argument("exceedance: thresholds must ascend");
    }
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    ExceedanceCurve curve;
    curve.kind = kind;
    curve.thresholds = std::move(thresholds);
    curve.probability.reserve(curve.thresholds.size());
    for (double t : curve.thresholds) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
        curve.probability.push_back(static_cast<double>(sorted.end() - it) / n);
    }
    return curve;
}

std::vector<double> make_thresholds(double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("make_thresholds: step must be positive");
    if (hi < lo) throw std::invalid_argument("make_thresholds: hi < lo");
    std::vector<double> out;
    for (long k = 0;; ++k) {
        const double t = lo + static_cast<double>(k) * step;
        if (t > hi + step * 1e-9) break;
        out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Arcsine model
// ---------------------------------------------------------------------------

double arcsine_pdf(const ArcsineModel& model, double t) {
    if (!(model.delta_t > 0.0))
        throw std::domain_error("arcsine_pdf: degenerate model (delta_t = 0)");
    if (t < 0.0 || t >= model.delta_t)
        throw std::domain_error("arcsine_pdf: t outside [0, delta_t)");
    const double r = t / model.delta_t;
    return 2.0 / (std::numbers::pi * model.delta_t * std::sqrt(1.0 - r * r));
}

double arcsine_ccdf(const ArcsineModel& model, double t) {
    if (t < 0.0) throw std::domain_error("arcsine_ccdf: t must be >= 0");
    if (model.delta_t <= 0.0) return t <= 0.0 ? 1.0 : 0.0;
    if (t >= model.delta_t) return 0.0;
    return 1.0 - 2.0 / std::numbers::pi * std::asin(t / model.delta_t);
}

ArcsineModel fit_arcsine(const PeriodicSpline& spline, DeviationKind kind) {
    const PeriodicSpline::Extrema ext = spline.extrema();
    ArcsineModel model;
    double peak_x;
    if (kind == DeviationKind::delay) {
        model.delta_t = (ext.max_value - ext.min_value) / 2.0;
        peak_x = ext.argmax;
    } else {
        model.delta_t = std::max(std::abs(ext.max_value), std::abs(ext.min_value));
        peak_x = std::abs(ext.max_value) >= std::abs(ext.min_value) ? ext.argmax : ext.argmin;
    }
    // phase putting the deviation peak at the observed position
    model.alpha = std::numbers::pi / 2.0 - 2.0 * std::numbers::pi * peak_x / spline.period();
    return model;
}

// ---------------------------------------------------------------------------
// Kumaraswamy model
// ---------------------------------------------------------------------------

double KumaraswamyModel::ccdf(double t) const {
    if (t <= 0.0) return 1.0;
    if (delta_t <= 0.0 || t >= delta_t) return 0.0;
    const double x = t / delta_t;
    return std::pow(1.0 - std::pow(x, a), b);
}

KumaraswamyModel fit_kumaraswamy(const DeviationSample& sample) {
    if (sample.n() < 100)
        throw std::invalid_argument("fit_kumaraswamy: need at least 100 samples");
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    const double top = sorted.back();
    if (!(top > 0.0) || top == sorted.front())
        throw std::invalid_argument("fit_kumaraswamy: degenerate sample");

    // empirical CCDF on the 101-point normalized threshold grid
    const int grid_n = 101;
    std::vector<double> emp(grid_n);
    const double n = static_cast<double>(sorted.size());
    for (int k = 0; k < grid_n; ++k) {
        const double t = top * static_cast<double>(k) / (grid_n - 1);
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
        emp[k] = static_cast<double>(sorted.end() - it) / n;
    }
    auto sse = [&](double la, double lb) {
        const double a = std::exp(la), b = std::exp(lb);
        double acc = 0.0;
        for (int k = 0; k < grid_n; ++k) {
            const double x = static_cast<double>(k) / (grid_n - 1);
            const double model = x >= 1.0 ? 0.0 : std::pow(1.0 - std::pow(x, a), b);
            const double d = model - emp[k];
            acc += d * d;
        }
        return acc;
    };

    const double lo = std::log(0.1), hi = std::log(10.0);
    const int coarse = 41;
    const double coarse_step = (hi - lo) / (coarse - 1);
    double best_la = 0.0, best_lb = 0.0, best = -1.0;
    for (int i = 0; i < coarse; ++i)
        for (int j = 0; j < coarse; ++j) {
            const double v = sse(lo + i * coarse_step, lo + j * coarse_step);
            if (best < 0.0 || v < best) {
                best = v;
                best_la = lo + i * coarse_step;
                best_lb = lo + j * coarse_step;
            }
        }
    double step = coarse_step;
    while (step >= 1e-4) {
        bool improved = false;
        static constexpr int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                           {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (const auto& d : dirs) {
            const double la = best_la + d[0] * step, lb = best_lb + d[1] * step;
            const double v = sse(la, lb);
            if (v < best) {
                best = v;
                best_la = la;
                best_lb = lb;
                improved = true;
                break;
            }
        }
        if (!improved) step /= 2.0;
    }

    KumaraswamyModel model;
    model.a = std::exp(best_la);
    model.b = std::exp(best_lb);
    model.delta_t = top;
    return model;
}

double ks_statistic(const DeviationSample& sample,
                    const std::function<double(double)>& model_ccdf) {
    if (sample.values.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size();) {
        size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double v = sorted[i];
        const double emp_at = static_cast<double>(sorted.size() - i) / n;     // P(T >= v)
        const double emp_above = static_cast<double>(sorted.size() - j) / n;  // P(T > v)
        d = std::max(d, std::abs(model_ccdf(v) - emp_at));
        d = std::max(d, std::abs(model_ccdf(std::nextafter(v, INFINITY)) - emp_above));
        i = j;
    }
    return d;
}

}  // namespace fwe
