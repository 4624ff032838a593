#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fwe/fieldsolver.hpp"
#include "fwe/lattice.hpp"

namespace fwe {

struct SweepConfig {
    std::vector<double> offsets;  // mil
    int n_slices = 8;             // longitudinal cross-sections per period x3
    double grid_mil = 0.25;       // uniform cell spacing
    double tol = 1e-8;            // solver relative residual
    long max_iter = 0;            // 0 = solver default
    unsigned threads = 0;         // 0 = hardware concurrency

    static SweepConfig defaults();  // offsets -12..+12 step 1
    void validate() const;
    std::vector<double> sorted_offsets() const;
};

struct OffsetResult {
    double delay_ps_per_in = 0.0;  // mean over slices
    double z0_ohm = 0.0;           // mean over slices
    double z0_min = 0.0;
    double z0_max = 0.0;
};

struct DelayProfile {
    std::string style;
    std::vector<double> offsets;
    std::vector<double> delay;  // ps/inch
    std::vector<double> z0;     // ohm
    std::vector<double> z0_min;
    std::vector<double> z0_max;
    double period = 0.0;  // mil, = y3
};

struct SkewProfile {
    std::string style;
    std::vector<double> offsets;  // pair midpoint
    std::vector<double> skew;     // delay_left - delay_right, ps/inch
    std::vector<double> delay_left;
    std::vector<double> delay_right;
    double period = 0.0;
};

class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& msg, double offset, int slice, std::string partial_csv = {})
        : std::runtime_error(msg), offset_(offset), slice_(slice),
          partial_csv_(std::move(partial_csv)) {}
    double offset() const { return offset_; }
    int slice() const { return slice_; }
    /// CSV of the offsets that did complete, for a `.partial` dump.
    const std::string& partial_csv() const { return partial_csv_; }

private:
    double offset_;
    int slice_;
    std::string partial_csv_;
};

/// Memoizes per-trace-center evaluations and the shared vacuum capacitance
/// for one (model, trace width, config) combination, so overlapping single
/// and differential sweeps do not recompute solves.
class SweepSession {
public:
    SweepSession(const LatticeModel& model, double trace_width, const SweepConfig& cfg);

    OffsetResult at(double trace_center);
    void prefetch(std::span<const double> trace_centers);  // parallel fill
    const LatticeModel& model() const { return *model_; }
    double trace_width() const { return width_; }
    const SweepConfig& config() const { return cfg_; }

private:
    const LatticeModel* model_;
    double width_;
    SweepConfig cfg_;
    double c0_ = -1.0;
    std::unordered_map<uint64_t, OffsetResult> memo_;

    double vacuum_capacitance();
    OffsetResult compute(double trace_center) const;
    friend OffsetResult delay_at_offset(const LatticeModel&, double, double, const SweepConfig&);
};

/// Mean per-unit-length delay and impedance of a single trace of width w
/// centered at trace_center, averaged over n_slices cross-sections spanning
/// one longitudinal period.
OffsetResult delay_at_offset(const LatticeModel& model, double trace_center, double trace_width,
                             const SweepConfig& cfg);

DelayProfile run_single_sweep(const LatticeModel& model, const TraceLayout& layout,
                              const SweepConfig& cfg);
DelayProfile run_single_sweep(SweepSession& session, const TraceLayout& layout);

SkewProfile run_diff_sweep(const LatticeModel& model, const TraceLayout& layout,
                           const SweepConfig& cfg);
SkewProfile run_diff_sweep(SweepSession& session, const TraceLayout& layout);

// ---------------------------------------------------------------------------
// CSV serialization (numbers at 12 significant digits)
// ---------------------------------------------------------------------------

std::string to_csv(const DelayProfile& profile);
std::string to_csv(const SkewProfile& profile);

/// Parses a sweep CSV; `style` and `period` are not stored in the payload
/// and must be supplied by the caller.
DelayProfile parse_delay_csv(const std::string& text, const std::string& style, double period);
SkewProfile parse_skew_csv(const std::string& text, const std::string& style, double period);
bool csv_is_skew(const std::string& text);

// ---------------------------------------------------------------------------
// Content-addressed sweep cache
// ---------------------------------------------------------------------------

inline constexpr const char* kSolverVersion = "fwe-qs-1";

uint64_t fnv1a_hash(const std::string& text);

struct CacheKey {
    uint64_t model_hash = 0;
    uint64_t layout_hash = 0;
    uint64_t cfg_hash = 0;
    std::string filename() const;  // "<model>-<layout>-<cfg>.csv" in hex
};

CacheKey make_cache_key(const FabricStyle& style, const Laminate& laminate,
                        const TraceLayout& layout, const SweepConfig& cfg);

std::optional<std::string> cache_lookup(const std::string& dir, const CacheKey& key);
void cache_store(const std::string& dir, const CacheKey& key, const std::string& payload,
                 const std::vector<std::string>& metadata);

}  // namespace fwe
