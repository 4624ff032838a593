#include "fwe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace fwe {

namespace {

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<size_t>(threads, n));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Trace-centered raster plan: the conductor stays fixed in the grid while the
// lattice is sampled through the grid origin, so the vacuum solve is shared
// by every offset and slice.
struct TracePlan {
    Grid2D shape;      // y0 filled per offset
    int trace_i0 = 0;  // conductor cell ranges
    int trace_i1 = 0;
    int trace_j0 = 0;
    int trace_j1 = 0;
    double half_span = 0.0;  // mil from trace center to wall

    Grid2D grid_at(double trace_center) const {
        Grid2D g = shape;
        g.y0 = trace_center - half_span;
        return g;
    }
};

TracePlan plan_trace(const LatticeModel& model, double trace_width, const SweepConfig& cfg) {
    const double d = cfg.grid_mil;
    const Laminate& lam = model.laminate();
    const int half_w = std::max(1, static_cast<int>(std::lround(trace_width / 2.0 / d)));
    // insulating walls at >= 3 lattice periods beyond the trace edges
    const int margin = static_cast<int>(std::ceil(3.0 * model.style().y3 / d - 1e-9));
    const int jh = std::max(1, static_cast<int>(std::lround(lam.h / d)));
    const int jt = std::max(1, static_cast<int>(std::lround(lam.t / d)));
    TracePlan p;
    p.shape.ny = 2 * (half_w + margin);
    p.shape.nz = std::max(jh + jt + 8, static_cast<int>(std::lround(10.0 * lam.h / d)));
    p.shape.dy = d;
    p.shape.dz = d;
    p.shape.z0 = 0.0;
    p.shape.validate();
    p.trace_i0 = margin;
    p.trace_i1 = margin + 2 * half_w;
    p.trace_j0 = jh;
    p.trace_j1 = jh + jt;
    p.half_span = (half_w + margin) * d;
    return p;
}

double vacuum_c_for_plan(const TracePlan& plan, const SweepConfig& cfg) {
    DielectricRaster raster(plan.grid_at(0.0), 1.0);
    raster.add_conductor_rect("trace", plan.trace_i0, plan.trace_i1, plan.trace_j0, plan.trace_j1);
    FieldSolution sol = solve_laplace(raster, {{"trace", 1.0}}, cfg.tol, cfg.max_iter);
    return capacitance(sol, raster, "trace");
}

OffsetResult evaluate_offset(const LatticeModel& model, double trace_center,
                             const TracePlan& plan, const SweepConfig& cfg, double c0) {
    const double x3 = model.style().x3;
    const Grid2D grid = plan.grid_at(trace_center);
    double delay_sum = 0.0, z0_sum = 0.0;
    double z0_min = 0.0, z0_max = 0.0;
    FieldSolution previous;
    for (int k = 0; k < cfg.n_slices; ++k) {
        const double x = (k + 0.5) * x3 / cfg.n_slices;
        DielectricRaster raster = raster_slice(model, x, grid);
        raster.add_conductor_rect("trace", plan.trace_i0, plan.trace_i1, plan.trace_j0,
                                  plan.trace_j1);
        FieldSolution sol;
        try {
            sol = solve_laplace(raster, {{"trace", 1.0}}, cfg.tol, cfg.max_iter,
                                k > 0 ? &previous : nullptr);
        } catch (const SolverError& e) {
            std::ostringstream msg;
            msg << "offset " << g12(trace_center) << ", slice " << k << " (x=" << g12(x)
                << " mil): " << e.what();
            throw SweepError(msg.str(), trace_center, k);
        }
        const double c = capacitance(sol, raster, "trace");
        const LineParams lp = effective_params(c, c0);
        delay_sum += lp.delay_ps_per_in;
        z0_sum += lp.z0_ohm;
        z0_min = k == 0 ? lp.z0_ohm : std::min(z0_min, lp.z0_ohm);
        z0_max = k == 0 ? lp.z0_ohm : std::max(z0_max, lp.z0_ohm);
        previous = std::move(sol);
    }
    OffsetResult r;
    r.delay_ps_per_in = delay_sum / cfg.n_slices;
    r.z0_ohm = z0_sum / cfg.n_slices;
    r.z0_min = z0_min;
    r.z0_max = z0_max;
    return r;
}

uint64_t key_bits(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return bits;
}

}  // namespace

SweepConfig SweepConfig::defaults() {
    SweepConfig cfg;
    for (int o = -12; o <= 12; ++o) cfg.offsets.push_back(o);
    return cfg;
}

void SweepConfig::validate() const {
    if (offsets.empty())
        throw std::invalid_argument("SweepConfig: offsets must not be empty");
    if (n_slices < 1)
        throw std::invalid_argument("SweepConfig: n_slices must be >= 1");
    if (!(grid_mil > 0.0))
        throw std::invalid_argument("SweepConfig: grid spacing must be positive");
    if (!(tol > 0.0) || tol > 1e-3)
        throw std::invalid_argument("SweepConfig: tol must be in (0, 1e-3]");
    for (double o : offsets)
        if (!std::isfinite(o))
            throw std::invalid_argument("SweepConfig: offsets must be finite");
}

std::vector<double> SweepConfig::sorted_offsets() const {
    std::vector<double> v = offsets;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

SweepSession::SweepSession(const LatticeModel& model, double trace_width, const SweepConfig& cfg)
    : model_(&model), width_(trace_width), cfg_(cfg) {
    cfg_.validate();
    if (!(trace_width > 0.0))
        throw std::invalid_argument("SweepSession: trace width must be positive");
}

double SweepSession::vacuum_capacitance() {
    if (c0_ < 0.0) {
        const TracePlan plan = plan_trace(*model_, width_, cfg_);
        try {
            c0_ = vacuum_c_for_plan(plan, cfg_);
        } catch (const SolverError& e) {
            throw SweepError(std::string("vacuum reference solve: ") + e.what(),
                             std::nan(""), -1);
        }
    }
    return c0_;
}

OffsetResult SweepSession::compute(double trace_center) const {
    const TracePlan plan = plan_trace(*model_, width_, cfg_);
    return evaluate_offset(*model_, trace_center, plan, cfg_, c0_);
}

OffsetResult SweepSession::at(double trace_center) {
    auto it = memo_.find(key_bits(trace_center));
    if (it != memo_.end()) return it->second;
    vacuum_capacitance();
    OffsetResult r = compute(trace_center);
    memo_.emplace(key_bits(trace_center), r);
    return r;
}

void SweepSession::prefetch(std::span<const double> trace_centers) {
    std::vector<double> missing;
    for (double c : trace_centers)
        if (!memo_.count(key_bits(c))) missing.push_back(c);
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    if (missing.empty()) return;
    vacuum_capacitance();
    std::vector<OffsetResult> results(missing.size());
    std::vector<std::exception_ptr> errors(missing.size());
    parallel_for(missing.size(), cfg_.threads, [&](size_t i) {
        try {
            results[i] = compute(missing[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    // memoize successes first so partial results survive a failure
    for (size_t i = 0; i < missing.size(); ++i)
        if (!errors[i]) memo_.emplace(key_bits(missing[i]), results[i]);
    for (size_t i = 0; i < missing.size(); ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

OffsetResult delay_at_offset(const LatticeModel& model, double trace_center, double trace_width,
                             const SweepConfig& cfg) {
    SweepSession session(model, trace_width, cfg);
    return session.at(trace_center);
}

namespace {

DelayProfile assemble_single(SweepSession& session, const std::vector<double>& offsets) {
    DelayProfile p;
    p.style = session.model().style().name;
    p.period = session.model().style().y3;
    for (double o : offsets) {
        const OffsetResult r = session.at(o);
        p.offsets.push_back(o);
        p.delay.push_back(r.delay_ps_per_in);
        p.z0.push_back(r.z0_ohm);
        p.z0_min.push_back(r.z0_min);
        p.z0_max.push_back(r.z0_max);
    }
    return p;
}

}  // namespace

DelayProfile run_single_sweep(SweepSession& session, const TraceLayout& layout) {
    layout.validate();
    if (layout.kind != TraceKind::single)
        throw std::invalid_argument("run_single_sweep: layout must be single-ended");
    if (layout.w != session.trace_width())
        throw std::invalid_argument("run_single_sweep: layout width differs from session");
    const std::vector<double> offsets = session.config().sorted_offsets();
    try {
        session.prefetch(offsets);
    } catch (const SweepError& e) {
        // report with whatever completed, in offset order
        std::vector<double> done;
        for (double o : offsets) {
            try {
                session.at(o);
                done.push_back(o);
            } catch (...) {
                break;
            }
        }
        DelayProfile partial = assemble_single(session, done);
        throw SweepError(e.what(), e.offset(), e.slice(), to_csv(partial));
    }
    return assemble_single(session, offsets);
}

DelayProfile run_single_sweep(const LatticeModel& model, const TraceLayout& layout,
                              const SweepConfig& cfg) {
    SweepSession session(model, layout.w, cfg);
    return run_single_sweep(session, layout);
}

SkewProfile run_diff_sweep(SweepSession& session, const TraceLayout& layout) {
    layout.validate();
    if (layout.kind != TraceKind::differential)
        throw std::invalid_argument("run_diff_sweep: layout must be differential");
    if (layout.w != session.trace_width())
        throw std::invalid_argument("run_diff_sweep: layout width differs from session");
    const double half_pitch = (layout.w + layout.s) / 2.0;
    const std::vector<double> offsets = session.config().sorted_offsets();
    std::vector<double> centers;
    for (double o : offsets) {
        centers.push_back(o - half_pitch);
        centers.push_back(o + half_pitch);
    }
    SkewProfile p;
    p.style = session.model().style().name;
    p.period = session.model().style().y3;
    try {
        session.prefetch(centers);
    } catch (const SweepError& e) {
        std::vector<double> done;
        SkewProfile partial;
        partial.style = p.style;
        partial.period = p.period;
        for (double o : offsets) {
            try {
                const OffsetResult left = session.at(o - half_pitch);
                const OffsetResult right = session.at(o + half_pitch);
                partial.offsets.push_back(o);
                partial.delay_left.push_back(left.delay_ps_per_in);
                partial.delay_right.push_back(right.delay_ps_per_in);
                partial.skew.push_back(left.delay_ps_per_in - right.delay_ps_per_in);
            } catch (...) {
                break;
            }
        }
        throw SweepError(e.what(), e.offset(), e.slice(), to_csv(partial));
    }
    for (double o : offsets) {
        const OffsetResult left = session.at(o - half_pitch);
        const OffsetResult right = session.at(o + half_pitch);
        p.offsets.push_back(o);
        p.delay_left.push_back(left.delay_ps_per_in);
        p.delay_right.push_back(right.delay_ps_per_in);
        p.skew.push_back(left.delay_ps_per_in - right.delay_ps_per_in);
    }
    return p;
}

SkewProfile run_diff_sweep(const LatticeModel& model, const TraceLayout& layout,
                           const SweepConfig& cfg) {
    SweepSession session(model, layout.w, cfg);
    return run_diff_sweep(session, layout);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string to_csv(const DelayProfile& profile) {
    std::string out = "offset_mil,delay_ps_per_in,z0_ohm\n";
    for (size_t i = 0; i < profile.offsets.size(); ++i) {
        out += g12(profile.offsets[i]);
        out += ',';
        out += g12(profile.delay[i]);
        out += ',';
        out += g12(profile.z0[i]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const SkewProfile& profile) {
    std::string out = "offset_mil,skew_ps_per_in,delay_left,delay_right\n";
    for (size_t i = 0; i < profile.offsets.size(); ++i) {
        out += g12(profile.offsets[i]);
        out += ',';
        out += g12(profile.skew[i]);
        out += ',';
        out += g12(profile.delay_left[i]);
        out += ',';
        out += g12(profile.delay_right[i]);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::vector<double>> parse_csv_rows(const std::string& text,
                                                const std::string& expected_header,
                                                size_t columns) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<std::vector<double>> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != expected_header)
                throw std::runtime_error("sweep CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) row.push_back(std::stod(field));
        if (row.size() != columns)
            throw std::runtime_error("sweep CSV: bad column count at line " +
                                     std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::runtime_error("sweep CSV: missing header");
    return rows;
}

}  // namespace

bool csv_is_skew(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        return line.rfind("offset_mil,skew_ps_per_in", 0) == 0;
    }
    return false;
}

DelayProfile parse_delay_csv(const std::string& text, const std::string& style, double period) {
    DelayProfile p;
    p.style = style;
    p.period = period;
    for (const auto& row : parse_csv_rows(text, "offset_mil,delay_ps_per_in,z0_ohm", 3)) {
        p.offsets.push_back(row[0]);
        p.delay.push_back(row[1]);
        p.z0.push_back(row[2]);
        p.z0_min.push_back(row[2]);
        p.z0_max.push_back(row[2]);
    }
    return p;
}

SkewProfile parse_skew_csv(const std::string& text, const std::string& style, double period) {
    SkewProfile p;
    p.style = style;
    p.period = period;
    for (const auto& row :
         parse_csv_rows(text, "offset_mil,skew_ps_per_in,delay_left,delay_right", 4)) {
        p.offsets.push_back(row[0]);
        p.skew.push_back(row[1]);
        p.delay_left.push_back(row[2]);
        p.delay_right.push_back(row[3]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

uint64_t fnv1a_hash(const std::string& text) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string CacheKey::filename() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx-%016llx-%016llx.csv",
                  static_cast<unsigned long long>(model_hash),
                  static_cast<unsigned long long>(layout_hash),
                  static_cast<unsigned long long>(cfg_hash));
    return buf;
}

CacheKey make_cache_key(const FabricStyle& style, const Laminate& laminate,
                        const TraceLayout& layout, const SweepConfig& cfg) {
    std::string model = "style:" + style.name;
    for (double v : {style.x1, style.x2, style.x3, style.y1, style.y2, style.y3})
        model += "," + g17(v);
    model += ";laminate:";
    for (double v : {laminate.h, laminate.t, laminate.eps_glass, laminate.eps_resin})
        model += "," + g17(v);

    std::string lay = layout.kind == TraceKind::single ? "single" : "diff";
    lay += ",w=" + g17(layout.w);
    if (layout.kind == TraceKind::differential) lay += ",s=" + g17(layout.s);

    std::string conf = std::string("solver=") + kSolverVersion;
    conf += ";slices=" + std::to_string(cfg.n_slices);
    conf += ";grid=" + g17(cfg.grid_mil);
    conf += ";tol=" + g17(cfg.tol);
    conf += ";maxiter=" + std::to_string(cfg.max_iter);
    conf += ";offsets=";
    for (double o : cfg.sorted_offsets()) conf += g17(o) + ",";

    return CacheKey{fnv1a_hash(model), fnv1a_hash(lay), fnv1a_hash(conf)};
}

std::optional<std::string> cache_lookup(const std::string& dir, const CacheKey& key) {
    namespace fs = std::filesystem;
    const fs::path path = fs::path(dir) / key.filename();
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    // strip the metadata header, keep the CSV payload byte-for-byte
    std::string payload;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size() - 1;
        if (text[pos] != '#') {
            payload = text.substr(pos);
            break;
        }
        pos = eol + 1;
    }
    if (payload.empty()) return std::nullopt;
    return payload;
}

void cache_store(const std::string& dir, const CacheKey& key, const std::string& payload,
                 const std::vector<std::string>& metadata) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / key.filename();
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        for (const auto& line : metadata) out << "# " << line << "\n";
        out << payload;
    }
    fs::rename(tmp, path);  // atomic per entry
}

}  // namespace fwe
