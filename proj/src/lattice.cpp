#include "fwe/lattice.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fwe {

namespace {

// Signed distance to the nearest period multiple, result in [-p/2, p/2).
double mod_centered(double u, double p) {
    double m = u - p * std::round(u / p);
    if (m >= p / 2) m -= p;
    if (m < -p / 2) m += p;
    return m;
}

}  // namespace

void FabricStyle::validate() const {
    if (name.empty())
        throw std::invalid_argument("FabricStyle: empty style name");
    const double dims[6] = {x1, x2, x3, y1, y2, y3};
    for (double d : dims)
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("FabricStyle '" + name + "': all dimensions must be positive");
    if (x2 > x3 || y2 > y3)
        throw std::invalid_argument("FabricStyle '" + name + "': bundle exceeds pitch");
    if (x1 != y1)
        throw std::invalid_argument("FabricStyle '" + name + "': x1 and y1 must be equal");
}

void Laminate::validate() const {
    if (!(h > 0.0) || !(t > 0.0))
        throw std::invalid_argument("Laminate: h and t must be positive");
    if (!(eps_glass >= eps_resin) || !(eps_resin >= 1.0))
        throw std::invalid_argument("Laminate: need eps_glass >= eps_resin >= 1");
}

void TraceLayout::validate() const {
    if (!(w > 0.0))
        throw std::invalid_argument("TraceLayout: trace width must be positive");
    if (kind == TraceKind::differential && !(s > 0.0))
        throw std::invalid_argument("TraceLayout: differential separation must be positive");
}

LatticeModel::LatticeModel(const FabricStyle& style, const Laminate& laminate)
    : style_(style), laminate_(laminate) {
    style_.validate();
    laminate_.validate();
    if (2.0 * style_.x1 > laminate_.h)
        throw std::invalid_argument("LatticeModel '" + style_.name +
                                    "': layers exceed laminate height (2*x1 > h)");
}

LatticeModel make_lattice(const FabricStyle& style, const Laminate& laminate) {
    return LatticeModel(style, laminate);
}

double LatticeModel::eps_at(double x, double y, double z) const {
    const Laminate& lam = laminate_;
    if (z > lam.h) return 1.0;
    const double z_mid = lam.h / 2.0;
    const double x1 = style_.x1;
    if (z >= z_mid - x1 && z < z_mid) {
        // lower layer: Y-running bundles, cross-section repeats along x
        if (std::abs(mod_centered(x, style_.x3)) <= style_.x2 / 2.0) return lam.eps_glass;
    } else if (z >= z_mid && z <= z_mid + x1) {
        // upper layer: X-running bundles, repeats along y
        if (std::abs(mod_centered(y, style_.y3)) <= style_.y2 / 2.0) return lam.eps_glass;
    }
    return lam.eps_resin;
}

double LatticeModel::glass_fraction() const {
    const FabricStyle& s = style_;
    return s.x1 * (s.x2 / s.x3 + s.y2 / s.y3) / laminate_.h;
}

DielectricRaster raster_slice(const LatticeModel& model, double x, const Grid2D& grid) {
    grid.validate();
    DielectricRaster raster(grid, 1.0);
    std::vector<double> eps(static_cast<size_t>(grid.cells()));
    for (int j = 0; j < grid.nz; ++j) {
        const double z = grid.cell_z(j);
        for (int i = 0; i < grid.ny; ++i)
            eps[grid.index(i, j)] = model.eps_at(x, grid.cell_y(i), z);
    }
    raster.fill_eps(eps);
    return raster;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

std::vector<CatalogEntry> builtin_catalog() {
    const Laminate defaults{};
    std::vector<CatalogEntry> entries;
    entries.push_back({FabricStyle{"1035", 0.8, 9.0, 14.0, 0.8, 12.0, 14.0}, defaults});
    entries.push_back({FabricStyle{"1080", 1.35, 8.0, 17.0, 1.35, 12.0, 22.0}, defaults});
    entries.push_back({FabricStyle{"1078", 1.2, 14.0, 16.0, 1.2, 17.0, 18.0}, defaults});
    entries.push_back({FabricStyle{"3313", 1.7, 13.0, 16.0, 1.7, 11.0, 16.0}, defaults});
    return entries;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void finish_record(std::vector<CatalogEntry>& out, const std::string& name,
                   std::map<std::string, double>& keys, int line) {
    CatalogEntry entry;
    entry.style.name = name;
    const char* required[] = {"x1", "x2", "x3", "y1", "y2", "y3"};
    double* fields[] = {&entry.style.x1, &entry.style.x2, &entry.style.x3,
                        &entry.style.y1, &entry.style.y2, &entry.style.y3};
    for (int k = 0; k < 6; ++k) {
        auto it = keys.find(required[k]);
        if (it == keys.end())
            throw CatalogError("style '" + name + "' missing key '" + required[k] + "'", line);
        *fields[k] = it->second;
        keys.erase(it);
    }
    if (auto it = keys.find("h"); it != keys.end()) { entry.laminate.h = it->second; keys.erase(it); }
    if (auto it = keys.find("t"); it != keys.end()) { entry.laminate.t = it->second; keys.erase(it); }
    if (auto it = keys.find("eps_glass"); it != keys.end()) { entry.laminate.eps_glass = it->second; keys.erase(it); }
    if (auto it = keys.find("eps_resin"); it != keys.end()) { entry.laminate.eps_resin = it->second; keys.erase(it); }
    if (!keys.empty())
        throw CatalogError("style '" + name + "': unknown key '" + keys.begin()->first + "'", line);
    try {
        entry.style.validate();
        entry.laminate.validate();
        LatticeModel check(entry.style, entry.laminate);  // cross-field invariants
        (void)check;
    } catch (const std::invalid_argument& e) {
        throw CatalogError(e.what(), line);
    }
    for (const auto& existing : out)
        if (existing.style.name == name)
            throw CatalogError("duplicate style '" + name + "'", line);
    out.push_back(std::move(entry));
}

}  // namespace

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
    std::vector<CatalogEntry> out;
    std::istringstream in(text);
    std::string line;
    std::string current_name;
    std::map<std::string, double> keys;
    int lineno = 0, record_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw CatalogError("malformed section header", lineno);
            if (!current_name.empty()) finish_record(out, current_name, keys, record_line);
            current_name = trim(line.substr(1, line.size() - 2));
            if (current_name.empty())
                throw CatalogError("empty style name", lineno);
            keys.clear();
            record_line = lineno;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CatalogError("expected 'key = value'", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (current_name.empty())
            throw CatalogError("key outside of a [style] section", lineno);
        if (keys.count(key))
            throw CatalogError("duplicate key '" + key + "'", lineno);
        try {
            size_t pos = 0;
            double v = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument("trailing characters");
            keys[key] = v;
        } catch (const std::exception&) {
            throw CatalogError("invalid number for key '" + key + "'", lineno);
        }
    }
    if (!current_name.empty()) finish_record(out, current_name, keys, record_line);
    return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CatalogError("cannot open catalog file '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

}  // namespace fwe
