#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fwe/raster.hpp"

namespace fwe {

/// Rectangularized bundle dimensions of one glass fabric style, all in mils.
/// x1/x2/x3 describe the bundles running along Y (repeating along X with
/// pitch x3, width x2, thickness x1); y1/y2/y3 describe the bundles running
/// along X (repeating along Y with pitch y3, width y2, thickness y1).
struct FabricStyle {
    std::string name;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 0.0;

    double period_x() const { return x3; }
    double period_y() const { return y3; }

    void validate() const;  // throws std::invalid_argument
};

struct Laminate {
    double h = 4.0;          // dielectric thickness, mil
    double t = 0.75;         // trace metal thickness, mil
    double eps_glass = 6.0;  // relative permittivity
    double eps_resin = 3.5;

    void validate() const;
};

enum class TraceKind { single, differential };

struct TraceLayout {
    TraceKind kind = TraceKind::single;
    double w = 4.0;       // trace width, mil
    double s = 0.0;       // edge-to-edge separation, mil (differential only)
    double offset = 0.0;  // single: trace centerline; differential: pair midpoint

    void validate() const;
};

/// Immutable periodic permittivity field of a woven-glass laminate: two
/// abutting bundle layers of thickness x1 each, centered at z = h/2. The
/// lower layer holds the Y-running bundles, the upper layer the X-running
/// ones; each bundle is centered within its pitch, so (x, y) = (0, 0) sits
/// on bundle centerlines of both layers.
class LatticeModel {
public:
    LatticeModel(const FabricStyle& style, const Laminate& laminate);

    const FabricStyle& style() const { return style_; }
    const Laminate& laminate() const { return laminate_; }

    /// Relative permittivity at a point: 1.0 above the laminate (z > h),
    /// eps_glass inside a bundle, eps_resin elsewhere in 0 <= z <= h.
    /// Periodic in x (period x3) and y (period y3), mirror-symmetric in y.
    double eps_at(double x, double y, double z) const;

    /// Glass volume fraction of one x3 * y3 * h unit cell, closed form.
    double glass_fraction() const;

private:
    FabricStyle style_;
    Laminate laminate_;
};

LatticeModel make_lattice(const FabricStyle& style, const Laminate& laminate);

/// Cell-centered sampling of eps_at over a cross-section at longitudinal
/// position x. No conductors; the caller adds those.
DielectricRaster raster_slice(const LatticeModel& model, double x, const Grid2D& grid);

// ---------------------------------------------------------------------------
// Fabric catalog
// ---------------------------------------------------------------------------

struct CatalogEntry {
    FabricStyle style;
    Laminate laminate;  // defaults unless overridden per record
};

class CatalogError : public std::runtime_error {
public:
    CatalogError(const std::string& msg, int line)
        : std::runtime_error(msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

/// The four built-in fabric styles (1035, 1080, 1078, 3313) with default
/// laminate parameters.
std::vector<CatalogEntry> builtin_catalog();

/// Parses a plain-text catalog: `[name]` section headers followed by
/// `key = value` lines with keys x1..y3 and optional laminate overrides
/// h, t, eps_glass, eps_resin. '#' starts a comment. Throws CatalogError
/// with the offending line number.
std::vector<CatalogEntry> load_catalog(const std::string& path);
std::vector<CatalogEntry> parse_catalog(const std::string& text);

}  // namespace fwe
