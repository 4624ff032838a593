#pragma once

#include <string>
#include <vector>

namespace fwe {

/// Uniform cell grid over a transverse cross-section. y is the transverse
/// (in-plane) axis, z the height axis. Cell (i, j) spans
/// [y0 + i*dy, y0 + (i+1)*dy] x [z0 + j*dz, z0 + (j+1)*dz].
struct Grid2D {
    int ny = 0;
    int nz = 0;
    double dy = 0.0;  // mil
    double dz = 0.0;  // mil
    double y0 = 0.0;  // mil
    double z0 = 0.0;  // mil

    void validate() const;  // throws std::invalid_argument

    int cells() const { return ny * nz; }
    int index(int i, int j) const { return j * ny + i; }
    double cell_y(int i) const { return y0 + (i + 0.5) * dy; }
    double cell_z(int j) const { return z0 + (j + 0.5) * dz; }
};

struct ConductorMask {
    std::string id;
    std::vector<int> cells;  // linear cell indices, sorted
};

/// Per-cell relative permittivity plus conductor masks. The ground plane is
/// implied at the z0 boundary; left/right/top boundaries are insulating.
class DielectricRaster {
public:
    DielectricRaster() = default;
    explicit DielectricRaster(const Grid2D& grid, double eps_fill = 1.0);

    const Grid2D& grid() const { return grid_; }
    const std::vector<double>& eps() const { return eps_; }
    double eps_at_cell(int i, int j) const { return eps_[grid_.index(i, j)]; }
    void set_eps(int i, int j, double value);
    void fill_eps(const std::vector<double>& values);  // size must match

    /// Registers a conductor over the given cells. Masks must stay disjoint.
    void add_conductor(const std::string& id, std::vector<int> cells);
    void add_conductor_rect(const std::string& id, int i_begin, int i_end, int j_begin, int j_end);

    const std::vector<ConductorMask>& conductors() const { return conductors_; }
    const ConductorMask& conductor(const std::string& id) const;
    /// Per-cell conductor index, -1 for free cells.
    const std::vector<int>& conductor_of() const { return conductor_of_; }

private:
    Grid2D grid_;
    std::vector<double> eps_;
    std::vector<ConductorMask> conductors_;
    std::vector<int> conductor_of_;
};

/// Comma-separated per-cell permittivity matrix, one row per z-level,
/// top row first.
std::string to_text_matrix(const DielectricRaster& raster);

}  // namespace fwe
