#include "fwe/raster.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace fwe {

void Grid2D::validate() const {
    if (ny < 8 || nz < 8)
        throw std::invalid_argument("Grid2D: ny and nz must be at least 8");
    if (!(dy > 0.0) || !(dz > 0.0))
        throw std::invalid_argument("Grid2D: cell spacing must be positive");
}

DielectricRaster::DielectricRaster(const Grid2D& grid, double eps_fill) : grid_(grid) {
    grid_.validate();
    if (eps_fill < 1.0)
        throw std::invalid_argument("DielectricRaster: permittivity must be >= 1");
    eps_.assign(static_cast<size_t>(grid_.cells()), eps_fill);
    conductor_of_.assign(static_cast<size_t>(grid_.cells()), -1);
}

void DielectricRaster::set_eps(int i, int j, double value) {
    if (value < 1.0)
        throw std::invalid_argument("DielectricRaster: permittivity must be >= 1");
    eps_[grid_.index(i, j)] = value;
}

void DielectricRaster::fill_eps(const std::vector<double>& values) {
    if (values.size() != eps_.size())
        throw std::invalid_argument("DielectricRaster: size mismatch in fill_eps");
    for (double v : values) {
        if (v < 1.0)
            throw std::invalid_argument("DielectricRaster: permittivity must be >= 1");
    }
    eps_ = values;
}

void DielectricRaster::add_conductor(const std::string& id, std::vector<int> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (int c : cells) {
        if (c < 0 || c >= grid_.cells())
            throw std::invalid_argument("DielectricRaster: conductor cell out of range");
        if (conductor_of_[c] != -1)
            throw std::invalid_argument("DielectricRaster: conductor masks must be disjoint");
    }
    for (const auto& existing : conductors_) {
        if (existing.id == id)
            throw std::invalid_argument("DielectricRaster: duplicate conductor id '" + id + "'");
    }
    const int index = static_cast<int>(conductors_.size());
    for (int c : cells) conductor_of_[c] = index;
    conductors_.push_back(ConductorMask{id, std::move(cells)});
}

void DielectricRaster::add_conductor_rect(const std::string& id, int i_begin, int i_end,
                                          int j_begin, int j_end) {
    if (i_begin < 0 || i_end > grid_.ny || j_begin < 0 || j_end > grid_.nz ||
        i_begin >= i_end || j_begin >= j_end)
        throw std::invalid_argument("DielectricRaster: conductor rectangle out of range");
    std::vector<int> cells;
    cells.reserve(static_cast<size_t>(i_end - i_begin) * (j_end - j_begin));
    for (int j = j_begin; j < j_end; ++j)
        for (int i = i_begin; i < i_end; ++i) cells.push_back(grid_.index(i, j));
    add_conductor(id, std::move(cells));
}

const ConductorMask& DielectricRaster::conductor(const std::string& id) const {
    for (const auto& c : conductors_)
        if (c.id == id) return c;
    throw std::invalid_argument("DielectricRaster: no conductor '" + id + "'");
}

std::string to_text_matrix(const DielectricRaster& raster) {
    const Grid2D& g = raster.grid();
    std::string out;
    out.reserve(static_cast<size_t>(g.cells()) * 5);
    char buf[32];
    for (int j = g.nz - 1; j >= 0; --j) {
        for (int i = 0; i < g.ny; ++i) {
            std::snprintf(buf, sizeof buf, "%.6g", raster.eps_at_cell(i, j));
            if (i) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace fwe
