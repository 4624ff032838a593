#pragma once

#include <string>
#include <vector>

#include "fwe/raster.hpp"

namespace fwe {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb5";
    bool line = true;
    bool markers = false;  // star markers at the samples
};

/// Line/marker chart with axes and ticks, e.g. delay or skew versus offset.
std::string svg_xy_chart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgSeries>& series);

/// Density histogram from uniform bin edges.
std::string svg_histogram(const std::string& title, const std::string& x_label,
                          const std::vector<double>& edges, const std::vector<double>& density);

/// Grouped vertical bars, one group per threshold, one bar per series.
std::string svg_grouped_bars(const std::string& title, const std::string& x_label,
                             const std::vector<std::string>& group_labels,
                             const std::vector<std::string>& series_labels,
                             const std::vector<std::vector<double>>& values);

/// Permittivity heat map of a raster cross-section.
std::string svg_heatmap(const std::string& title, const DielectricRaster& raster);

}  // namespace fwe
