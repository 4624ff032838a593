#include "fwe/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fwe {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kPalette[] = {"#1f6fb5", "#b5651f", "#2e8b57", "#8b2e62", "#6f6f1f", "#1f1fb5"};

struct Axis {
    double lo = 0.0, hi = 1.0;
    double tick = 1.0;
};

Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double tick = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (raw <= m * mag) {
            tick = m * mag;
            break;
        }
    }
    Axis a;
    a.tick = tick;
    a.lo = std::floor(lo / tick) * tick;
    a.hi = std::ceil(hi / tick) * tick;
    if (a.lo == a.hi) a.hi = a.lo + tick;
    return a;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

class Frame {
public:
    Frame(const std::string& title, const std::string& x_label, const std::string& y_label,
          const Axis& x, const Axis& y)
        : x_(x), y_(y) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                      "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
                      kWidth, kHeight, kWidth, kHeight);
        body_ = buf;
        body_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n",
                      kWidth / 2, escape(title).c_str());
        body_ += buf;
        // ticks and grid
        for (double t = x_.lo; t <= x_.hi + x_.tick * 1e-9; t += x_.tick) {
            const double px = sx(t);
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"#ddd\"/>\n",
                          px, kMarginTop, px, kHeight - kMarginBottom);
            body_ += buf;
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\">%s</text>\n", px,
                          kHeight - kMarginBottom + 18, fmt(t).c_str());
            body_ += buf;
        }
        for (double t = y_.lo; t <= y_.hi + y_.tick * 1e-9; t += y_.tick) {
            const double py = sy(t);
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"#ddd\"/>\n",
                          kMarginLeft, py, kWidth - kMarginRight, py);
            body_ += buf;
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n",
                          kMarginLeft - 8, py + 4, fmt(t).c_str());
            body_ += buf;
        }
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                      "stroke=\"black\"/>\n",
                      kMarginLeft, kMarginTop, kWidth - kMarginLeft - kMarginRight,
                      kHeight - kMarginTop - kMarginBottom);
        body_ += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\">%s</text>\n", kWidth / 2,
                      kHeight - 12, escape(x_label).c_str());
        body_ += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"16\" y=\"%d\" text-anchor=\"middle\" "
                      "transform=\"rotate(-90 16 %d)\">%s</text>\n",
                      kHeight / 2, kHeight / 2, escape(y_label).c_str());
        body_ += buf;
    }

    double sx(double v) const {
        return kMarginLeft +
               (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kMarginLeft - kMarginRight);
    }
    double sy(double v) const {
        return kHeight - kMarginBottom -
               (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kMarginTop - kMarginBottom);
    }

    void add(const std::string& chunk) { body_ += chunk; }
    std::string finish() { return body_ + "</svg>\n"; }

private:
    Axis x_, y_;
    std::string body_;
};

std::string star_marker(double cx, double cy, const std::string& color) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%.1f %.1f l0 -8 M%.1f %.1f l0 8 M%.1f %.1f l-8 0 M%.1f %.1f l8 0 "
                  "M%.1f %.1f l-5 -5 M%.1f %.1f l5 5 M%.1f %.1f l5 -5 M%.1f %.1f l-5 5\" "
                  "stroke=\"%s\" stroke-width=\"1.2\"/>\n",
                  cx, cy, cx, cy, cx, cy, cx, cy, cx, cy, cx, cy, cx, cy, cx, cy, color.c_str());
    return buf;
}

}  // namespace

std::string svg_xy_chart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgSeries>& series) {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xlo = xhi = s.x[i];
                ylo = yhi = s.y[i];
                first = false;
            }
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    Frame frame(title, x_label, y_label, nice_axis(xlo, xhi), nice_axis(ylo, yhi));
    char buf[128];
    int color_index = 0;
    double legend_y = kMarginTop + 16;
    for (const auto& s : series) {
        const std::string color =
            s.color.empty() ? kPalette[color_index % 6] : s.color;
        ++color_index;
        if (s.line && s.x.size() > 1) {
            std::string points;
            for (size_t i = 0; i < s.x.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.1f,%.1f ", frame.sx(s.x[i]), frame.sy(s.y[i]));
                points += buf;
            }
            frame.add("<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" +
                      points + "\"/>\n");
        }
        if (s.markers)
            for (size_t i = 0; i < s.x.size(); ++i)
                frame.add(star_marker(frame.sx(s.x[i]), frame.sy(s.y[i]), color));
        if (!s.label.empty()) {
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%d\" y=\"%.1f\" fill=\"%s\">%s</text>\n", kMarginLeft + 10,
                          legend_y, color.c_str(), escape(s.label).c_str());
            frame.add(buf);
            legend_y += 16;
        }
    }
    return frame.finish();
}

std::string svg_histogram(const std::string& title, const std::string& x_label,
                          const std::vector<double>& edges, const std::vector<double>& density) {
    double dmax = 0.0;
    for (double d : density) dmax = std::max(dmax, d);
    Frame frame(title, x_label, "probability density",
                nice_axis(edges.front(), edges.back()), nice_axis(0.0, dmax));
    char buf[160];
    for (size_t b = 0; b < density.size(); ++b) {
        const double x0 = frame.sx(edges[b]);
        const double x1 = frame.sx(edges[b + 1]);
        const double y0 = frame.sy(density[b]);
        const double y1 = frame.sy(0.0);
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                      "fill=\"#1f6fb5\" stroke=\"white\"/>\n",
                      x0, y0, std::max(0.5, x1 - x0), std::max(0.0, y1 - y0));
        frame.add(buf);
    }
    return frame.finish();
}

std::string svg_grouped_bars(const std::string& title, const std::string& x_label,
                             const std::vector<std::string>& group_labels,
                             const std::vector<std::string>& series_labels,
                             const std::vector<std::vector<double>>& values) {
    double vmax = 0.0;
    for (const auto& row : values)
        for (double v : row) vmax = std::max(vmax, v);
    const size_t groups = group_labels.size();
    const size_t nseries = series_labels.size();
    Frame frame(title, x_label, "probability", Axis{0.0, static_cast<double>(groups), 1.0},
                nice_axis(0.0, std::max(vmax, 0.1)));
    char buf[200];
    const double group_w = (kWidth - kMarginLeft - kMarginRight) / static_cast<double>(groups);
    const double bar_w = group_w * 0.8 / static_cast<double>(nseries);
    for (size_t g = 0; g < groups; ++g) {
        const double gx = kMarginLeft + group_w * (g + 0.1);
        for (size_t s = 0; s < nseries; ++s) {
            const double v = values[s][g];
            const double y0 = frame.sy(v);
            const double y1 = frame.sy(0.0);
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                          "fill=\"%s\"/>\n",
                          gx + s * bar_w, y0, bar_w * 0.92, std::max(0.0, y1 - y0),
                          kPalette[s % 6]);
            frame.add(buf);
        }
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\">%s</text>\n",
                      gx + group_w * 0.4, kHeight - kMarginBottom + 18,
                      escape(group_labels[g]).c_str());
        frame.add(buf);
    }
    double legend_y = kMarginTop + 16;
    for (size_t s = 0; s < nseries; ++s) {
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%d\" y=\"%.1f\" width=\"12\" height=\"12\" fill=\"%s\"/>"
                      "<text x=\"%d\" y=\"%.1f\">%s</text>\n",
                      kWidth - 190, legend_y - 10, kPalette[s % 6], kWidth - 172, legend_y,
                      escape(series_labels[s]).c_str());
        frame.add(buf);
        legend_y += 18;
    }
    return frame.finish();
}

std::string svg_heatmap(const std::string& title, const DielectricRaster& raster) {
    const Grid2D& g = raster.grid();
    double emin = raster.eps()[0], emax = raster.eps()[0];
    for (double e : raster.eps()) {
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    if (emax == emin) emax = emin + 1.0;
    std::ostringstream out;
    const double cell = std::max(1.0, std::floor(std::min(1000.0 / g.ny, 600.0 / g.nz)));
    const double w = g.ny * cell, h = g.nz * cell;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << (h + 30)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<text x=\"" << w / 2 << "\" y=\"16\" text-anchor=\"middle\">" << escape(title)
        << "</text>\n";
    char buf[160];
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.ny; ++i) {
            const double f = (raster.eps_at_cell(i, j) - emin) / (emax - emin);
            const bool metal = raster.conductor_of()[g.index(i, j)] >= 0;
            int r, gg, b;
            if (metal) {
                r = 230; gg = 150; b = 40;
            } else {
                r = static_cast<int>(30 + 50 * f);
                gg = static_cast<int>(60 + 120 * (1.0 - f));
                b = static_cast<int>(120 + 120 * f);
            }
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" "
                          "fill=\"rgb(%d,%d,%d)\"/>\n",
                          i * cell, 24 + (g.nz - 1 - j) * cell, cell, cell, r, gg, b);
            out << buf;
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fwe
