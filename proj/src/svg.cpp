#include "ckm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ckm/errors.hpp"

namespace ckm {

namespace {

constexpr double kW = 820, kH = 500;
constexpr double kL = 70, kR = 20, kT = 20, kB = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string f4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::vector<double>& x,
                         const std::vector<PlotSeries>& series,
                         const std::vector<double>& vertical_markers) {
    std::ofstream os(path);
    if (!os) throw validation_error("cannot open output file " + path);
    double x_lo = x.empty() ? 0 : x.front(), x_hi = x.empty() ? 1 : x.back();
    double y_lo = 0, y_hi = 1;
    bool have = false;
    for (const auto& s : series)
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            if (!have) { y_lo = y_hi = v; have = true; }
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    if (!have || y_hi == y_lo) { y_lo -= 1.0; y_hi += 1.0; }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad; y_hi += pad;

    auto px = [&](double v) { return kL + (v - x_lo) / (x_hi - x_lo) * (kW - kL - kR); };
    auto py = [&](double v) { return kH - kB - (v - y_lo) / (y_hi - y_lo) * (kH - kT - kB); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
       << kH - kT - kB << "\" fill=\"white\" stroke=\"#444\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        os << "<line x1=\"" << f2(px(xv)) << "\" y1=\"" << kH - kB << "\" x2=\"" << f2(px(xv))
           << "\" y2=\"" << kH - kB + 6 << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << f2(px(xv)) << "\" y=\"" << kH - kB + 22
           << "\" font-size=\"12\" text-anchor=\"middle\">" << f4(xv) << "</text>\n";
        os << "<line x1=\"" << kL - 6 << "\" y1=\"" << f2(py(yv)) << "\" x2=\"" << kL << "\" y2=\""
           << f2(py(yv)) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << kL - 10 << "\" y=\"" << f2(py(yv) + 4)
           << "\" font-size=\"12\" text-anchor=\"end\">" << f4(yv) << "</text>\n";
    }

    for (double m : vertical_markers) {
        if (m < x_lo || m > x_hi) continue;
        os << "<line x1=\"" << f2(px(m)) << "\" y1=\"" << kT << "\" x2=\"" << f2(px(m)) << "\" y2=\""
           << kH - kB << "\" stroke=\"#d62728\" stroke-dasharray=\"5,4\"/>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = kColors[s % 6];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < series[s].y.size(); ++i) {
            const double v = series[s].y[i];
            if (!std::isfinite(v)) continue;
            os << f2(px(x[i])) << "," << f2(py(v)) << " ";
        }
        os << "\"/>\n";
        os << "<text x=\"" << kL + 12 << "\" y=\"" << kT + 18 + 16 * static_cast<double>(s)
           << "\" font-size=\"13\" fill=\"" << col << "\">" << series[s].label << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace ckm
