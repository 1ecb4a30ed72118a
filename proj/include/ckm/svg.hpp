#pragma once

// Static SVG line plots of field components against x. Convenience views of
// the CSV data, never the source of truth.

#include <string>
#include <vector>

namespace ckm {

struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

/// One polyline per series over the shared abscissa; optional vertical marker
/// lines (pole locations).
void write_line_plot_svg(const std::string& path, const std::vector<double>& x,
                         const std::vector<PlotSeries>& series,
                         const std::vector<double>& vertical_markers = {});

}  // namespace ckm
