#pragma once

#include <string>
#include <vector>

namespace becmerge {

/// Minimal static line chart, one panel per SvgPanel, stacked vertically.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
};

struct SvgPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool legend = true;
    std::vector<SvgSeries> series;
};

std::string render_svg(const std::vector<SvgPanel>& panels, int width = 720,
                       int panel_height = 340);

}  // namespace becmerge
