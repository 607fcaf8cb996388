#include "becmerge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "becmerge/csv.hpp"

namespace becmerge {

namespace {

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double m = 0.04 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg(const std::vector<SvgPanel>& panels, int width, int panel_height) {
    const int total_height = panel_height * static_cast<int>(panels.size());
    const double ml = 64, mr = 16, mt = 28, mb = 44;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(total_height) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const SvgPanel& panel = panels[p];
        const double top = p * panel_height;
        const double plot_w = width - ml - mr;
        const double plot_h = panel_height - mt - mb;

        auto xt = [&](double v) { return panel.log_x ? std::log10(std::max(v, 1e-300)) : v; };

        Range xr, yr;
        for (const auto& s : panel.series) {
            for (double v : s.x) xr.grow(xt(v));
            for (double v : s.y) yr.grow(v);
        }
        xr.pad();
        yr.pad();

        auto px = [&](double v) { return ml + (xt(v) - xr.lo) / (xr.hi - xr.lo) * plot_w; };
        auto py = [&](double v) { return top + mt + (yr.hi - v) / (yr.hi - yr.lo) * plot_h; };

        svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(top + mt) + "\" width=\"" + fmt(plot_w) +
               "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"#333\"/>\n";
        if (!panel.title.empty()) {
            svg += "<text x=\"" + fmt(ml + plot_w / 2) + "\" y=\"" + fmt(top + 18) +
                   "\" text-anchor=\"middle\" font-size=\"14\">" + panel.title + "</text>\n";
        }

        // 5 ticks per axis
        for (int i = 0; i <= 4; ++i) {
            const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
            const double gx = ml + plot_w * i / 4.0;
            const double label = panel.log_x ? std::pow(10.0, fx) : fx;
            svg += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(top + mt) + "\" x2=\"" + fmt(gx) +
                   "\" y2=\"" + fmt(top + mt + plot_h) + "\" stroke=\"#ddd\"/>\n";
            svg += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(top + mt + plot_h + 16) +
                   "\" text-anchor=\"middle\" font-size=\"11\">" + fmt(label) + "</text>\n";

            const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
            const double gy = py(fy);
            svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(gy) + "\" x2=\"" + fmt(ml + plot_w) +
                   "\" y2=\"" + fmt(gy) + "\" stroke=\"#ddd\"/>\n";
            svg += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(gy + 4) +
                   "\" text-anchor=\"end\" font-size=\"11\">" + fmt(fy) + "</text>\n";
        }
        svg += "<text x=\"" + fmt(ml + plot_w / 2) + "\" y=\"" + fmt(top + panel_height - 8) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + panel.x_label + "</text>\n";
        svg += "<text x=\"14\" y=\"" + fmt(top + mt + plot_h / 2) +
               "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
               fmt(top + mt + plot_h / 2) + ")\">" + panel.y_label + "</text>\n";

        for (const auto& s : panel.series) {
            std::string pts;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
            }
            svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.2\"";
            if (s.dashed) svg += " stroke-dasharray=\"5,3\"";
            svg += " points=\"" + pts + "\"/>\n";
        }
        if (panel.legend) {
            double ly = top + mt + 14;
            for (const auto& s : panel.series) {
                if (s.label.empty()) continue;
                svg += "<line x1=\"" + fmt(ml + 10) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
                       fmt(ml + 34) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + s.color +
                       "\" stroke-width=\"1.5\"" + (s.dashed ? " stroke-dasharray=\"5,3\"" : "") +
                       "/>\n";
                svg += "<text x=\"" + fmt(ml + 40) + "\" y=\"" + fmt(ly) +
                       "\" font-size=\"11\">" + s.label + "</text>\n";
                ly += 15;
            }
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace becmerge
