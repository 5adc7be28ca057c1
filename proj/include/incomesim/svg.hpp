#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "incomesim/csv.hpp"

namespace incomesim {

/// Minimal deterministic SVG line chart for year-indexed series.
class SvgLineChart {
  public:
    SvgLineChart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(const std::string& name, std::vector<std::pair<double, double>> points) {
        series_.push_back({name, std::move(points)});
    }

    std::string render(int width = 760, int height = 480) const {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series_)
            for (auto [x, y] : s.points) {
                xmin = std::min(xmin, x); xmax = std::max(xmax, x);
                ymin = std::min(ymin, y); ymax = std::max(ymax, y);
            }
        if (!(xmin < xmax)) { xmin -= 1; xmax += 1; }
        double pad = 0.05 * (ymax - ymin);
        if (!(pad > 0)) pad = 0.05;
        ymin -= pad; ymax += pad;

        const double ml = 64, mr = 16, mt = 32, mb = 44;
        const double pw = width - ml - mr, ph = height - mt - mb;
        auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
        auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };
        auto f = [](double v) { return csv::fixed6(v); };

        static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
        std::string out;
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
               "\" height=\"" + std::to_string(height) + "\">\n";
        out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out += "<text x=\"" + f(ml) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
               title_ + "</text>\n";
        out += "<rect x=\"" + f(ml) + "\" y=\"" + f(mt) + "\" width=\"" + f(pw) + "\" height=\"" +
               f(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

        const int nticks = 5;
        for (int i = 0; i <= nticks; ++i) {
            double x = xmin + (xmax - xmin) * i / nticks;
            double y = ymin + (ymax - ymin) * i / nticks;
            char xbuf[32], ybuf[32];
            std::snprintf(xbuf, sizeof xbuf, "%.0f", x);
            std::snprintf(ybuf, sizeof ybuf, "%.3f", y);
            out += "<line x1=\"" + f(px(x)) + "\" y1=\"" + f(mt + ph) + "\" x2=\"" + f(px(x)) +
                   "\" y2=\"" + f(mt + ph + 4) + "\" stroke=\"#444\"/>\n";
            out += "<text x=\"" + f(px(x)) + "\" y=\"" + f(mt + ph + 18) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
                   xbuf + "</text>\n";
            out += "<line x1=\"" + f(ml - 4) + "\" y1=\"" + f(py(y)) + "\" x2=\"" + f(ml) +
                   "\" y2=\"" + f(py(y)) + "\" stroke=\"#444\"/>\n";
            out += "<text x=\"" + f(ml - 8) + "\" y=\"" + f(py(y) + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + ybuf +
                   "</text>\n";
        }
        out += "<text x=\"" + f(ml + pw / 2) + "\" y=\"" + f(mt + ph + 36) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
               x_label_ + "</text>\n";
        out += "<text x=\"16\" y=\"" + f(mt + ph / 2) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 16 " + f(mt + ph / 2) + ")\">" + y_label_ + "</text>\n";

        for (std::size_t si = 0; si < series_.size(); ++si) {
            const auto& s = series_[si];
            const char* color = colors[si % 5];
            std::string pts;
            for (auto [x, y] : s.points)
                pts += f(px(x)) + "," + f(py(y)) + " ";
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
            double ly = mt + 16 + 16 * static_cast<double>(si);
            out += "<line x1=\"" + f(ml + pw - 150) + "\" y1=\"" + f(ly) + "\" x2=\"" +
                   f(ml + pw - 130) + "\" y2=\"" + f(ly) + "\" stroke=\"" + color +
                   "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + f(ml + pw - 124) + "\" y=\"" + f(ly + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"11\">" + s.name + "</text>\n";
        }
        out += "</svg>\n";
        return out;
    }

  private:
    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> points;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

} // namespace incomesim
