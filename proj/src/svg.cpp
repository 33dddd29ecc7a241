#include "gogrow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gogrow/csv.hpp"
#include "gogrow/errors.hpp"

namespace gogrow::svg {

namespace {
constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 30, kTop = 40, kBottom = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
}  // namespace

void LinePlot::add_series(std::string label, std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size()) throw DomainError("svg: series x/y lengths differ");
    series_.push_back({std::move(label), std::move(x), std::move(y)});
}

void LinePlot::write(const std::filesystem::path& path) const {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            } else {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title_ << "</text>\n";

    // frame and axis labels
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel_ << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << kTop + ph / 2
        << ")\">" << ylabel_ << "</text>\n";

    // min/max tick labels
    out << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << csv::format(xmin) << "</text>\n"
        << "<text x=\"" << kLeft + pw << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << csv::format(xmax) << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(ymin)
        << "\" text-anchor=\"end\" font-size=\"11\">" << csv::format(ymin) << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(ymax) + 10
        << "\" text-anchor=\"end\" font-size=\"11\">" << csv::format(ymax) << "</text>\n";

    for (std::size_t k = 0; k < series_.size(); ++k) {
        const auto& s = series_[k];
        const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        const double ly = kTop + 16 + 16 * static_cast<double>(k);
        out << "<line x1=\"" << kLeft + pw - 130 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << kLeft + pw - 110 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kLeft + pw - 104 << "\" y=\"" << ly
            << "\" font-size=\"11\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw ConfigError("error while writing " + path.string());
}

}  // namespace gogrow::svg
