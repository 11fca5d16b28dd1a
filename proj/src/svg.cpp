#include "gtg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gtg {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 56;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void open_svg(std::ofstream& out, const std::string& path, const std::string& title) {
    out.open(path);
    if (!out) throw std::runtime_error("svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

}  // namespace

void svg_loglog_scatter(const std::string& path, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<std::pair<double, double>>& points, bool with_fit,
                        double slope, double intercept) {
    double lx_min = 1e300, lx_max = -1e300, ly_min = 1e300, ly_max = -1e300;
    std::vector<std::pair<double, double>> logs;
    for (auto [x, y] : points) {
        if (!(x > 0.0 && y > 0.0)) continue;
        const double lx = std::log10(x), ly = std::log10(y);
        logs.push_back({lx, ly});
        lx_min = std::min(lx_min, lx);
        lx_max = std::max(lx_max, lx);
        ly_min = std::min(ly_min, ly);
        ly_max = std::max(ly_max, ly);
    }
    if (logs.empty()) {
        lx_min = ly_min = 0.0;
        lx_max = ly_max = 1.0;
    }
    if (lx_max - lx_min < 1e-9) { lx_min -= 0.5; lx_max += 0.5; }
    if (ly_max - ly_min < 1e-9) { ly_min -= 0.5; ly_max += 0.5; }
    const double pad_x = 0.05 * (lx_max - lx_min), pad_y = 0.08 * (ly_max - ly_min);
    lx_min -= pad_x; lx_max += pad_x; ly_min -= pad_y; ly_max += pad_y;

    const auto sx = [&](double lx) {
        return kLeft + (lx - lx_min) / (lx_max - lx_min) * (kWidth - kLeft - kRight);
    };
    const auto sy = [&](double ly) {
        return kHeight - kBottom - (ly - ly_min) / (ly_max - ly_min) * (kHeight - kTop - kBottom);
    };

    std::ofstream out;
    open_svg(out, path, title);
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
        << "\" height=\"" << kHeight - kTop - kBottom
        << "\" fill=\"none\" stroke=\"#444\"/>\n";

    // decade ticks
    for (int e = static_cast<int>(std::ceil(lx_min)); e <= static_cast<int>(std::floor(lx_max)); ++e) {
        out << "<line x1=\"" << sx(e) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << sx(e)
            << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << sx(e) << "\" y=\"" << kHeight - kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
            << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly_min)); e <= static_cast<int>(std::floor(ly_max)); ++e) {
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(e) << "\" x2=\"" << kLeft
            << "\" y2=\"" << sy(e) << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(e) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
            << "</text>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << y_label << "</text>\n";

    if (with_fit && !logs.empty()) {
        const double l10 = std::log(10.0);
        // y = exp(intercept) x^slope  ->  log10 y = slope*log10 x + intercept/ln 10
        const double y1 = slope * lx_min + intercept / l10;
        const double y2 = slope * lx_max + intercept / l10;
        out << "<line x1=\"" << sx(lx_min) << "\" y1=\"" << sy(y1) << "\" x2=\"" << sx(lx_max)
            << "\" y2=\"" << sy(y2) << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n"
            << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kTop + 16
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
            << "fill=\"#d62728\">slope " << fmt(slope) << "</text>\n";
    }
    for (auto [lx, ly] : logs)
        out << "<circle cx=\"" << sx(lx) << "\" cy=\"" << sy(ly)
            << "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n";
    out << "</svg>\n";
}

void svg_histogram(const std::string& path, const std::string& title, const std::string& x_label,
                   const std::vector<std::pair<std::string, double>>& bins) {
    double max_count = 1.0;
    for (const auto& [label, count] : bins) max_count = std::max(max_count, count);

    std::ofstream out;
    open_svg(out, path, title);
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const std::size_t m = std::max<std::size_t>(bins.size(), 1);
    const double bar_w = plot_w / m;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const double h = bins[i].second / max_count * (plot_h - 8);
        const double x = kLeft + i * bar_w;
        out << "<rect x=\"" << x + 1 << "\" y=\"" << kHeight - kBottom - h << "\" width=\""
            << bar_w - 2 << "\" height=\"" << h << "\" fill=\"#1f77b4\"/>\n";
        if (bins.size() <= 40 || i % (bins.size() / 20) == 0)
            out << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << kHeight - kBottom + 16
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
                << bins[i].first << "</text>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n</svg>\n";
}

}  // namespace gtg
