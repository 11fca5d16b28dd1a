#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gtg {

// Self-contained vector plots; no external renderer involved.

// Log-log scatter; when with_fit is set, draws exp(intercept) * x^slope.
void svg_loglog_scatter(const std::string& path, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<std::pair<double, double>>& points, bool with_fit,
                        double slope, double intercept);

// Bar chart over labeled bins.
void svg_histogram(const std::string& path, const std::string& title, const std::string& x_label,
                   const std::vector<std::pair<std::string, double>>& bins);

}  // namespace gtg
