#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lindyn {

// Minimal self-contained line chart, enough to eyeball density curves and
// d_n decay without external plotting.
std::string svg_line_chart(const std::string& title,
                           const std::vector<std::pair<double, double>>& points,
                           const std::string& x_label, const std::string& y_label,
                           int width = 640, int height = 400);

}  // namespace lindyn
