#include "lindyn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lindyn {

std::string svg_line_chart(const std::string& title,
                           const std::vector<std::pair<double, double>>& points,
                           const std::string& x_label, const std::string& y_label, int width,
                           int height) {
    const int ml = 60, mr = 20, mt = 40, mb = 45;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!points.empty()) {
        xmin = xmax = points.front().first;
        ymin = ymax = points.front().second;
        for (const auto& [x, y] : points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"15\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 "
        << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", xmin);
    out << "<text x=\"" << ml << "\" y=\"" << height - mb + 16 << "\" font-size=\"10\">" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", xmax);
    out << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 16
        << "\" text-anchor=\"end\" font-size=\"10\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", ymax);
    out << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 4
        << "\" text-anchor=\"end\" font-size=\"10\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", ymin);
    out << "<text x=\"" << ml - 4 << "\" y=\"" << height - mb
        << "\" text-anchor=\"end\" font-size=\"10\">" << buf << "</text>\n";
    if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : points) out << sx(x) << "," << sy(y) << " ";
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace lindyn
