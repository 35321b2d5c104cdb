#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace rb::io::svg {

inline constexpr double kWidth = 640.0;
inline constexpr double kHeight = 400.0;
inline constexpr double kMarginLeft = 70.0;
inline constexpr double kMarginRight = 30.0;
inline constexpr double kMarginTop = 40.0;
inline constexpr double kMarginBottom = 60.0;

inline constexpr std::array<const char*, 6> kPalette = {
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};

namespace detail {

/// Fixed-precision coordinate formatting keeps emitted bytes deterministic.
inline std::string num(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return buffer;
}

inline std::string label_num(double v) {
    char buffer[40];
    if (v != 0.0 && (std::fabs(v) >= 1e4 || std::fabs(v) < 1e-2))
        std::snprintf(buffer, sizeof buffer, "%.2e", v);
    else
        std::snprintf(buffer, sizeof buffer, "%.3g", v);
    return buffer;
}

struct Frame {
    double value_min = 0.0;
    double value_max = 1.0;

    double x(double fraction) const {
        return kMarginLeft + fraction * (kWidth - kMarginLeft - kMarginRight);
    }
    double y(double value) const {
        const double span = value_max - value_min;
        const double f = span > 0.0 ? (value - value_min) / span : 0.5;
        return kHeight - kMarginBottom - f * (kHeight - kMarginTop - kMarginBottom);
    }
};

inline Frame fit_frame(double lo, double hi) {
    if (!(hi > lo)) hi = lo + 1.0;
    const double pad = 0.08 * (hi - lo);
    return {lo - pad, hi + pad};
}

inline void open_chart(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-size=\"15\">" << title << "</text>\n";
}

inline void draw_axes(std::ostringstream& out, const Frame& frame,
                      const std::string& y_label) {
    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1)
        << "\" y2=\"" << num(y0) << "\" stroke=\"#333\"/>\n";
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0)
        << "\" y2=\"" << num(y1) << "\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double value =
            frame.value_min + (frame.value_max - frame.value_min) * t / 4.0;
        const double y = frame.y(value);
        out << "<line x1=\"" << num(x0 - 4) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(x0) << "\" y2=\"" << num(y) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\">" << label_num(value) << "</text>\n";
    }
    out << "<text x=\"16\" y=\"" << num((y0 + y1) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num((y0 + y1) / 2)
        << ")\">" << y_label << "</text>\n";
}

inline void x_category_label(std::ostringstream& out, double x, const std::string& text) {
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kMarginBottom + 18)
        << "\" text-anchor=\"middle\">" << text << "</text>\n";
}

} // namespace detail

/**
 * One box-and-whiskers per column: box from the first to the third quartile,
 * a bar at the median, whiskers to the extremes, and a dashed reference line
 * at 1 (the per-case best).
 */
inline std::string box_plot(const std::vector<std::string>& labels,
                            const std::vector<std::vector<double>>& columns,
                            const std::string& title, const std::string& y_label) {
    double lo = 1.0, hi = 1.0;
    for (const auto& column : columns)
        for (double v : column) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const detail::Frame frame = detail::fit_frame(lo, hi);

    std::ostringstream out;
    detail::open_chart(out, title);
    detail::draw_axes(out, frame, y_label);
    out << "<line x1=\"" << detail::num(frame.x(0.0)) << "\" y1=\""
        << detail::num(frame.y(1.0)) << "\" x2=\"" << detail::num(frame.x(1.0))
        << "\" y2=\"" << detail::num(frame.y(1.0))
        << "\" stroke=\"#999\" stroke-dasharray=\"6 4\"/>\n";

    const std::size_t k = columns.size();
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> sorted = columns[j];
        std::sort(sorted.begin(), sorted.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(sorted.size() - 1);
            const std::size_t i = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(i);
            return i + 1 < sorted.size() ? sorted[i] * (1 - frac) + sorted[i + 1] * frac
                                         : sorted[i];
        };
        const double center = frame.x((j + 0.5) / static_cast<double>(k));
        const double half = 0.3 * (frame.x(1.0 / static_cast<double>(k)) - frame.x(0.0));
        const double q1 = quantile(0.25), q2 = quantile(0.5), q3 = quantile(0.75);
        const char* color = kPalette[j % kPalette.size()];

        out << "<line x1=\"" << detail::num(center) << "\" y1=\""
            << detail::num(frame.y(sorted.front())) << "\" x2=\"" << detail::num(center)
            << "\" y2=\"" << detail::num(frame.y(sorted.back())) << "\" stroke=\"" << color
            << "\"/>\n";
        for (double whisker : {sorted.front(), sorted.back()})
            out << "<line x1=\"" << detail::num(center - half / 2) << "\" y1=\""
                << detail::num(frame.y(whisker)) << "\" x2=\""
                << detail::num(center + half / 2) << "\" y2=\""
                << detail::num(frame.y(whisker)) << "\" stroke=\"" << color << "\"/>\n";
        out << "<rect x=\"" << detail::num(center - half) << "\" y=\""
            << detail::num(frame.y(q3)) << "\" width=\"" << detail::num(2 * half)
            << "\" height=\"" << detail::num(frame.y(q1) - frame.y(q3)) << "\" fill=\""
            << color << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/>\n";
        out << "<line x1=\"" << detail::num(center - half) << "\" y1=\""
            << detail::num(frame.y(q2)) << "\" x2=\"" << detail::num(center + half)
            << "\" y2=\"" << detail::num(frame.y(q2)) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        detail::x_category_label(out, center, labels[j]);
    }
    out << "</svg>\n";
    return out.str();
}

/// Square heat grid of win fractions in [0, 1] with the value printed in
/// each cell; rows beat columns.
inline std::string heat_grid(const std::vector<std::string>& labels,
                             const std::vector<std::vector<double>>& matrix,
                             const std::string& title) {
    const std::size_t k = labels.size();
    const double grid_left = kMarginLeft + 40.0;
    const double grid_top = kMarginTop + 10.0;
    const double cell = std::min((kWidth - grid_left - kMarginRight) / k,
                                 (kHeight - grid_top - kMarginBottom + 20.0) / k);

    std::ostringstream out;
    detail::open_chart(out, title);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double v = std::clamp(matrix[i][j], 0.0, 1.0);
            // White at 0 toward a saturated blue at 1.
            const int r = static_cast<int>(255 - v * (255 - 70));
            const int g = static_cast<int>(255 - v * (255 - 114));
            const int b = static_cast<int>(255 - v * (255 - 176));
            const double x = grid_left + j * cell;
            const double y = grid_top + i * cell;
            char fill[16];
            std::snprintf(fill, sizeof fill, "#%02x%02x%02x", r, g, b);
            out << "<rect x=\"" << detail::num(x) << "\" y=\"" << detail::num(y)
                << "\" width=\"" << detail::num(cell) << "\" height=\"" << detail::num(cell)
                << "\" fill=\"" << fill << "\" stroke=\"#ccc\"/>\n";
            out << "<text x=\"" << detail::num(x + cell / 2) << "\" y=\""
                << detail::num(y + cell / 2 + 4) << "\" text-anchor=\"middle\" fill=\""
                << (v > 0.6 ? "white" : "#333") << "\">" << detail::num(v) << "</text>\n";
        }
        out << "<text x=\"" << detail::num(grid_left - 8)
            << "\" y=\"" << detail::num(grid_top + i * cell + cell / 2 + 4)
            << "\" text-anchor=\"end\">" << labels[i] << "</text>\n";
        out << "<text x=\"" << detail::num(grid_left + i * cell + cell / 2) << "\" y=\""
            << detail::num(grid_top + k * cell + 16) << "\" text-anchor=\"middle\">"
            << labels[i] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

/// Plain vertical bars, one per label.
inline std::string bar_chart(const std::vector<std::string>& labels,
                             const std::vector<double>& values, const std::string& title,
                             const std::string& y_label) {
    double lo = 0.0, hi = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const detail::Frame frame = detail::fit_frame(lo, hi);

    std::ostringstream out;
    detail::open_chart(out, title);
    detail::draw_axes(out, frame, y_label);
    const std::size_t k = values.size();
    for (std::size_t j = 0; j < k; ++j) {
        const double center = frame.x((j + 0.5) / static_cast<double>(k));
        const double half = 0.32 * (frame.x(1.0 / static_cast<double>(k)) - frame.x(0.0));
        const double base = frame.y(std::max(0.0, frame.value_min));
        const double top = frame.y(values[j]);
        out << "<rect x=\"" << detail::num(center - half) << "\" y=\""
            << detail::num(std::min(base, top)) << "\" width=\"" << detail::num(2 * half)
            << "\" height=\"" << detail::num(std::fabs(base - top)) << "\" fill=\""
            << kPalette[j % kPalette.size()] << "\"/>\n";
        detail::x_category_label(out, center, labels[j]);
    }
    out << "</svg>\n";
    return out.str();
}

/// One polyline per series over shared categorical x positions, with a
/// legend in the top-right corner.
inline std::string line_chart(const std::vector<std::string>& x_labels,
                              const std::vector<std::string>& series_labels,
                              const std::vector<std::vector<double>>& series_values,
                              const std::string& title, const std::string& y_label) {
    double lo = 1e300, hi = -1e300;
    for (const auto& series : series_values)
        for (double v : series) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const detail::Frame frame = detail::fit_frame(lo, hi);

    std::ostringstream out;
    detail::open_chart(out, title);
    detail::draw_axes(out, frame, y_label);
    const std::size_t n = x_labels.size();
    for (std::size_t t = 0; t < n; ++t) {
        const double x = frame.x(n == 1 ? 0.5 : static_cast<double>(t) / (n - 1));
        detail::x_category_label(out, x, x_labels[t]);
    }
    for (std::size_t s = 0; s < series_values.size(); ++s) {
        const char* color = kPalette[s % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t t = 0; t < n; ++t) {
            const double x = frame.x(n == 1 ? 0.5 : static_cast<double>(t) / (n - 1));
            out << detail::num(x) << "," << detail::num(frame.y(series_values[s][t])) << " ";
        }
        out << "\"/>\n";
        const double ly = kMarginTop + 16.0 * static_cast<double>(s);
        out << "<rect x=\"" << detail::num(kWidth - 150) << "\" y=\"" << detail::num(ly)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << detail::num(kWidth - 132) << "\" y=\"" << detail::num(ly + 10)
            << "\">" << series_labels[s] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace rb::io::svg
