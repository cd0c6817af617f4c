#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "calab/common.hpp"

namespace calab::cli {

struct PointGroup {
    std::string label;
    std::string color;
    bool filled = true;
    std::vector<Complex> points;
};

namespace svg_detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace svg_detail

/// Fixed-aspect complex-plane scatter plot. Bounds cover all points padded by
/// 10% per side; no timestamps or other run-varying content is emitted, so
/// identical inputs produce identical bytes.
inline void write_complex_plane_svg(std::ostream& os, const std::vector<PointGroup>& groups) {
    constexpr double kSize = 640.0;
    constexpr double kMargin = 48.0;

    double lo_re = 0.0, hi_re = 0.0, lo_im = 0.0, hi_im = 0.0;
    bool any = false;
    for (const PointGroup& g : groups) {
        for (const Complex& p : g.points) {
            if (!any) {
                lo_re = hi_re = p.real();
                lo_im = hi_im = p.imag();
                any = true;
            } else {
                lo_re = std::min(lo_re, p.real());
                hi_re = std::max(hi_re, p.real());
                lo_im = std::min(lo_im, p.imag());
                hi_im = std::max(hi_im, p.imag());
            }
        }
    }
    if (!any) {
        lo_re = lo_im = -1.0;
        hi_re = hi_im = 1.0;
    }
    double pad_re = 0.1 * (hi_re - lo_re);
    double pad_im = 0.1 * (hi_im - lo_im);
    if (pad_re == 0.0) pad_re = 1.0;
    if (pad_im == 0.0) pad_im = 1.0;
    lo_re -= pad_re;
    hi_re += pad_re;
    lo_im -= pad_im;
    hi_im += pad_im;

    const double span = kSize - 2.0 * kMargin;
    const double scale = std::min(span / (hi_re - lo_re), span / (hi_im - lo_im));
    const double mid_re = 0.5 * (lo_re + hi_re);
    const double mid_im = 0.5 * (lo_im + hi_im);
    auto px = [&](const Complex& p) { return kSize / 2.0 + (p.real() - mid_re) * scale; };
    auto py = [&](const Complex& p) { return kSize / 2.0 - (p.imag() - mid_im) * scale; };

    using svg_detail::fmt;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
          "viewBox=\"0 0 640 640\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\" stroke=\"#444\"/>\n";
    // Axes, when the origin lines cross the view.
    if (lo_re < 0.0 && hi_re > 0.0) {
        const double x = px(Complex(0, 0));
        os << "<line x1=\"" << fmt(x) << "\" y1=\"0\" x2=\"" << fmt(x)
           << "\" y2=\"640\" stroke=\"#ccc\"/>\n";
    }
    if (lo_im < 0.0 && hi_im > 0.0) {
        const double y = py(Complex(0, 0));
        os << "<line x1=\"0\" y1=\"" << fmt(y) << "\" x2=\"640\" y2=\"" << fmt(y)
           << "\" stroke=\"#ccc\"/>\n";
    }
    double legend_y = 24.0;
    for (const PointGroup& g : groups) {
        for (const Complex& p : g.points) {
            os << "<circle cx=\"" << fmt(px(p)) << "\" cy=\"" << fmt(py(p)) << "\" r=\"5\"";
            if (g.filled) {
                os << " fill=\"" << g.color << "\"";
            } else {
                os << " fill=\"none\" stroke=\"" << g.color << "\" stroke-width=\"1.8\"";
            }
            os << "/>\n";
        }
        os << "<circle cx=\"20\" cy=\"" << fmt(legend_y - 4.0) << "\" r=\"5\"";
        if (g.filled) {
            os << " fill=\"" << g.color << "\"";
        } else {
            os << " fill=\"none\" stroke=\"" << g.color << "\" stroke-width=\"1.8\"";
        }
        os << "/>\n<text x=\"32\" y=\"" << fmt(legend_y)
           << "\" font-family=\"monospace\" font-size=\"13\">" << g.label << "</text>\n";
        legend_y += 20.0;
    }
    os << "</svg>\n";
}

/// One hue per level, spread around the color wheel.
inline std::string level_hue(int level, int level_count) {
    const int hue = (level_count > 0) ? (level * 360 / level_count) % 360 : 0;
    return "hsl(" + std::to_string(hue) + ",70%,45%)";
}

}  // namespace calab::cli
