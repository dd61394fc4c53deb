#pragma once

// Marching-squares level curves of a PotentialField and an SVG renderer for them.

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "ratapprox/geometry.hpp"
#include "ratapprox/potential.hpp"

namespace ratapprox {

/// Segment endpoints in grid-index coordinates (x along columns, y along rows).
struct Segment {
    double x0, y0, x1, y1;
};

/// Level-set segments of a row-major nx-by-ny grid.
inline std::vector<Segment> marching_squares(const std::vector<double>& v, std::size_t nx, std::size_t ny,
                                             double level) {
    std::vector<Segment> out;
    if (nx < 2 || ny < 2) return out;
    auto at = [&](std::size_t i, std::size_t j) { return v[j * nx + i] - level; };
    auto cross = [](double a, double b) { return a / (a - b); };
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            // corners: a = (i, j), b = (i+1, j), c = (i+1, j+1), d = (i, j+1)
            const double a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
            const int code = (a >= 0) | (b >= 0) << 1 | (c >= 0) << 2 | (d >= 0) << 3;
            if (code == 0 || code == 15) continue;
            const double x = static_cast<double>(i), y = static_cast<double>(j);
            // edge crossing points: bottom (a-b), right (b-c), top (d-c), left (a-d)
            auto bottom = [&] { return std::array{x + cross(a, b), y}; };
            auto right = [&] { return std::array{x + 1, y + cross(b, c)}; };
            auto top = [&] { return std::array{x + cross(d, c), y + 1}; };
            auto left = [&] { return std::array{x, y + cross(a, d)}; };
            auto emit = [&](std::array<double, 2> p, std::array<double, 2> q) {
                out.push_back({p[0], p[1], q[0], q[1]});
            };
            switch (code) {
                case 1: case 14: emit(left(), bottom()); break;
                case 2: case 13: emit(bottom(), right()); break;
                case 3: case 12: emit(left(), right()); break;
                case 4: case 11: emit(right(), top()); break;
                case 6: case 9: emit(bottom(), top()); break;
                case 7: case 8: emit(left(), top()); break;
                case 5: case 10: {
                    // saddle: the cell-centre average decides which corners connect
                    const bool centre = (a + b + c + d) / 4.0 >= 0;
                    if ((code == 5) == centre) {
                        emit(left(), top());
                        emit(bottom(), right());
                    } else {
                        emit(left(), bottom());
                        emit(right(), top());
                    }
                    break;
                }
                default: break;
            }
        }
    }
    return out;
}

namespace detail {

/// Yellow (high) to blue (low), piecewise linear through a few anchors.
inline std::string level_color(double t) {
    static constexpr std::array<std::array<double, 3>, 5> anchors{{
        {0.17, 0.11, 0.55}, {0.13, 0.40, 0.75}, {0.15, 0.65, 0.55}, {0.60, 0.80, 0.25}, {0.99, 0.90, 0.15}}};
    t = std::clamp(t, 0.0, 1.0) * (anchors.size() - 1);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(t), anchors.size() - 2);
    const double u = t - static_cast<double>(k);
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c)
        rgb[c] = static_cast<int>(std::lround(255.0 * ((1 - u) * anchors[k][c] + u * anchors[k + 1][c])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace detail

struct SvgOptions {
    double plot_size = 600.0;  // pixels per side of the plot area
    const Domain* domain = nullptr;
    std::string title;
};

/// Contours at the field's integer levels, poles (red) and supports (yellow), the domain
/// boundary in black and a labelled vertical colorbar.
inline std::string render_svg(const PotentialField& field, const SvgOptions& opt = {}) {
    const double margin = 40.0, bar_w = 20.0, bar_gap = 30.0, label_w = 50.0;
    const double aspect = (field.window.ymax - field.window.ymin) / (field.window.xmax - field.window.xmin);
    const double pw = aspect <= 1 ? opt.plot_size : opt.plot_size / aspect;
    const double ph = aspect <= 1 ? opt.plot_size * aspect : opt.plot_size;
    const double width = margin + pw + bar_gap + bar_w + label_w, height = ph + 2 * margin;

    const double sx = pw / (field.window.xmax - field.window.xmin);
    const double sy = ph / (field.window.ymax - field.window.ymin);
    auto px = [&](double x) { return margin + (x - field.window.xmin) * sx; };
    auto py = [&](double y) { return margin + (field.window.ymax - y) * sy; };
    const double dx = (field.window.xmax - field.window.xmin) / static_cast<double>(field.nx);
    const double dy = (field.window.ymax - field.window.ymin) / static_cast<double>(field.ny);
    // grid index -> world: cell centres
    auto gx = [&](double i) { return px(field.window.xmin + (i + 0.5) * dx); };
    auto gy = [&](double j) { return py(field.window.ymin + (j + 0.5) * dy); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) + "\" height=\"" +
         detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) + ' ' + detail::fmt(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        s += "<text x=\"" + detail::fmt(margin) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" +
             opt.title + "</text>\n";
    s += "<defs><clipPath id=\"plot\"><rect x=\"" + detail::fmt(margin) + "\" y=\"" + detail::fmt(margin) +
         "\" width=\"" + detail::fmt(pw) + "\" height=\"" + detail::fmt(ph) + "\"/></clipPath></defs>\n";
    s += "<g clip-path=\"url(#plot)\">\n";

    const double span = std::max(field.clip_max - field.clip_min, 1e-300);
    for (double level : field.levels) {
        const auto segs = marching_squares(field.log_abs_phi, field.nx, field.ny, level);
        if (segs.empty()) continue;
        s += "<path fill=\"none\" stroke-width=\"1\" stroke=\"" +
             detail::level_color((level - field.clip_min) / span) + "\" d=\"";
        for (const auto& g : segs)
            s += 'M' + detail::fmt(gx(g.x0)) + ' ' + detail::fmt(gy(g.y0)) + 'L' + detail::fmt(gx(g.x1)) + ' ' +
                 detail::fmt(gy(g.y1));
        s += "\"/>\n";
    }

    if (opt.domain) {
        const auto* iv = std::get_if<Interval>(opt.domain);
        const bool interval = iv != nullptr;
        const CVector pts = interval ? CVector{iv->a, iv->b} : detail::boundary_points(*opt.domain, 400, 0.0);
        s += "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            s += (i ? 'L' : 'M') + detail::fmt(px(pts[i].real())) + ' ' + detail::fmt(py(pts[i].imag()));
        if (!interval) s += 'Z';
        s += "\"/>\n";
    }
    for (const auto& z : field.supports)
        s += "<circle cx=\"" + detail::fmt(px(z.real())) + "\" cy=\"" + detail::fmt(py(z.imag())) +
             "\" r=\"3.5\" fill=\"#ffd700\" stroke=\"#806000\" stroke-width=\"0.8\"/>\n";
    for (const auto& p : field.poles) {
        if (!is_finite(p)) continue;
        s += "<circle cx=\"" + detail::fmt(px(p.real())) + "\" cy=\"" + detail::fmt(py(p.imag())) +
             "\" r=\"3.5\" fill=\"#e00000\" stroke=\"#600000\" stroke-width=\"0.8\"/>\n";
    }
    s += "</g>\n";
    s += "<rect x=\"" + detail::fmt(margin) + "\" y=\"" + detail::fmt(margin) + "\" width=\"" + detail::fmt(pw) +
         "\" height=\"" + detail::fmt(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

    // colorbar: one band per unit of log10 |phi|
    const double bx = margin + pw + bar_gap;
    const int bands = 64;
    for (int k = 0; k < bands; ++k) {
        const double t0 = static_cast<double>(k) / bands;
        s += "<rect x=\"" + detail::fmt(bx) + "\" y=\"" + detail::fmt(margin + ph * (1 - t0 - 1.0 / bands)) +
             "\" width=\"" + detail::fmt(bar_w) + "\" height=\"" + detail::fmt(ph / bands + 0.5) + "\" fill=\"" +
             detail::level_color(t0 + 0.5 / bands) + "\"/>\n";
    }
    s += "<rect x=\"" + detail::fmt(bx) + "\" y=\"" + detail::fmt(margin) + "\" width=\"" + detail::fmt(bar_w) +
         "\" height=\"" + detail::fmt(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double level : field.levels) {
        if (static_cast<long long>(level) % 2 != 0 && field.levels.size() > 10) continue;
        const double y = margin + ph * (1 - (level - field.clip_min) / span);
        char label[16];
        std::snprintf(label, sizeof label, "%g", level);
        s += "<text x=\"" + detail::fmt(bx + bar_w + 4) + "\" y=\"" + detail::fmt(y + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
    }
    s += "<text x=\"" + detail::fmt(bx - 4) + "\" y=\"" + detail::fmt(margin - 8) +
         "\" font-family=\"sans-serif\" font-size=\"11\">log10|phi|</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace ratapprox
