#pragma once

// Walsh potential phi(z) = prod(z - z_k) / prod(z - pi_k), its level sets, and the
// Hermite contour-integral error formula.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "ratapprox/aaa.hpp"
#include "ratapprox/errors.hpp"
#include "ratapprox/geometry.hpp"

namespace ratapprox {

/// Infinite poles (a polynomial-like denominator) contribute nothing.
inline cplx phi(cplx z, std::span<const cplx> supports, std::span<const cplx> pole_list) {
    for (const auto& p : pole_list)
        if (z == p) return kPoleMarker;
    cplx v = 1.0;
    std::size_t k = 0, j = 0;
    // Interleave factors so the running product stays near the geometric mean.
    while (k < supports.size() || j < pole_list.size()) {
        if (k < supports.size()) v *= z - supports[k++];
        while (j < pole_list.size() && !is_finite(pole_list[j])) ++j;
        if (j < pole_list.size()) v /= z - pole_list[j++];
    }
    return v;
}

/// log10 |phi(z)| as a sum of logarithms; -inf at supports, +inf at poles.
inline double log10_abs_phi(cplx z, std::span<const cplx> supports, std::span<const cplx> pole_list) {
    double s = 0.0;
    for (const auto& zk : supports) s += std::log10(std::abs(z - zk));
    for (const auto& p : pole_list)
        if (is_finite(p)) s -= std::log10(std::abs(z - p));
    return s;
}

struct PotentialField {
    Box window;
    std::size_t nx = 0, ny = 0;
    /// ny rows of nx cell-centre values, row 0 at ymin.
    std::vector<double> log_abs_phi;
    std::vector<double> levels;
    double clip_min = 0.0, clip_max = 0.0;
    CVector supports;
    CVector poles;

    double at(std::size_t ix, std::size_t iy) const { return log_abs_phi[iy * nx + ix]; }
    cplx cell_center(std::size_t ix, std::size_t iy) const {
        const double dx = (window.xmax - window.xmin) / static_cast<double>(nx);
        const double dy = (window.ymax - window.ymin) / static_cast<double>(ny);
        return {window.xmin + (static_cast<double>(ix) + 0.5) * dx,
                window.ymin + (static_cast<double>(iy) + 0.5) * dy};
    }
};

inline constexpr double kClipPercentile = 99.5;
inline constexpr double kClipDecades = 16.0;

inline PotentialField potential_grid(std::span<const cplx> supports, std::span<const cplx> pole_list,
                                     const Box& window, std::size_t nx, std::size_t ny) {
    if (!(window.xmax > window.xmin) || !(window.ymax > window.ymin))
        throw DomainError("potential_grid: degenerate window");
    if (nx < 32 || ny < 32) throw DomainError("potential_grid: resolution must be at least 32x32");

    PotentialField field;
    field.window = window;
    field.nx = nx;
    field.ny = ny;
    field.supports.assign(supports.begin(), supports.end());
    field.poles.assign(pole_list.begin(), pole_list.end());
    field.log_abs_phi.resize(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
            field.log_abs_phi[iy * nx + ix] = log10_abs_phi(field.cell_center(ix, iy), supports, pole_list);

    std::vector<double> finite;
    finite.reserve(field.log_abs_phi.size());
    for (double v : field.log_abs_phi)
        if (std::isfinite(v)) finite.push_back(v);
    if (finite.empty()) throw NumericalFailure("potential_grid: no finite grid values");
    std::sort(finite.begin(), finite.end());
    // nearest-rank percentile
    const auto rank = static_cast<std::size_t>(
        std::ceil(kClipPercentile / 100.0 * static_cast<double>(finite.size())));
    field.clip_max = finite[std::clamp<std::size_t>(rank, 1, finite.size()) - 1];
    field.clip_min = field.clip_max - kClipDecades;
    for (double& v : field.log_abs_phi) {
        if (std::isnan(v)) v = field.clip_max;
        v = std::clamp(v, field.clip_min, field.clip_max);
    }
    for (double l = std::ceil(field.clip_min); l <= field.clip_max; l += 1.0) field.levels.push_back(l);
    return field;
}

/// Bounding box of the domain and all finite poles, inflated by 30% per side.
inline Box default_window(const Domain& d, std::span<const cplx> pole_list) {
    Box b = bounding_box(d);
    for (const auto& p : pole_list) {
        if (!is_finite(p)) continue;
        b.xmin = std::min(b.xmin, p.real());
        b.xmax = std::max(b.xmax, p.real());
        b.ymin = std::min(b.ymin, p.imag());
        b.ymax = std::max(b.ymax, p.imag());
    }
    const double wx = b.xmax - b.xmin, wy = b.ymax - b.ymin;
    const double px = 0.3 * (wx > 0 ? wx : 1.0), py = 0.3 * (wy > 0 ? wy : 1.0);
    return {b.xmin - px, b.xmax + px, b.ymin - py, b.ymax + py};
}

/// Colorbar range in decades, ignoring cells within 1% of the window diagonal of any charge.
inline double potential_gap(const PotentialField& field) {
    const double diag = std::hypot(field.window.xmax - field.window.xmin,
                                   field.window.ymax - field.window.ymin);
    const double exclusion = 0.01 * diag;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const cplx c = field.cell_center(ix, iy);
            bool near = false;
            for (const auto& z : field.supports) near = near || std::abs(c - z) < exclusion;
            for (const auto& p : field.poles) near = near || (is_finite(p) && std::abs(c - p) < exclusion);
            if (near) continue;
            lo = std::min(lo, field.at(ix, iy));
            hi = std::max(hi, field.at(ix, iy));
        }
    }
    return hi >= lo ? hi - lo : 0.0;
}

struct Circle {
    cplx center;
    double radius;
    std::size_t nodes = 256;
};
using ContourSpec = Circle;

inline Circle make_circle(cplx center, double radius, std::size_t nodes = 256) {
    if (!(radius > 0.0)) throw DomainError("Circle: radius must be positive");
    if (nodes < 16) throw DomainError("Circle: need at least 16 nodes");
    return {center, radius, nodes};
}

/// Equispaced trapezoid nodes t_j = c + R exp(2 pi i j / N).
inline CVector contour_nodes(const Circle& c) {
    CVector t(c.nodes);
    for (std::size_t j = 0; j < c.nodes; ++j)
        t[j] = c.center + std::polar(c.radius, 2.0 * M_PI * static_cast<double>(j) /
                                                   static_cast<double>(c.nodes));
    return t;
}

namespace detail {

using lcplx = std::complex<long double>;

/// Newton polish of eigenvalue poles on the barycentric denominator, in extended precision.
inline std::vector<lcplx> polished_poles(const BarycentricRational& r) {
    std::vector<lcplx> out;
    if (r.degree() == 0) return out;
    for (const auto& p0 : poles(r)) {
        if (!is_finite(p0)) continue;
        lcplx p(p0.real(), p0.imag());
        for (int it = 0; it < 3; ++it) {
            lcplx d = 0.0L, dp = 0.0L;
            bool hit = false;
            for (std::size_t k = 0; k < r.size(); ++k) {
                const lcplx diff = p - lcplx(r.supports[k].real(), r.supports[k].imag());
                if (diff == 0.0L) {
                    hit = true;
                    break;
                }
                const lcplx c = lcplx(r.weights[k].real(), r.weights[k].imag()) / diff;
                d += c;
                dp -= c / diff;
            }
            if (hit || dp == 0.0L) break;
            const lcplx step = d / dp;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-6L * (1.0L + std::abs(p))) break;
            p -= step;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace detail

/// Trapezoid-rule estimate of f(z) - r(z) from
///   (1 / 2 pi i) \oint phi(z) / phi(t) * f(t) / (t - z) dt   over the circle.
inline cplx walsh_error(const Circle& contour, std::span<const cplx> f_on_contour,
                        const BarycentricRational& r, cplx z) {
    using detail::lcplx;
    if (f_on_contour.size() != contour.nodes) throw DomainError("walsh_error: one f value per node");
    if (!(std::abs(z - contour.center) < contour.radius))
        throw DomainError("walsh_error: z must lie strictly inside the contour");
    for (const auto& s : r.supports)
        if (!(std::abs(s - contour.center) < contour.radius))
            throw DomainError("walsh_error: supports must lie strictly inside the contour");

    const auto pole_list = detail::polished_poles(r);
    const lcplx c(contour.center.real(), contour.center.imag());
    for (const auto& p : pole_list)
        if (std::abs(std::abs(p - c) - static_cast<long double>(contour.radius)) < 1e-8L)
            throw NumericalFailure("walsh_error: pole of r within 1e-8 of the contour; pick another radius");

    const lcplx zl(z.real(), z.imag());
    const auto nodes = contour_nodes(contour);
    lcplx sum = 0.0L;
    for (std::size_t j = 0; j < contour.nodes; ++j) {
        const lcplx t(nodes[j].real(), nodes[j].imag());
        // phi(z) / phi(t), factor by factor
        lcplx ratio = 1.0L;
        std::size_t k = 0, i = 0;
        while (k < r.size() || i < pole_list.size()) {
            if (k < r.size()) {
                const lcplx zk(r.supports[k].real(), r.supports[k].imag());
                ratio *= (zl - zk) / (t - zk);
                ++k;
            }
            if (i < pole_list.size()) {
                ratio *= (t - pole_list[i]) / (zl - pole_list[i]);
                ++i;
            }
        }
        const lcplx ft(f_on_contour[j].real(), f_on_contour[j].imag());
        sum += ratio * ft * (t - c) / (t - zl);
    }
    sum /= static_cast<long double>(contour.nodes);
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace ratapprox
