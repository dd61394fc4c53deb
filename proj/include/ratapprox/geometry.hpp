#pragma once

// Approximation domains K, boundary sampling, and the built-in test functions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ratapprox/errors.hpp"
#include "ratapprox/linalg.hpp"

namespace ratapprox {

inline constexpr std::size_t kDefaultSampleCount = 500;
inline constexpr std::size_t kDefaultTestGridCount = 4000;

struct Disk {
    cplx center{0.0, 0.0};
    double radius = 1.0;
};

struct Interval {
    double a = -1.0;
    double b = 1.0;
};

/// C-shaped region wrapped around the positive real axis: an annular sector joined to two
/// semicircular caps. The caps sit tangent to the rays arg z = +-opening_half_angle, so the
/// wedge |arg z| < opening_half_angle (and with it the ray [0, inf)) stays outside K.
struct Horseshoe {
    double inner_radius = 0.5;
    double outer_radius = 1.5;
    double opening_half_angle = 0.3;

    double cap_radius() const { return 0.5 * (outer_radius - inner_radius); }
    double mid_radius() const { return 0.5 * (outer_radius + inner_radius); }
    /// Angle at which the annular arcs end and the caps begin.
    double arc_start_angle() const {
        return opening_half_angle + std::asin(cap_radius() / mid_radius());
    }
};

using Domain = std::variant<Disk, Interval, Horseshoe>;

inline Domain make_disk(cplx center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("Disk: radius must be > 0");
    return Disk{center, radius};
}

inline Domain make_interval(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("Interval: need finite a < b");
    return Interval{a, b};
}

inline Domain make_horseshoe(double inner, double outer, double half_angle) {
    if (!(inner > 0.0) || !(outer > inner))
        throw DomainError("Horseshoe: need 0 < inner radius < outer radius");
    if (!(half_angle > 0.0) || !(half_angle < std::numbers::pi / 2))
        throw DomainError("Horseshoe: opening half-angle must lie in (0, pi/2)");
    Horseshoe h{inner, outer, half_angle};
    if (!(h.arc_start_angle() < std::numbers::pi))
        throw DomainError("Horseshoe: opening too wide for the end caps");
    return h;
}

inline std::string describe(const Domain& d) {
    auto num = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>)
                return "disk:" + num(v.center.real()) + "," + num(v.center.imag()) + "," +
                       num(v.radius);
            else if constexpr (std::is_same_v<T, Interval>)
                return "interval:" + num(v.a) + "," + num(v.b);
            else
                return "horseshoe:" + num(v.inner_radius) + "," + num(v.outer_radius) + "," +
                       num(v.opening_half_angle);
        },
        d);
}

// ---------------------------------------------------------------------------
// Test functions

enum class FunctionSpec { Exp, TanSq, ExpTanSq, TwoBranchSqrt, AbsVal, SqrtNeg };

inline constexpr std::array<FunctionSpec, 6> kAllFunctions{
    FunctionSpec::Exp,           FunctionSpec::TanSq,  FunctionSpec::ExpTanSq,
    FunctionSpec::TwoBranchSqrt, FunctionSpec::AbsVal, FunctionSpec::SqrtNeg};

inline std::string_view function_name(FunctionSpec f) {
    switch (f) {
        case FunctionSpec::Exp: return "exp";
        case FunctionSpec::TanSq: return "tansq";
        case FunctionSpec::ExpTanSq: return "exptansq";
        case FunctionSpec::TwoBranchSqrt: return "twobranchsqrt";
        case FunctionSpec::AbsVal: return "abs";
        case FunctionSpec::SqrtNeg: return "sqrtneg";
    }
    return "?";
}

inline std::optional<FunctionSpec> function_from_name(std::string_view name) {
    for (auto f : kAllFunctions)
        if (function_name(f) == name) return f;
    return std::nullopt;
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Returned at poles.
inline const cplx kPoleMarker{std::numeric_limits<double>::infinity(), 0.0};
/// Returned on branch cuts and other non-analytic points.
inline const cplx kCutMarker{std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN()};

namespace detail {

inline std::optional<cplx> tan_of_square(cplx z) {
    const cplx w = z * z;
    const cplx c = std::cos(w);
    if (std::abs(c) <= 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w)))
        return std::nullopt;
    return std::sin(w) / c;
}

/// True when s lies on the principal-log cut (-inf, 0].
inline bool on_log_cut(cplx s) { return s.imag() == 0.0 && s.real() <= 0.0; }

}  // namespace detail

/// Principal-branch evaluation of the built-in functions.
/// AbsVal continues |x| off the real line as sqrt(z^2) (cut on the imaginary axis).
inline cplx eval_function(FunctionSpec f, cplx z) {
    if (!is_finite(z)) return kCutMarker;
    switch (f) {
        case FunctionSpec::Exp: return std::exp(z);
        case FunctionSpec::TanSq: {
            const auto t = detail::tan_of_square(z);
            return t ? *t : kPoleMarker;
        }
        case FunctionSpec::ExpTanSq: {
            const auto t = detail::tan_of_square(z);
            if (!t) return kCutMarker;  // essential singularity
            const cplx e = std::exp(*t);
            return is_finite(e) ? e : kCutMarker;
        }
        case FunctionSpec::TwoBranchSqrt: {
            const cplx s1 = cplx(1.5, 0.0) - z, s2 = cplx(0.0, 1.5) - z;
            if (detail::on_log_cut(s1) || detail::on_log_cut(s2)) return kCutMarker;
            return std::exp(0.5 * (std::log(s1) + std::log(s2)));
        }
        case FunctionSpec::AbsVal: {
            if (z.real() == 0.0) return z.imag() == 0.0 ? cplx(0.0) : kCutMarker;
            return z.real() > 0.0 ? z : -z;
        }
        case FunctionSpec::SqrtNeg: {
            if (z.imag() == 0.0 && z.real() >= 0.0) return kCutMarker;
            return std::sqrt(-z);
        }
    }
    return kCutMarker;
}

// ---------------------------------------------------------------------------
// Sample sets

struct SampleSet {
    CVector points;
    CVector values;

    std::size_t size() const noexcept { return points.size(); }
};

namespace detail {

inline bool lex_less(const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

inline bool pairwise_distinct(std::span<const cplx> pts) {
    CVector s(pts.begin(), pts.end());
    std::sort(s.begin(), s.end(), lex_less);
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace detail

inline SampleSet make_samples(CVector points, CVector values) {
    if (points.size() != values.size()) throw DomainError("SampleSet: length mismatch");
    if (points.size() < 2) throw DomainError("SampleSet: need at least 2 points");
    for (const auto& v : values)
        if (!is_finite(v)) throw DomainError("SampleSet: non-finite value");
    if (!detail::pairwise_distinct(points)) throw DomainError("SampleSet: repeated point");
    return SampleSet{std::move(points), std::move(values)};
}

inline SampleSet sample_function(FunctionSpec f, CVector points) {
    CVector values(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        values[i] = eval_function(f, points[i]);
        if (!is_finite(values[i]))
            throw DomainError("sample_function: " + std::string(function_name(f)) +
                              " is not finite at a sample point");
    }
    return make_samples(std::move(points), std::move(values));
}

// ---------------------------------------------------------------------------
// Boundary parametrizations

namespace detail {

inline double horseshoe_length(const Horseshoe& h) {
    const double beta = h.arc_start_angle();
    return (h.outer_radius + h.inner_radius) * (2.0 * std::numbers::pi - 2.0 * beta) +
           2.0 * std::numbers::pi * h.cap_radius();
}

/// Arclength parametrization, s in [0, length): outer arc (ccw), cap at -beta, inner arc
/// (cw), cap at +beta.
inline cplx horseshoe_point(const Horseshoe& h, double s) {
    const double pi = std::numbers::pi;
    const double beta = h.arc_start_angle();
    const double rho = h.cap_radius(), rmid = h.mid_radius();
    const double sweep = 2.0 * pi - 2.0 * beta;
    const double l1 = h.outer_radius * sweep, l2 = pi * rho, l3 = h.inner_radius * sweep;
    if (s < l1) return std::polar(h.outer_radius, beta + s / h.outer_radius);
    s -= l1;
    if (s < l2) {
        const cplx dir = std::polar(1.0, -beta);
        return rmid * dir + rho * dir * std::polar(1.0, s / rho);
    }
    s -= l2;
    if (s < l3) return std::polar(h.inner_radius, 2.0 * pi - beta - s / h.inner_radius);
    s -= l3;
    const cplx dir = std::polar(1.0, beta);
    return rmid * dir + rho * dir * std::polar(1.0, pi + s / rho);
}

/// Symmetric first-kind Chebyshev nodes on [-1, 1]: x and -x are exact negatives.
inline std::vector<double> symmetric_chebyshev(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double v =
            std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
        x[j] = v;
        x[n - 1 - j] = -v;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    return x;
}

/// Interval point set: geometric clusters toward 0 (when 0 is interior) plus Chebyshev fill.
inline CVector interval_points(const Interval& iv, std::size_t m, double decades, double offset) {
    std::vector<double> pts;
    if (iv.a < 0.0 && iv.b > 0.0) {
        const std::size_t jmax = m / 5;
        for (std::size_t j = 0; j <= jmax; ++j) {
            const double e = (static_cast<double>(j) + offset) / static_cast<double>(jmax);
            if (offset > 0.0 && j == jmax) break;
            const double p = std::pow(10.0, -decades * e);
            if (p >= iv.a && p <= iv.b) pts.push_back(p);
            if (-p >= iv.a && -p <= iv.b) pts.push_back(-p);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() > m / 2) pts.resize(0);  // degenerate tiny interval: Chebyshev only
    const std::size_t ncheb = m - pts.size();
    const double mid = 0.5 * (iv.a + iv.b), half = 0.5 * (iv.b - iv.a);
    for (double x : symmetric_chebyshev(ncheb)) pts.push_back(mid + half * x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() != m) throw NumericalFailure("interval sampling produced coincident points");
    CVector out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = pts[i];
    return out;
}

inline CVector boundary_points(const Domain& d, std::size_t m, double phase) {
    return std::visit(
        [&](const auto& v) -> CVector {
            using T = std::decay_t<decltype(v)>;
            CVector out(m);
            if constexpr (std::is_same_v<T, Disk>) {
                for (std::size_t j = 0; j < m; ++j)
                    out[j] = v.center + std::polar(v.radius, 2.0 * std::numbers::pi *
                                                                 (static_cast<double>(j) + phase) /
                                                                 static_cast<double>(m));
            } else if constexpr (std::is_same_v<T, Interval>) {
                out = phase == 0.0 ? interval_points(v, m, 14.0, 0.0)
                                   : interval_points(v, m, 15.0, 0.5);
            } else {
                const double len = horseshoe_length(v);
                for (std::size_t j = 0; j < m; ++j)
                    out[j] = horseshoe_point(
                        v, len * (static_cast<double>(j) + phase) / static_cast<double>(m));
            }
            return out;
        },
        d);
}

}  // namespace detail

/// m distinct points tracing the boundary of K once (Interval: the whole segment, with
/// Chebyshev density and geometric clustering +-10^{-14 j/J} toward an interior 0).
inline CVector boundary_samples(const Domain& d, std::size_t m) {
    if (m < 8) throw DomainError("boundary_samples: need m >= 8");
    return detail::boundary_points(d, m, 0.0);
}

/// Dense evaluation set for sup-norm estimates, offset from boundary_samples.
inline CVector test_grid(const Domain& d, std::size_t m) {
    if (m < 64) throw DomainError("test_grid: need m >= 64");
    return detail::boundary_points(d, m, 0.5);
}

inline bool contains(const Domain& d, cplx z, double slack = 0.0);

/// Euclidean distance from z to K (0 inside).
inline double distance_to_domain(const Domain& d, cplx z) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return std::max(0.0, std::abs(z - v.center) - v.radius);
            } else if constexpr (std::is_same_v<T, Interval>) {
                const double x = std::clamp(z.real(), v.a, v.b);
                return std::abs(z - cplx(x, 0.0));
            } else {
                const double beta = v.arc_start_angle();
                double theta = std::arg(z);
                if (theta < 0.0) theta += 2.0 * std::numbers::pi;
                const double r = std::abs(z);
                double best = std::numeric_limits<double>::infinity();
                if (theta >= beta && theta <= 2.0 * std::numbers::pi - beta)
                    best = std::max({0.0, v.inner_radius - r, r - v.outer_radius});
                for (double sgn : {1.0, -1.0}) {
                    const cplx c = std::polar(v.mid_radius(), sgn * beta);
                    best = std::min(best, std::max(0.0, std::abs(z - c) - v.cap_radius()));
                }
                return best;
            }
        },
        d);
}

inline bool contains(const Domain& d, cplx z, double slack) {
    return distance_to_domain(d, z) <= slack;
}

struct Box {
    double xmin, xmax, ymin, ymax;
};

inline Box bounding_box(const Domain& d) {
    return std::visit(
        [](const auto& v) -> Box {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Disk>)
                return {v.center.real() - v.radius, v.center.real() + v.radius,
                        v.center.imag() - v.radius, v.center.imag() + v.radius};
            else if constexpr (std::is_same_v<T, Interval>)
                return {v.a, v.b, 0.0, 0.0};
            else
                return {-v.outer_radius, v.outer_radius, -v.outer_radius, v.outer_radius};
        },
        d);
}

/// Points strictly inside K (empty for intervals, which have no interior).
inline CVector interior_grid(const Domain& d, std::size_t per_axis = 64) {
    CVector out;
    if (std::holds_alternative<Interval>(d)) return out;
    const Box b = bounding_box(d);
    for (std::size_t i = 0; i < per_axis; ++i)
        for (std::size_t j = 0; j < per_axis; ++j) {
            const double x = b.xmin + (b.xmax - b.xmin) * (static_cast<double>(i) + 0.5) /
                                          static_cast<double>(per_axis);
            const double y = b.ymin + (b.ymax - b.ymin) * (static_cast<double>(j) + 0.5) /
                                          static_cast<double>(per_axis);
            if (contains(d, cplx(x, y))) out.emplace_back(x, y);
        }
    return out;
}

}  // namespace ratapprox
