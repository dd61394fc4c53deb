#pragma once

// Degree sweeps, sup-error estimates and decay-rate classification.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ratapprox/aaa.hpp"
#include "ratapprox/errors.hpp"
#include "ratapprox/geometry.hpp"
#include "ratapprox/polyfit.hpp"

namespace ratapprox {

enum class Method { Rational, Polynomial };
enum class EntryFlag { Ok, Floor, PoleInDomain };

inline std::string_view method_name(Method m) { return m == Method::Rational ? "rational" : "polynomial"; }

inline std::string_view flag_name(EntryFlag f) {
    switch (f) {
        case EntryFlag::Ok: return "ok";
        case EntryFlag::Floor: return "floor";
        case EntryFlag::PoleInDomain: return "pole-in-domain";
    }
    return "ok";
}

inline constexpr double kDefaultTolFloor = 1e-13;
/// A pole this close to K counts as inside it.
inline constexpr double kPoleInDomainDistance = 1e-9;

struct SupError {
    double value = 0.0;
    bool pole_in_domain = false;
};

/// f sampled once on the test grid (and the interior grid, for the pole-in-domain scan).
class ErrorProbe {
public:
    ErrorProbe(FunctionSpec f, const Domain& d, std::size_t grid_count = kDefaultTestGridCount)
        : domain_(d), grid_(test_grid(d, grid_count)), f_grid_(grid_.size()) {
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            f_grid_[i] = eval_function(f, grid_[i]);
            if (!is_finite(f_grid_[i]))
                throw DomainError("estimate_sup_error: f is not finite on the test grid");
        }
        for (const auto& z : interior_grid(d)) {
            const cplx v = eval_function(f, z);
            if (!is_finite(v)) continue;  // interior cut points carry no sup-norm information
            interior_.push_back(z);
            f_interior_.push_back(v);
        }
    }

    const CVector& grid() const { return grid_; }
    const CVector& values() const { return f_grid_; }
    double scale() const { return detail::max_abs(f_grid_); }

    SupError operator()(const BarycentricRational& r) const {
        SupError out;
        out.value = max_deviation(r, grid_, f_grid_);
        if (r.degree() >= 1) {
            for (const auto& p : poles(r)) {
                if (is_finite(p) && distance_to_domain(domain_, p) < kPoleInDomainDistance) {
                    out.pole_in_domain = true;
                    break;
                }
            }
        }
        if (out.pole_in_domain) out.value = std::max(out.value, max_deviation(r, interior_, f_interior_));
        return out;
    }

    SupError operator()(const ArnoldiPolynomial& p) const {
        const auto v = va_eval(p, grid_);
        SupError out;
        for (std::size_t i = 0; i < grid_.size(); ++i) out.value = std::max(out.value, std::abs(v[i] - f_grid_[i]));
        return out;
    }

private:
    static double max_deviation(const BarycentricRational& r, const CVector& z, const CVector& f) {
        double e = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double d = std::abs(eval(r, z[i]) - f[i]);
            e = std::max(e, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
        }
        return e;
    }

    Domain domain_;
    CVector grid_, f_grid_;
    CVector interior_, f_interior_;
};

inline SupError estimate_sup_error(FunctionSpec f, const BarycentricRational& r, const Domain& d) {
    return ErrorProbe(f, d)(r);
}

inline SupError estimate_sup_error(FunctionSpec f, const ArnoldiPolynomial& p, const Domain& d) {
    return ErrorProbe(f, d)(p);
}

struct ConvergenceEntry {
    std::size_t degree;
    Method method;
    double error;
    EntryFlag flag;
};

struct ConvergenceRecord {
    FunctionSpec fn;
    Domain domain;
    std::vector<ConvergenceEntry> entries;
    double scale = 1.0;       // max |f| on the test grid; the floor is relative to it
    double tol_floor = kDefaultTolFloor;
    FitReport rational_fit;   // the single greedy run the rational entries come from

    std::vector<ConvergenceEntry> of(Method m) const {
        std::vector<ConvergenceEntry> out;
        for (const auto& e : entries)
            if (e.method == m) out.push_back(e);
        return out;
    }
};

struct StudyOptions {
    std::size_t sample_count = kDefaultSampleCount;
    std::size_t grid_count = kDefaultTestGridCount;
};

/// Polynomial entries come from one maximal-degree Arnoldi fit truncated to each degree (the
/// least-squares projections are nested). Rational entries are the iterates of a single AAA
/// run, re-measured on the test grid; degrees past AAA convergence have no rational entry.
inline ConvergenceRecord convergence_study(FunctionSpec f, const Domain& d,
                                           std::span<const std::size_t> degrees,
                                           double tol_floor = kDefaultTolFloor,
                                           StudyOptions options = {}) {
    if (degrees.empty()) throw DomainError("convergence_study: no degrees requested");
    for (std::size_t i = 1; i < degrees.size(); ++i)
        if (degrees[i] <= degrees[i - 1]) throw DomainError("convergence_study: degrees must increase");
    if (!(tol_floor > 0.0)) throw DomainError("convergence_study: tolFloor must be positive");

    const auto samples = sample_function(f, boundary_samples(d, options.sample_count));
    const ErrorProbe probe(f, d, options.grid_count);
    const std::size_t top = degrees.back();

    ConvergenceRecord rec{f, d, {}, probe.scale(), tol_floor, {}};
    auto flag_for = [&](const SupError& e) {
        if (e.pole_in_domain) return EntryFlag::PoleInDomain;
        return e.value < tol_floor * rec.scale ? EntryFlag::Floor : EntryFlag::Ok;
    };

    rec.rational_fit = aaa_fit(samples, tol_floor, top, {.cleanup = false, .keep_trajectory = true});
    for (std::size_t n : degrees) {
        if (n >= rec.rational_fit.trajectory.size()) break;
        const SupError e = probe(rec.rational_fit.trajectory[n]);
        rec.entries.push_back({n, Method::Rational, e.value, flag_for(e)});
    }

    const auto poly = va_fit(samples, top);
    const auto partial = va_eval_all_degrees(poly, probe.grid());
    for (std::size_t n : degrees) {
        double e = 0.0;
        for (std::size_t i = 0; i < probe.grid().size(); ++i)
            e = std::max(e, std::abs(partial[n][i] - probe.values()[i]));
        rec.entries.push_back({n, Method::Polynomial, e, flag_for({e, false})});
    }
    return rec;
}

enum class RateKind { Superexponential, Exponential, RootExponential, Algebraic };

inline std::string_view rate_name(RateKind k) {
    switch (k) {
        case RateKind::Superexponential: return "superexponential";
        case RateKind::Exponential: return "exponential";
        case RateKind::RootExponential: return "root-exponential";
        case RateKind::Algebraic: return "algebraic";
    }
    return "";
}

struct RateClass {
    RateKind kind;
    /// log10 decay per degree (Exponential), per sqrt(degree) (RootExponential), or the
    /// algebraic order; unused for Superexponential.
    double rate = 0.0;
    double r2_linear = 0.0, r2_sqrt = 0.0, r2_log = 0.0;
    double concave_fraction = 0.0;
    double mean_second_difference = 0.0;
    std::size_t points = 0;
};

namespace detail {

struct LineFit {
    double slope, intercept, r2;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (my + slope * (x[i] - mx));
        ssr += r * r;
    }
    const double r2 = syy > 0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 0.0;
    return {slope, my - slope * mx, r2};
}

}  // namespace detail

/// Classifies (degree, error) pairs; degree 0 is skipped since log n is undefined there.
inline RateClass classify_rate(std::span<const std::size_t> degrees, std::span<const double> errors) {
    std::vector<double> n, y;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] == 0 || !(errors[i] > 0.0) || !std::isfinite(errors[i])) continue;
        n.push_back(static_cast<double>(degrees[i]));
        y.push_back(std::log10(errors[i]));
    }
    if (n.size() < 4) throw DomainError("classify_rate: need at least 4 usable pre-floor entries");

    std::vector<double> sq(n.size()), lg(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        sq[i] = std::sqrt(n[i]);
        lg[i] = std::log10(n[i]);
    }
    const auto lin = detail::fit_line(n, y), root = detail::fit_line(sq, y), alg = detail::fit_line(lg, y);

    RateClass out{};
    out.r2_linear = lin.r2;
    out.r2_sqrt = root.r2;
    out.r2_log = alg.r2;
    out.points = n.size();

    // second derivative of log10 E in n, per unit degree^2 (spacing may be uneven)
    std::size_t negative = 0;
    double sum = 0.0;
    const std::size_t count = n.size() - 2;
    for (std::size_t i = 1; i + 1 < n.size(); ++i) {
        const double h1 = n[i] - n[i - 1], h2 = n[i + 1] - n[i];
        const double d2 = 2.0 * ((y[i + 1] - y[i]) / h2 - (y[i] - y[i - 1]) / h1) / (h1 + h2);
        if (d2 < 0) ++negative;
        sum += d2;
    }
    out.concave_fraction = static_cast<double>(negative) / static_cast<double>(count);
    out.mean_second_difference = sum / static_cast<double>(count);

    if (out.concave_fraction >= 0.7 && out.mean_second_difference < -0.01) {
        out.kind = RateKind::Superexponential;
        return out;
    }
    if (lin.r2 >= root.r2 && lin.r2 >= alg.r2) {
        out.kind = RateKind::Exponential;
        out.rate = std::max(0.0, -lin.slope);
    } else if (root.r2 >= alg.r2) {
        out.kind = RateKind::RootExponential;
        out.rate = std::max(0.0, -root.slope);
    } else {
        out.kind = RateKind::Algebraic;
        out.rate = std::max(0.0, -alg.slope);
    }
    return out;
}

/// The pre-floor segment of one method: entries up to the first floor-limited one.
/// Pole-in-domain entries stay in (their grid error is still the measured error).
inline std::vector<ConvergenceEntry> pre_floor_segment(const ConvergenceRecord& rec, Method m) {
    std::vector<ConvergenceEntry> out;
    for (const auto& e : rec.of(m)) {
        if (e.flag == EntryFlag::Floor) break;
        out.push_back(e);
    }
    return out;
}

inline RateClass classify_rate(const ConvergenceRecord& rec, Method m) {
    std::vector<std::size_t> deg;
    std::vector<double> err;
    for (const auto& e : pre_floor_segment(rec, m)) {
        deg.push_back(e.degree);
        err.push_back(e.error);
    }
    return classify_rate(deg, err);
}

}  // namespace ratapprox
