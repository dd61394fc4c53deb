#pragma once

// Greedy barycentric rational fitting (AAA) with pole/zero/residue extraction and
// removal of spurious pole-zero pairs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "ratapprox/errors.hpp"
#include "ratapprox/geometry.hpp"
#include "ratapprox/linalg.hpp"

namespace ratapprox {

/// r(z) = sum_k w_k f_k / (z - z_k)  /  sum_k w_k / (z - z_k)
struct BarycentricRational {
    CVector supports;
    CVector values;
    CVector weights;

    std::size_t size() const noexcept { return supports.size(); }
    std::size_t degree() const noexcept { return supports.empty() ? 0 : supports.size() - 1; }
};

inline BarycentricRational make_barycentric(CVector supports, CVector values, CVector weights) {
    if (supports.empty()) throw DomainError("BarycentricRational: need at least one support");
    if (supports.size() != values.size() || supports.size() != weights.size())
        throw DomainError("BarycentricRational: length mismatch");
    if (!detail::pairwise_distinct(supports))
        throw DomainError("BarycentricRational: repeated support point");
    if (std::all_of(weights.begin(), weights.end(), [](cplx w) { return w == 0.0; }))
        throw DomainError("BarycentricRational: all weights zero");
    return BarycentricRational{std::move(supports), std::move(values), std::move(weights)};
}

/// Returns f_k on an exact support hit, kPoleMarker when z is numerically a pole.
inline cplx eval(const BarycentricRational& r, cplx z) {
    if (r.size() == 1) return r.values[0];
    cplx num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        const cplx d = z - r.supports[k];
        if (d == 0.0) return r.values[k];
        const cplx c = r.weights[k] / d;
        num += c * r.values[k];
        den += c;
    }
    if (den == 0.0) return kPoleMarker;
    const cplx v = num / den;
    if (is_finite(v)) return v;
    // Overflowing Cauchy terms: z sits on top of a support up to rounding.
    std::size_t nearest = 0;
    for (std::size_t k = 1; k < r.size(); ++k)
        if (std::abs(z - r.supports[k]) < std::abs(z - r.supports[nearest])) nearest = k;
    return r.values[nearest];
}

inline CVector eval(const BarycentricRational& r, std::span<const cplx> zs) {
    CVector out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = eval(r, zs[i]);
    return out;
}

namespace detail {

/// Finite eigenvalues of the (m+1)x(m+1) arrowhead pencil with first row (0, top...),
/// padded with infinity markers up to m-1 entries.
inline CVector arrowhead_roots(const BarycentricRational& r, std::span<const cplx> top) {
    const std::size_t m = r.size();
    CMatrix e(m + 1, m + 1);
    for (std::size_t k = 0; k < m; ++k) {
        e(0, k + 1) = top[k];
        e(k + 1, 0) = 1.0;
        e(k + 1, k + 1) = r.supports[k];
    }
    std::vector<bool> mask(m + 1, true);
    mask[0] = false;
    CVector roots = finite_generalized_eigenvalues(e, mask);
    if (roots.size() > m - 1)
        throw NumericalFailure("arrowhead pencil returned more roots than the degree");
    while (roots.size() < m - 1) roots.push_back(kPoleMarker);
    return roots;
}

}  // namespace detail

/// Poles of r: exactly degree() entries, sorted by (real, imag); poles at infinity (when the
/// denominator degree drops) are reported as kPoleMarker at the end.
inline CVector poles(const BarycentricRational& r) {
    if (r.degree() < 1) throw DomainError("poles: degree-0 model has no poles");
    return detail::arrowhead_roots(r, r.weights);
}

/// Zeros of r, same conventions as poles(); a degree-0 model yields an empty list.
inline CVector zeros(const BarycentricRational& r) {
    if (r.degree() < 1) return {};
    CVector top(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) top[k] = r.weights[k] * r.values[k];
    return detail::arrowhead_roots(r, top);
}

struct Residue {
    cplx value;
    bool near_support = false;  // pole within 1e-13 * scale of a support: cleanup candidate
};

/// Residue N(p) / D'(p) at each listed pole.
inline std::vector<Residue> residues(const BarycentricRational& r, std::span<const cplx> pole_list) {
    double scale = 1.0;
    for (const auto& z : r.supports) scale = std::max(scale, std::abs(z));
    std::vector<Residue> out;
    out.reserve(pole_list.size());
    for (const auto& p : pole_list) {
        Residue res;
        if (!is_finite(p)) {
            res.value = kCutMarker;
            out.push_back(res);
            continue;
        }
        cplx num = 0.0, dprime = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            const cplx d = p - r.supports[k];
            if (std::abs(d) <= 1e-13 * scale) res.near_support = true;
            if (d == 0.0) continue;
            const cplx c = r.weights[k] / d;
            num += c * r.values[k];
            dprime -= c / d;
        }
        res.value = res.near_support ? cplx(0.0) : num / dprime;
        out.push_back(res);
    }
    return out;
}

struct HistoryEntry {
    std::size_t degree;
    double max_error;
};

struct FitReport {
    BarycentricRational model;
    std::vector<HistoryEntry> history;             // greedy iterates, before cleanup
    std::vector<BarycentricRational> trajectory;   // model after each greedy step
    bool converged = false;
    std::size_t cleanup_removed = 0;
    bool cleanup_warning = false;  // cleanup would have emptied the model; input kept
    double final_error = 0.0;      // max error over non-support samples of the returned model
};

struct AaaOptions {
    bool cleanup = true;
    bool keep_trajectory = true;
};

namespace detail {

inline std::vector<bool> support_mask(const SampleSet& s, std::span<const cplx> supports) {
    std::vector<bool> mask(s.size(), false);
    CVector sorted(supports.begin(), supports.end());
    std::sort(sorted.begin(), sorted.end(), lex_less);
    for (std::size_t i = 0; i < s.size(); ++i)
        mask[i] = std::binary_search(sorted.begin(), sorted.end(), s.points[i], lex_less);
    return mask;
}

/// Weights as the minimal right singular vector of the Loewner matrix whose rows are the
/// samples that are not supports.
inline CVector loewner_weights(const SampleSet& s, std::span<const cplx> supports,
                               std::span<const cplx> values) {
    const std::size_t m = supports.size();
    if (m == 1) return CVector{1.0};
    const auto mask = support_mask(s, supports);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!mask[i]) rows.push_back(i);
    if (rows.empty()) throw DomainError("AAA: no non-support samples left for the Loewner system");
    CMatrix a(rows.size(), m);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t i = rows[r];
        for (std::size_t k = 0; k < m; ++k)
            a(r, k) = (s.values[i] - values[k]) / (s.points[i] - supports[k]);
    }
    return min_singular_right_vector(a).v;
}

inline double max_error_off_supports(const SampleSet& s, const BarycentricRational& r) {
    const auto mask = support_mask(s, r.supports);
    double err = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask[i]) continue;
        const double e = std::abs(s.values[i] - eval(r, s.points[i]));
        err = std::max(err, std::isnan(e) ? std::numeric_limits<double>::infinity() : e);
    }
    return err;
}

inline double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double diameter(std::span<const cplx> pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
    return d;
}

}  // namespace detail

/// Spurious-pole cleanup: poles with |residue| < 1e-13 * max|f| * diam(samples) (or sitting
/// on a support) lose their nearest support; weights are re-solved on the reduced set and the
/// process repeats until no spurious pole remains.
inline FitReport cleanup(FitReport report, const SampleSet& samples) {
    const double threshold = 1e-13 * detail::max_abs(samples.values) * detail::diameter(samples.points);
    BarycentricRational model = report.model;
    std::size_t removed = 0;
    while (model.degree() >= 1) {
        const CVector p = poles(model);
        const auto res = residues(model, p);
        std::vector<std::size_t> drop;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!is_finite(p[i])) continue;
            if (!res[i].near_support && std::abs(res[i].value) >= threshold) continue;
            std::size_t nearest = 0;
            for (std::size_t k = 1; k < model.size(); ++k)
                if (std::abs(p[i] - model.supports[k]) < std::abs(p[i] - model.supports[nearest]))
                    nearest = k;
            drop.push_back(nearest);
        }
        if (drop.empty()) break;
        std::sort(drop.begin(), drop.end());
        drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
        if (drop.size() >= model.size()) {
            report.cleanup_warning = true;
            return report;
        }
        CVector z, f;
        for (std::size_t k = 0; k < model.size(); ++k) {
            if (std::binary_search(drop.begin(), drop.end(), k)) continue;
            z.push_back(model.supports[k]);
            f.push_back(model.values[k]);
        }
        CVector w = detail::loewner_weights(samples, z, f);
        model = BarycentricRational{std::move(z), std::move(f), std::move(w)};
        removed += drop.size();
    }
    report.model = std::move(model);
    report.cleanup_removed += removed;
    report.final_error = detail::max_error_off_supports(samples, report.model);
    return report;
}

/// Greedy AAA iteration.
///
/// Each step adopts the sample of largest current error as a new support, takes the weights
/// from the Loewner least-squares problem over the remaining samples, and records the max
/// error over non-support samples. Stops once that error is <= tol * max|values| or the
/// degree reaches max_degree.
inline FitReport aaa_fit(const SampleSet& samples, double tol, std::size_t max_degree,
                         AaaOptions options = {}) {
    const std::size_t n = samples.size();
    if (!(tol > 0.0)) throw DomainError("aaa_fit: tol must be positive");
    if (n < max_degree + 2) throw DomainError("aaa_fit: need at least max_degree + 2 samples");
    for (const auto& v : samples.values)
        if (!is_finite(v)) throw DomainError("aaa_fit: non-finite sample value");

    const double target = tol * detail::max_abs(samples.values);
    const cplx mean = std::accumulate(samples.values.begin(), samples.values.end(), cplx(0.0)) /
                      static_cast<double>(n);
    CVector approx(n, mean);
    std::vector<bool> is_support(n, false);
    std::vector<std::size_t> support_idx;

    FitReport report;
    for (std::size_t m = 1; m <= max_degree + 1; ++m) {
        std::size_t pick = n;
        double worst = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_support[i]) continue;
            const double e = std::abs(samples.values[i] - approx[i]);
            if (e > worst || (std::isnan(e) && worst < std::numeric_limits<double>::infinity())) {
                worst = std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
                pick = i;
            }
        }
        is_support[pick] = true;
        support_idx.push_back(pick);

        CVector z(m), f(m);
        for (std::size_t k = 0; k < m; ++k) {
            z[k] = samples.points[support_idx[k]];
            f[k] = samples.values[support_idx[k]];
        }
        CVector w = detail::loewner_weights(samples, z, f);
        BarycentricRational r{std::move(z), std::move(f), std::move(w)};

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_support[i]) {
                approx[i] = samples.values[i];
                continue;
            }
            approx[i] = eval(r, samples.points[i]);
            const double e = std::abs(samples.values[i] - approx[i]);
            err = std::max(err, std::isnan(e) ? std::numeric_limits<double>::infinity() : e);
        }
        report.history.push_back({m - 1, err});
        if (options.keep_trajectory) report.trajectory.push_back(r);
        report.model = std::move(r);
        if (err <= target) {
            report.converged = true;
            break;
        }
    }
    report.final_error = report.history.back().max_error;
    if (options.cleanup) report = cleanup(std::move(report), samples);
    return report;
}

}  // namespace ratapprox
