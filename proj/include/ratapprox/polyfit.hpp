#pragma once

// Polynomial least squares through an Arnoldi-orthogonalized basis (Vandermonde with Arnoldi).

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ratapprox/errors.hpp"
#include "ratapprox/geometry.hpp"
#include "ratapprox/linalg.hpp"

namespace ratapprox {

struct ArnoldiPolynomial {
    std::size_t degree = 0;
    /// (degree+1) x degree upper-Hessenberg recurrence, row-major.
    CVector hessenberg;
    CVector coeffs;
    std::size_t normalization_points = 0;

    cplx h(std::size_t i, std::size_t j) const { return hessenberg[i * degree + j]; }
};

namespace detail {

struct ArnoldiBasis {
    std::vector<CVector> q;  // columns q_0..q_n, each of Euclidean norm sqrt(M)
    CVector hessenberg;      // (n+1) x n row-major
};

inline ArnoldiBasis arnoldi(std::span<const cplx> z, std::size_t degree) {
    const std::size_t m = z.size();
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    double zmax = 1.0;
    for (const auto& v : z) zmax = std::max(zmax, std::abs(v));

    ArnoldiBasis b;
    b.q.assign(degree + 1, CVector(m));
    b.hessenberg.assign((degree + 1) * degree, cplx(0.0));
    std::fill(b.q[0].begin(), b.q[0].end(), cplx(1.0));
    for (std::size_t k = 0; k < degree; ++k) {
        CVector v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = z[i] * b.q[k][i];
        // Gram-Schmidt plus one reorthogonalization sweep
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j <= k; ++j) {
                const cplx c = detail::dot(b.q[j], v) / static_cast<double>(m);
                b.hessenberg[j * degree + k] += c;
                for (std::size_t i = 0; i < m; ++i) v[i] -= c * b.q[j][i];
            }
        }
        const double sub = norm2(v) / sqrt_m;
        if (sub < 1e-14 * zmax) {
            throw NumericalFailure("va_fit: Arnoldi breakdown at step " + std::to_string(k + 1) +
                                   " (fewer distinct points than degree + 1?)");
        }
        b.hessenberg[(k + 1) * degree + k] = sub;
        for (std::size_t i = 0; i < m; ++i) b.q[k + 1][i] = v[i] / sub;
    }
    return b;
}

}  // namespace detail

/// Basis matrix Q / sqrt(M) at the given points: orthonormal columns in exact arithmetic.
inline CMatrix va_orthonormal_basis(std::span<const cplx> points, std::size_t degree) {
    const auto b = detail::arnoldi(points, degree);
    const double s = 1.0 / std::sqrt(static_cast<double>(points.size()));
    CMatrix q(points.size(), degree + 1);
    for (std::size_t j = 0; j <= degree; ++j)
        for (std::size_t i = 0; i < points.size(); ++i) q(i, j) = b.q[j][i] * s;
    return q;
}

/// Discrete least-squares polynomial of the given degree.
inline ArnoldiPolynomial va_fit(const SampleSet& samples, std::size_t degree) {
    const std::size_t m = samples.size();
    if (degree + 1 > m) throw DomainError("va_fit: degree + 1 exceeds sample count");
    auto basis = detail::arnoldi(samples.points, degree);

    CMatrix q(m, degree + 1);
    for (std::size_t j = 0; j <= degree; ++j)
        for (std::size_t i = 0; i < m; ++i) q(i, j) = basis.q[j][i];

    ArnoldiPolynomial p;
    p.degree = degree;
    p.hessenberg = std::move(basis.hessenberg);
    p.coeffs = solve_least_squares(q, samples.values);
    p.normalization_points = m;
    return p;
}

/// Basis values regenerated from the stored recurrence; row k holds q_k at every point.
inline std::vector<CVector> va_basis_values(const ArnoldiPolynomial& p, std::span<const cplx> points) {
    const std::size_t n = p.degree;
    std::vector<CVector> w(n + 1, CVector(points.size()));
    std::fill(w[0].begin(), w[0].end(), cplx(1.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            cplx v = points[i] * w[k][i];
            for (std::size_t j = 0; j <= k; ++j) v -= p.h(j, k) * w[j][i];
            w[k + 1][i] = v / p.h(k + 1, k);
        }
    }
    return w;
}

inline CVector va_eval(const ArnoldiPolynomial& p, std::span<const cplx> points) {
    for (const auto& z : points)
        if (!is_finite(z)) throw DomainError("va_eval: non-finite point");
    const auto w = va_basis_values(p, points);
    CVector out(points.size(), cplx(0.0));
    for (std::size_t k = 0; k <= p.degree; ++k)
        for (std::size_t i = 0; i < points.size(); ++i) out[i] += p.coeffs[k] * w[k][i];
    return out;
}

/// The nested lower-degree fit: with an orthonormal basis the least-squares coefficients of
/// degree n are the first n+1 coefficients of any higher-degree fit on the same points.
inline ArnoldiPolynomial va_truncate(const ArnoldiPolynomial& p, std::size_t degree) {
    if (degree > p.degree) throw DomainError("va_truncate: degree exceeds model degree");
    ArnoldiPolynomial t;
    t.degree = degree;
    t.normalization_points = p.normalization_points;
    t.hessenberg.resize((degree + 1) * degree);
    for (std::size_t i = 0; i <= degree; ++i)
        for (std::size_t j = 0; j < degree; ++j) t.hessenberg[i * degree + j] = p.h(i, j);
    t.coeffs.assign(p.coeffs.begin(), p.coeffs.begin() + static_cast<std::ptrdiff_t>(degree + 1));
    return t;
}

/// Partial sums sum_{k<=n} c_k q_k(z) for every n = 0..degree; element [n][i].
inline std::vector<CVector> va_eval_all_degrees(const ArnoldiPolynomial& p,
                                                std::span<const cplx> points) {
    const auto w = va_basis_values(p, points);
    std::vector<CVector> out(p.degree + 1, CVector(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        cplx s = 0.0;
        for (std::size_t k = 0; k <= p.degree; ++k) {
            s += p.coeffs[k] * w[k][i];
            out[k][i] = s;
        }
    }
    return out;
}

}  // namespace ratapprox
