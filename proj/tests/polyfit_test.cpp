#include "ratapprox/polyfit.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ratapprox;

namespace {

SampleSet circle_samples(std::size_t m, cplx (*f)(cplx)) {
    CVector z = boundary_samples(make_disk(0.0, 1.0), m);
    CVector v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) v[i] = f(z[i]);
    return make_samples(std::move(z), std::move(v));
}

cplx cube(cplx z) { return z * z * z; }
cplx expz(cplx z) { return std::exp(z); }

double sup_error(const ArnoldiPolynomial& p, cplx (*f)(cplx), const CVector& pts) {
    const auto v = va_eval(p, pts);
    double e = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) e = std::max(e, std::abs(v[i] - f(pts[i])));
    return e;
}

}  // namespace

TEST(VaFit, ConstantData) {
    const auto s = circle_samples(20, [](cplx) { return cplx(4.0, -1.0); });
    const auto p = va_fit(s, 0);
    EXPECT_EQ(p.degree, 0u);
    for (cplx z : {cplx(0.0), cplx(3.0, 2.0)}) EXPECT_NEAR(std::abs(va_eval(p, {{z}})[0] - cplx(4.0, -1.0)), 0.0, 1e-14);
}

TEST(VaFit, CubeIsExact) {
    const auto p = va_fit(circle_samples(50, cube), 3);
    EXPECT_LE(sup_error(p, cube, test_grid(make_disk(0.0, 1.0), 1000)), 1e-13);
    EXPECT_NEAR(std::abs(va_eval(p, {{cplx(2.0)}})[0] - 8.0), 0.0, 1e-10);
}

TEST(VaFit, ExpDegreeTen) {
    const auto p = va_fit(circle_samples(500, expz), 10);
    EXPECT_LE(sup_error(p, expz, test_grid(make_disk(0.0, 1.0), kDefaultTestGridCount)), 2.8e-8);
    EXPECT_NEAR(std::abs(va_eval(p, {{cplx(0.0)}})[0] - 1.0), 0.0, 1e-8);
}

TEST(VaFit, SubdiagonalPositiveReal) {
    const auto p = va_fit(circle_samples(100, expz), 20);
    ASSERT_EQ(p.hessenberg.size(), 21u * 20u);
    for (std::size_t k = 0; k < 20; ++k) {
        EXPECT_GT(p.h(k + 1, k).real(), 0.0);
        EXPECT_EQ(p.h(k + 1, k).imag(), 0.0);
    }
    EXPECT_EQ(p.normalization_points, 100u);
}

TEST(VaFit, Errors) {
    const auto s = circle_samples(10, expz);
    EXPECT_THROW(va_fit(s, 10), DomainError);
    // Ten points on the real line are fine, but the basis dies once it runs out of points.
    EXPECT_NO_THROW(va_fit(s, 9));
    CVector z{0.0, 1.0, 2.0};
    const auto few = make_samples(z, {1.0, 2.0, 3.0});
    EXPECT_NO_THROW(va_fit(few, 2));
    try {
        detail::arnoldi(z, 3);
        FAIL() << "expected breakdown";
    } catch (const NumericalFailure& e) {
        EXPECT_NE(std::string(e.what()).find("step 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(va_eval(va_fit(s, 2), {{kPoleMarker}}), DomainError);
}

TEST(VaEval, ReproducesFitProjection) {
    const auto s = circle_samples(300, expz);
    const auto p = va_fit(s, 15);
    const auto q = va_orthonormal_basis(s.points, 15);
    const double scale = std::sqrt(300.0);
    const auto v = va_eval(p, s.points);
    for (std::size_t i = 0; i < s.size(); ++i) {
        cplx proj = 0.0;
        for (std::size_t k = 0; k <= 15; ++k) proj += p.coeffs[k] * q(i, k) * scale;
        EXPECT_NEAR(std::abs(v[i] - proj), 0.0, 1e-12 * std::abs(proj));
    }
}

TEST(VaProperty, OrthonormalAtDegreeHundred) {
    const auto z = boundary_samples(make_disk(0.0, 1.0), 500);
    const auto q = va_orthonormal_basis(z, 100);
    const auto g = q.adjoint() * q;
    double worst = 0.0;
    for (std::size_t i = 0; i <= 100; ++i)
        for (std::size_t j = 0; j <= 100; ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    EXPECT_LE(worst, 1e-10);
}

TEST(VaProperty, ErrorNonincreasingInDegree) {
    const auto s = sample_function(FunctionSpec::TwoBranchSqrt, boundary_samples(make_disk(0.0, 1.0), 300));
    double prev = 1e300;
    for (std::size_t n = 0; n <= 40; ++n) {
        const auto p = va_fit(s, n);
        const auto v = va_eval(p, s.points);
        double l2 = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) l2 += std::norm(v[i] - s.values[i]);
        EXPECT_LE(l2, prev * (1.0 + 1e-12) + 1e-28) << n;
        prev = l2;
    }
}

TEST(VaProperty, Linearity) {
    const auto z = boundary_samples(make_disk(0.0, 1.0), 200);
    CVector f(z.size()), g(z.size()), h(z.size());
    const cplx alpha(2.0, -1.0), beta(-0.5, 3.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        f[i] = std::exp(z[i]);
        g[i] = 1.0 / (z[i] - 3.0);
        h[i] = alpha * f[i] + beta * g[i];
    }
    const auto pf = va_fit(make_samples(z, f), 25);
    const auto pg = va_fit(make_samples(z, g), 25);
    const auto ph = va_fit(make_samples(z, h), 25);
    EXPECT_EQ(pf.hessenberg, ph.hessenberg);
    for (std::size_t k = 0; k <= 25; ++k)
        EXPECT_NEAR(std::abs(ph.coeffs[k] - (alpha * pf.coeffs[k] + beta * pg.coeffs[k])), 0.0, 1e-12);
}

TEST(VaProperty, TruncationMatchesDirectFit) {
    const auto s = sample_function(FunctionSpec::Exp, boundary_samples(make_disk(0.0, 1.0), 500));
    const auto full = va_fit(s, 40);
    const auto pts = test_grid(make_disk(0.0, 1.0), 400);
    const auto all = va_eval_all_degrees(full, pts);
    for (std::size_t n : {0u, 5u, 17u, 40u}) {
        const auto direct = va_eval(va_fit(s, n), pts);
        const auto trunc = va_eval(va_truncate(full, n), pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            EXPECT_NEAR(std::abs(direct[i] - trunc[i]), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(all[n][i] - trunc[i]), 0.0, 1e-12);
        }
    }
    EXPECT_THROW(va_truncate(full, 41), DomainError);
}
