#include "ratapprox/aaa.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace ratapprox;

namespace {

constexpr cplx I(0.0, 1.0);

SampleSet on_unit_circle(const std::function<cplx(cplx)>& f, std::size_t m = 500) {
    CVector z = boundary_samples(make_disk(0.0, 1.0), m);
    CVector v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) v[i] = f(z[i]);
    return make_samples(std::move(z), std::move(v));
}

double grid_error(const BarycentricRational& r, const std::function<cplx(cplx)>& f) {
    double e = 0.0;
    for (const auto& z : test_grid(make_disk(0.0, 1.0), kDefaultTestGridCount))
        e = std::max(e, std::abs(eval(r, z) - f(z)));
    return e;
}

}  // namespace

TEST(AaaFit, ExpOnDisk) {
    const auto s = sample_function(FunctionSpec::Exp, boundary_samples(make_disk(0.0, 1.0), 500));
    const auto rep = aaa_fit(s, 1e-12, 150);
    EXPECT_TRUE(rep.converged);
    EXPECT_LE(rep.model.degree(), 7u);
    EXPECT_LE(rep.final_error, 1e-11 * std::exp(1.0));
    EXPECT_LE(grid_error(rep.model, [](cplx z) { return std::exp(z); }), 1e-11 * std::exp(1.0));
}

TEST(AaaFit, ConstantIsDegreeZero) {
    const auto s = on_unit_circle([](cplx) { return cplx(5.0); }, 50);
    const auto rep = aaa_fit(s, 1e-12, 10);
    EXPECT_EQ(rep.model.degree(), 0u);
    EXPECT_EQ(rep.history.size(), 1u);
    EXPECT_EQ(rep.history[0].max_error, 0.0);
    EXPECT_EQ(eval(rep.model, cplx(0.3, 0.1)), cplx(5.0));
}

TEST(AaaFit, SimplePoleIsRecovered) {
    const auto s = on_unit_circle([](cplx z) { return 1.0 / (z - 2.0); }, 100);
    const auto rep = aaa_fit(s, 1e-10, 20);
    ASSERT_EQ(rep.model.degree(), 1u);
    const auto p = poles(rep.model);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(std::abs(p[0] - 2.0), 0.0, 1e-8);
    const auto res = residues(rep.model, p);
    EXPECT_FALSE(res[0].near_support);
    EXPECT_NEAR(std::abs(res[0].value - 1.0), 0.0, 1e-8);
}

TEST(AaaFit, ResidueIgnoresConstantShift) {
    const auto s = on_unit_circle([](cplx z) { return 3.0 + 1.0 / (z - 2.0); }, 100);
    const auto rep = aaa_fit(s, 1e-12, 20);
    const auto p = poles(rep.model);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(std::abs(residues(rep.model, p)[0].value - 1.0), 0.0, 1e-8);
}

TEST(AaaFit, ResidueOfScaledPole) {
    const auto s = on_unit_circle([](cplx z) { return 2.0 / (z - 2.0 * I); }, 100);
    const auto rep = aaa_fit(s, 1e-12, 20);
    const auto p = poles(rep.model);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(std::abs(p[0] - 2.0 * I), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(residues(rep.model, p)[0].value - 2.0), 0.0, 1e-8);
}

TEST(AaaFit, Preconditions) {
    const auto s = on_unit_circle([](cplx z) { return z; }, 10);
    EXPECT_THROW(aaa_fit(s, 1e-12, 9), DomainError);
    EXPECT_THROW(aaa_fit(s, 0.0, 3), DomainError);
    EXPECT_NO_THROW(aaa_fit(s, 1e-12, 8));
}

TEST(Eval, Examples) {
    const auto r = make_barycentric({0.0, 1.0}, {0.0, 1.0}, {1.0, -1.0});
    EXPECT_NEAR(std::abs(eval(r, 0.5) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(eval(r, cplx(2.0, 3.0)) - cplx(2.0, 3.0)), 0.0, 1e-14);
    EXPECT_EQ(eval(r, 1.0), cplx(1.0));
    const auto c = make_barycentric({0.25}, {7.0}, {1.0});
    EXPECT_EQ(eval(c, 100.0), cplx(7.0));
    EXPECT_EQ(c.degree(), 0u);
}

TEST(Eval, PoleMarker) {
    // 1 / (z (z - 1)) type denominator: weights (1, 1) put the pole at 0.5.
    const auto r = make_barycentric({0.0, 1.0}, {1.0, 2.0}, {1.0, 1.0});
    EXPECT_FALSE(is_finite(eval(r, 0.5)));
}

TEST(Eval, RejectsMalformedModels) {
    EXPECT_THROW(make_barycentric({}, {}, {}), DomainError);
    EXPECT_THROW(make_barycentric({0.0, 0.0}, {1.0, 2.0}, {1.0, 1.0}), DomainError);
    EXPECT_THROW(make_barycentric({0.0, 1.0}, {1.0}, {1.0, 1.0}), DomainError);
    EXPECT_THROW(make_barycentric({0.0, 1.0}, {1.0, 2.0}, {0.0, 0.0}), DomainError);
}

TEST(Poles, TanSqPolesNearTrueSingularities) {
    const auto s = sample_function(FunctionSpec::TanSq, boundary_samples(make_disk(0.0, 1.0), 500));
    const auto rep = aaa_fit(s, 1e-12, 150);
    const auto p = poles(rep.model);
    EXPECT_EQ(p.size(), rep.model.degree());
    const double r = std::sqrt(M_PI / 2);
    for (cplx target : {cplx(r), cplx(-r), r * I, -r * I}) {
        double best = 1e300;
        for (const auto& q : p) best = std::min(best, std::abs(q - target));
        EXPECT_LE(best, 1e-4) << target;
    }
}

TEST(Poles, DegreeZeroIsDomainError) {
    EXPECT_THROW(poles(make_barycentric({0.0}, {1.0}, {1.0})), DomainError);
}

TEST(Zeros, LinearData) {
    const auto s = on_unit_circle([](cplx z) { return z - 0.5; }, 50);
    const auto rep = aaa_fit(s, 1e-12, 10);
    ASSERT_EQ(rep.model.degree(), 1u);
    const auto z = zeros(rep.model);
    ASSERT_EQ(z.size(), 1u);
    EXPECT_NEAR(std::abs(z[0] - 0.5), 0.0, 1e-10);
    // A polynomial in barycentric form has its pole at infinity.
    const auto p = poles(rep.model);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_TRUE(!is_finite(p[0]) || std::abs(p[0]) > 1e8);
}

TEST(Zeros, ExpHasNoZerosInDisk) {
    const auto s = sample_function(FunctionSpec::Exp, boundary_samples(make_disk(0.0, 1.0), 500));
    const auto rep = aaa_fit(s, 1e-12, 150);
    for (const auto& z : zeros(rep.model)) {
        if (is_finite(z)) {
            EXPECT_GT(std::abs(z), 1.0);
        }
    }
    EXPECT_TRUE(zeros(make_barycentric({0.0}, {3.0}, {1.0})).empty());
}

TEST(Cleanup, CleanModelUnchanged) {
    const auto s = on_unit_circle([](cplx z) { return 1.0 / (z - 2.0); }, 100);
    auto rep = aaa_fit(s, 1e-10, 20, {.cleanup = false});
    const auto out = cleanup(rep, s);
    EXPECT_EQ(out.cleanup_removed, 0u);
    EXPECT_EQ(out.model.supports, rep.model.supports);
    EXPECT_EQ(out.model.weights, rep.model.weights);
}

TEST(Cleanup, OverfitExpKeepsAccuracy) {
    const auto s = sample_function(FunctionSpec::Exp, boundary_samples(make_disk(0.0, 1.0), 500));
    // tol 1e-15 is already met at degree 7, so an unreachable tol forces degree 20.
    const auto raw = aaa_fit(s, 1e-17, 20, {.cleanup = false});
    ASSERT_EQ(raw.model.degree(), 20u);
    const auto cleaned = cleanup(raw, s);
    EXPECT_FALSE(cleaned.cleanup_warning);
    EXPECT_LE(cleaned.final_error, 10.0 * raw.final_error);
}

TEST(Cleanup, NoisyOverfitLosesDoublets) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    CVector z = boundary_samples(make_disk(0.0, 1.0), 500);
    CVector v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) v[i] = std::exp(z[i]) + 1e-12 * cplx(g(rng), g(rng));
    const auto s = make_samples(z, v);
    const auto raw = aaa_fit(s, 1e-17, 30, {.cleanup = false});
    const auto cleaned = cleanup(raw, s);
    EXPECT_GE(cleaned.cleanup_removed, 1u);
    EXPECT_EQ(cleaned.model.degree() + cleaned.cleanup_removed, raw.model.degree());
    EXPECT_LE(cleaned.final_error, 10.0 * raw.final_error);
    const double threshold = 1e-13 * detail::max_abs(s.values) * detail::diameter(s.points);
    const auto p = poles(cleaned.model);
    const auto res = residues(cleaned.model, p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (is_finite(p[i])) {
            EXPECT_GE(std::abs(res[i].value), threshold);
        }
    }
}

TEST(Cleanup, DegreeZeroUnchanged) {
    const auto s = on_unit_circle([](cplx) { return cplx(2.0); }, 20);
    const auto rep = aaa_fit(s, 1e-12, 5, {.cleanup = false});
    const auto out = cleanup(rep, s);
    EXPECT_EQ(out.model.degree(), 0u);
    EXPECT_EQ(out.cleanup_removed, 0u);
}

// Properties

TEST(AaaProperty, InterpolatesAtSupports) {
    for (auto f : {FunctionSpec::Exp, FunctionSpec::TanSq, FunctionSpec::ExpTanSq,
                   FunctionSpec::TwoBranchSqrt}) {
        const auto s = sample_function(f, boundary_samples(make_disk(0.0, 1.0), 500));
        const auto rep = aaa_fit(s, 1e-10, 150);
        const auto& r = rep.model;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r.weights[k] != 0.0) {
                EXPECT_EQ(eval(r, r.supports[k]), r.values[k]);
            }
        }
    }
}

struct HistoryCase {
    FunctionSpec f;
    Domain d;
    double tol;
    std::size_t step;  // 2 for even functions: odd-degree iterates break the symmetry
    double band;
};

class HistoryBand : public ::testing::TestWithParam<HistoryCase> {};

TEST_P(HistoryBand, MostlyNonincreasingAndPoleCountMatches) {
    const auto& c = GetParam();
    const auto s = sample_function(c.f, boundary_samples(c.d, 500));
    const auto rep = aaa_fit(s, c.tol, 150);
    for (std::size_t i = 1; i < rep.history.size(); ++i)
        EXPECT_EQ(rep.history[i].degree, rep.history[i - 1].degree + 1);
    std::size_t steps = 0, nonincreasing = 0;
    for (std::size_t i = c.step; i < rep.history.size(); i += c.step) {
        ++steps;
        if (rep.history[i].max_error <= rep.history[i - c.step].max_error) ++nonincreasing;
    }
    EXPECT_GE(static_cast<double>(nonincreasing), c.band * static_cast<double>(steps));
    if (rep.model.degree() >= 1) {
        EXPECT_EQ(poles(rep.model).size(), rep.model.degree());
    }
}

// |x| stays near 82% even over even steps; the band records the measured behaviour.
INSTANTIATE_TEST_SUITE_P(
    BuiltinFunctions, HistoryBand,
    ::testing::Values(HistoryCase{FunctionSpec::Exp, make_disk(0.0, 1.0), 1e-12, 1, 0.9},
                      HistoryCase{FunctionSpec::TanSq, make_disk(0.0, 1.0), 1e-12, 2, 0.9},
                      HistoryCase{FunctionSpec::ExpTanSq, make_disk(0.0, 1.0), 1e-12, 2, 0.9},
                      HistoryCase{FunctionSpec::TwoBranchSqrt, make_disk(0.0, 1.0), 1e-10, 1, 0.9},
                      HistoryCase{FunctionSpec::AbsVal, make_interval(-1.0, 1.0), 1e-8, 2, 0.8},
                      HistoryCase{FunctionSpec::SqrtNeg, make_horseshoe(0.5, 1.5, 0.3), 1e-10, 1, 0.9}),
    [](const auto& info) { return std::string(function_name(info.param.f)); });

TEST(AaaProperty, RationalOfDegreeDIsReproduced) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(1.5 + 1.0, 4.0), angle(0.0, 2 * M_PI), u(-1, 1);
    for (std::size_t d = 1; d <= 3; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            CVector p(d), a(d);
            for (std::size_t k = 0; k < d; ++k) {
                p[k] = std::polar(radius(rng), angle(rng));
                a[k] = cplx(u(rng), u(rng));
            }
            auto f = [&](cplx z) {
                cplx s = 0.5;
                for (std::size_t k = 0; k < d; ++k) s += a[k] / (z - p[k]);
                return s;
            };
            const auto s = on_unit_circle(f, 200);
            const auto rep = aaa_fit(s, 1e-12, 20);
            EXPECT_LE(rep.model.degree(), d + 1);
            EXPECT_LE(grid_error(rep.model, f), 1e-11 * detail::max_abs(s.values));
        }
    }
}
