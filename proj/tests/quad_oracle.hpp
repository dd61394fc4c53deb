#pragma once

// Quad-precision reference values for error oracles that sit near double rounding level.

#include <quadmath.h>

#include "ratapprox/aaa.hpp"

namespace ratapprox::testing {

inline __complex128 to_quad(cplx z) {
    __complex128 q;
    __real__ q = z.real();
    __imag__ q = z.imag();
    return q;
}

inline cplx to_double(__complex128 q) {
    return {static_cast<double>(crealq(q)), static_cast<double>(cimagq(q))};
}

inline __complex128 quad_function(FunctionSpec f, __complex128 z) {
    switch (f) {
        case FunctionSpec::Exp: return cexpq(z);
        case FunctionSpec::TanSq: return ctanq(z * z);
        case FunctionSpec::ExpTanSq: return cexpq(ctanq(z * z));
        default: return to_quad(eval_function(f, to_double(z)));
    }
}

/// The stored model evaluated without rounding error beyond quad precision.
inline __complex128 quad_eval(const BarycentricRational& r, __complex128 z) {
    __complex128 num = 0, den = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        const __complex128 c = to_quad(r.weights[k]) / (z - to_quad(r.supports[k]));
        num += c * to_quad(r.values[k]);
        den += c;
    }
    return num / den;
}

inline std::vector<__complex128> quad_poles(const BarycentricRational& r) {
    std::vector<__complex128> out;
    for (const auto& p0 : poles(r)) {
        if (!is_finite(p0)) continue;
        __complex128 p = to_quad(p0);
        for (int it = 0; it < 5; ++it) {
            __complex128 d = 0, dp = 0;
            for (std::size_t k = 0; k < r.size(); ++k) {
                const __complex128 diff = p - to_quad(r.supports[k]);
                const __complex128 c = to_quad(r.weights[k]) / diff;
                d += c;
                dp -= c / diff;
            }
            p -= d / dp;
        }
        out.push_back(p);
    }
    return out;
}

/// f(z) - r(z) with the interpolation defect of the stored (rounded) values f_k removed:
/// f - r_hat where r_hat has the poles of r and interpolates f exactly at the supports.
inline cplx exact_data_error(FunctionSpec f, const BarycentricRational& r, cplx z) {
    const auto p = quad_poles(r);
    auto phi = [&](__complex128 t) {
        __complex128 v = 1;
        for (std::size_t k = 0; k < r.size(); ++k) {
            v *= t - to_quad(r.supports[k]);
            if (k < p.size()) v /= t - p[k];
        }
        return v;
    };
    const __complex128 zq = to_quad(z);
    __complex128 correction = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        const __complex128 zk = to_quad(r.supports[k]);
        __complex128 dphi = 1;
        for (std::size_t m = 0; m < r.size(); ++m)
            if (m != k) dphi *= zk - to_quad(r.supports[m]);
        for (const auto& q : p) dphi /= zk - q;
        correction += (quad_function(f, zk) - to_quad(r.values[k])) * phi(zq) / ((zq - zk) * dphi);
    }
    return to_double(quad_function(f, zq) - quad_eval(r, zq) - correction);
}

}  // namespace ratapprox::testing
