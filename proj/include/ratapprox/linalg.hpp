#pragma once

// Dense complex linear algebra used by the fitters: Householder least squares,
// one-sided Jacobi for the smallest singular pair, Hessenberg-QR eigenvalues,
// and deflation of the arrowhead pencils that carry barycentric poles/zeros.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratapprox/errors.hpp"

namespace ratapprox {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DomainError("CMatrix: entry count " + std::to_string(data_.size()) +
                              " != rows*cols " + std::to_string(rows_ * cols_));
        }
        for (const auto& x : data_) {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
                throw DomainError("CMatrix: non-finite entry");
            }
        }
    }

    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        std::vector<cplx> entries;
        entries.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DomainError("CMatrix: ragged initializer");
            entries.insert(entries.end(), r.begin(), r.end());
        }
        *this = CMatrix(rows_, cols_, std::move(entries));
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(std::span<const cplx> d) {
        CMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return data_; }

    CVector column(std::size_t j) const {
        CVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : data_) s += std::norm(x);
        return std::sqrt(s);
    }

    CVector operator*(std::span<const cplx> x) const {
        if (x.size() != cols_) throw DomainError("CMatrix * vector: size mismatch");
        CVector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    CMatrix operator*(const CMatrix& b) const {
        if (cols_ != b.rows_) throw DomainError("CMatrix * CMatrix: size mismatch");
        CMatrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
            }
        return c;
    }

    CMatrix adjoint() const {
        CMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline double norm2(std::span<const cplx> x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

/// Ordering used for every returned eigenvalue multiset: real part, then imaginary part.
inline void sort_spectrum(CVector& values) {
    std::sort(values.begin(), values.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

namespace detail {

using Columns = std::vector<CVector>;

inline Columns to_columns(const CMatrix& a) {
    Columns c(a.cols(), CVector(a.rows()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c[j][i] = a(i, j);
    return c;
}

inline cplx dot(const CVector& a, const CVector& b, std::size_t from = 0) {
    cplx s = 0.0;
    for (std::size_t i = from; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Householder vector u with (I - 2uu^H/u^H u) x = alpha e_0; returns {u, alpha, u^H u}.
struct Reflector {
    CVector u;
    cplx alpha;
    double unorm2;

    bool identity() const noexcept { return unorm2 == 0.0; }

    void apply(std::span<cplx> y) const {
        if (identity()) return;
        cplx s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * y[i];
        s *= 2.0 / unorm2;
        for (std::size_t i = 0; i < u.size(); ++i) y[i] -= s * u[i];
    }
};

inline Reflector make_reflector(std::span<const cplx> x) {
    Reflector r;
    r.u.assign(x.begin(), x.end());
    const double nx = norm2(x);
    if (nx == 0.0) {
        r.alpha = 0.0;
        r.unorm2 = 0.0;
        return r;
    }
    const cplx phase = std::abs(x[0]) == 0.0 ? cplx(1.0) : x[0] / std::abs(x[0]);
    r.alpha = -phase * nx;
    r.u[0] -= r.alpha;
    r.unorm2 = 0.0;
    for (const auto& v : r.u) r.unorm2 += std::norm(v);
    return r;
}

/// In-place Householder QR of the column set; optionally transforms rhs by Q^H.
/// On return cols[j][0..j] holds the upper-triangular R.
inline void householder_qr(Columns& cols, CVector* rhs) {
    const std::size_t k = cols.size();
    if (k == 0) return;
    const std::size_t m = cols[0].size();
    for (std::size_t j = 0; j < k && j < m; ++j) {
        const std::span<const cplx> x(cols[j].data() + j, m - j);
        const Reflector h = make_reflector(x);
        if (h.identity()) continue;
        for (std::size_t c = j; c < k; ++c) h.apply(std::span<cplx>(cols[c].data() + j, m - j));
        if (rhs) h.apply(std::span<cplx>(rhs->data() + j, m - j));
        cols[j][j] = h.alpha;
        for (std::size_t i = j + 1; i < m; ++i) cols[j][i] = 0.0;
    }
}

/// Upper-triangular k x k factor R (columns) of a tall matrix.
inline Columns triangular_factor(Columns cols) {
    const std::size_t k = cols.size();
    householder_qr(cols, nullptr);
    Columns r(k, CVector(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i <= j && i < cols[j].size(); ++i) r[j][i] = cols[j][i];
    return r;
}

struct JacobiResult {
    std::vector<double> sigma;  // column norms after convergence
    Columns v;                  // accumulated right rotations, v[j] is column j
};

/// One-sided (Hestenes) Jacobi: rotates column pairs of A until mutually orthogonal.
inline JacobiResult one_sided_jacobi(Columns a) {
    const std::size_t n = a.size();
    JacobiResult out;
    out.v.assign(n, CVector(n));
    for (std::size_t j = 0; j < n; ++j) out.v[j][j] = 1.0;
    const double eps = std::numeric_limits<double>::epsilon();
    constexpr int kMaxSweeps = 80;

    bool converged = n <= 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                for (const auto& x : a[p]) alpha += std::norm(x);
                for (const auto& x : a[q]) beta += std::norm(x);
                const cplx gamma = dot(a[p], a[q]);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const cplx phase_conj = std::conj(gamma / g);
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                auto rotate = [&](CVector& xp, CVector& xq) {
                    for (std::size_t i = 0; i < xp.size(); ++i) {
                        const cplx up = xp[i];
                        const cplx uq = xq[i] * phase_conj;
                        xp[i] = c * up - s * uq;
                        xq[i] = s * up + c * uq;
                    }
                };
                rotate(a[p], a[q]);
                rotate(out.v[p], out.v[q]);
            }
        }
        converged = !rotated;
    }
    if (!converged) throw NumericalFailure("one-sided Jacobi did not converge within sweep limit");
    out.sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.sigma[j] = norm2(a[j]);
    return out;
}

inline std::vector<double> singular_values_of_columns(const Columns& cols) {
    if (cols.empty()) return {};
    Columns work = cols[0].size() >= cols.size() ? triangular_factor(cols) : cols;
    auto s = one_sided_jacobi(std::move(work)).sigma;
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

}  // namespace detail

/// Minimizer of ||A x - b||_2 for a tall full-rank A.
/// Throws RankDeficientError when sigma_min < 1e-13 sigma_max.
inline CVector solve_least_squares(const CMatrix& a, std::span<const cplx> b) {
    const std::size_t m = a.rows(), k = a.cols();
    if (k == 0 || m == 0) throw DomainError("solve_least_squares: empty matrix");
    if (m < k) throw DomainError("solve_least_squares: need rows >= cols");
    if (b.size() != m) throw DomainError("solve_least_squares: rhs length mismatch");

    auto cols = detail::to_columns(a);
    CVector rhs(b.begin(), b.end());
    detail::householder_qr(cols, &rhs);

    detail::Columns r(k, CVector(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i <= j; ++i) r[j][i] = cols[j][i];
    const auto sigma = detail::singular_values_of_columns(r);
    const double smax = sigma.front();
    std::size_t rank = 0;
    for (double s : sigma)
        if (s > 1e-13 * smax) ++rank;
    if (smax == 0.0) rank = 0;
    if (rank < k) throw RankDeficientError(rank, k);

    CVector x(k);
    for (std::size_t ii = k; ii-- > 0;) {
        cplx s = rhs[ii];
        for (std::size_t j = ii + 1; j < k; ++j) s -= r[j][ii] * x[j];
        x[ii] = s / r[ii][ii];
    }
    return x;
}

struct SingularPair {
    double sigma = 0.0;
    CVector v;
};

/// Smallest singular value of A and a unit right singular vector for it.
/// Wide inputs are treated as padded with zero rows (sigma = 0).
inline SingularPair min_singular_right_vector(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw DomainError("min_singular_right_vector: empty matrix");
    auto cols = detail::to_columns(a);
    if (a.rows() >= a.cols()) cols = detail::triangular_factor(std::move(cols));
    auto jac = detail::one_sided_jacobi(std::move(cols));
    std::size_t best = 0;
    for (std::size_t j = 1; j < jac.sigma.size(); ++j)
        if (jac.sigma[j] < jac.sigma[best]) best = j;
    SingularPair out;
    out.sigma = a.rows() >= a.cols() ? jac.sigma[best] : 0.0;
    out.v = std::move(jac.v[best]);
    const double nv = norm2(out.v);
    for (auto& x : out.v) x /= nv;
    return out;
}

namespace detail {

/// Diagonal similarity scaling by powers of two (Parlett-Reinsch), exact in floating point.
inline void balance(std::vector<cplx>& h, std::size_t n) {
    constexpr double radix = 2.0;
    bool done = false;
    for (int pass = 0; pass < 100 && !done; ++pass) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(h[j * n + i]);
                r += std::abs(h[i * n + j]);
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) h[i * n + j] /= f;
                for (std::size_t j = 0; j < n; ++j) h[j * n + i] *= f;
            }
        }
    }
}

inline void to_hessenberg(std::vector<cplx>& h, std::size_t n) {
    for (std::size_t k = 0; k + 2 < n; ++k) {
        CVector x(n - k - 1);
        for (std::size_t i = k + 1; i < n; ++i) x[i - k - 1] = h[i * n + k];
        const Reflector r = make_reflector(x);
        if (r.identity()) continue;
        const double f = 2.0 / r.unorm2;
        // left: rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(r.u[i - k - 1]) * h[i * n + j];
            s *= f;
            for (std::size_t i = k + 1; i < n; ++i) h[i * n + j] -= s * r.u[i - k - 1];
        }
        // right: columns k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h[i * n + j] * r.u[j - k - 1];
            s *= f;
            for (std::size_t j = k + 1; j < n; ++j) h[i * n + j] -= s * std::conj(r.u[j - k - 1]);
        }
        h[(k + 1) * n + k] = r.alpha;
        for (std::size_t i = k + 2; i < n; ++i) h[i * n + k] = 0.0;
    }
}

/// Shifted QR on an upper Hessenberg matrix; eigenvalues only.
inline CVector hessenberg_qr_eigenvalues(std::vector<cplx>& h, std::size_t n) {
    const double eps = std::numeric_limits<double>::epsilon();
    double hnorm = 0.0;
    for (const auto& x : h) hnorm += std::norm(x);
    hnorm = std::sqrt(hnorm);
    auto at = [&](std::size_t i, std::size_t j) -> cplx& { return h[i * n + j]; };

    CVector eig;
    eig.reserve(n);
    constexpr int kMaxIterPerEigenvalue = 100;
    std::vector<double> cs(n);
    CVector sn(n);

    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int its = 0;
    while (hi >= 0) {
        std::ptrdiff_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(at(lo, lo - 1));
            double ref = std::abs(at(lo, lo)) + std::abs(at(lo - 1, lo - 1));
            if (ref == 0.0) ref = hnorm;
            if (sub <= eps * ref || sub < std::numeric_limits<double>::min()) {
                at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.push_back(at(hi, hi));
            --hi;
            its = 0;
            continue;
        }
        if (++its > kMaxIterPerEigenvalue) {
            throw NumericalFailure("eigenvalues: QR iteration did not converge (block ending at " +
                                   std::to_string(hi) + ")");
        }

        cplx mu;
        if (its % 10 == 0) {
            // exceptional shift, deterministic
            mu = at(hi, hi) + cplx(0.75, 0.4375) * std::abs(at(hi, hi - 1));
        } else {
            const cplx a = at(hi - 1, hi - 1), b = at(hi - 1, hi), c = at(hi, hi - 1),
                       d = at(hi, hi);
            const cplx half = 0.5 * (a - d);
            const cplx disc = std::sqrt(half * half + b * c);
            const cplx m1 = 0.5 * (a + d) + disc, m2 = 0.5 * (a + d) - disc;
            mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
        }

        const auto L = static_cast<std::size_t>(lo), H = static_cast<std::size_t>(hi);
        for (std::size_t i = L; i <= H; ++i) at(i, i) -= mu;
        for (std::size_t k = L; k < H; ++k) {
            const cplx x = at(k, k), y = at(k + 1, k);
            const double nrm = std::hypot(std::abs(x), std::abs(y));
            double c;
            cplx s;
            if (nrm == 0.0) {
                c = 1.0;
                s = 0.0;
            } else if (std::abs(x) == 0.0) {
                c = 0.0;
                s = 1.0;
            } else {
                c = std::abs(x) / nrm;
                s = x * std::conj(y) / (std::abs(x) * nrm);
            }
            cs[k] = c;
            sn[k] = s;
            for (std::size_t j = k; j <= H; ++j) {
                const cplx r0 = at(k, j), r1 = at(k + 1, j);
                at(k, j) = c * r0 + s * r1;
                at(k + 1, j) = -std::conj(s) * r0 + c * r1;
            }
        }
        for (std::size_t k = L; k < H; ++k) {
            const double c = cs[k];
            const cplx s = sn[k];
            const std::size_t last = std::min(k + 2, H);
            for (std::size_t i = L; i <= last; ++i) {
                const cplx c0 = at(i, k), c1 = at(i, k + 1);
                at(i, k) = c * c0 + std::conj(s) * c1;
                at(i, k + 1) = -s * c0 + c * c1;
            }
        }
        for (std::size_t i = L; i <= H; ++i) at(i, i) += mu;
    }
    return eig;
}

}  // namespace detail

/// All eigenvalues of a square matrix with multiplicity, sorted by (real, imag).
inline CVector eigenvalues(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("eigenvalues: matrix must be square");
    const std::size_t n = a.rows();
    for (const auto& x : a.entries())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw DomainError("eigenvalues: non-finite entry");
    if (n == 0) return {};
    std::vector<cplx> h(a.entries().begin(), a.entries().end());
    detail::balance(h, n);
    detail::to_hessenberg(h, n);
    CVector eig = detail::hessenberg_qr_eigenvalues(h, n);
    sort_spectrum(eig);
    return eig;
}

namespace detail {

inline CMatrix schur_complement_1(const CMatrix& e) {
    const std::size_t n = e.rows();
    const cplx a = e(0, 0);
    CMatrix s(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) s(i - 1, j - 1) = e(i, j) - e(i, 0) * e(0, j) / a;
    return s;
}

/// One step of deflation for a pencil (E, diag(0,1,...,1)) whose (0,0) entry vanishes.
/// The constraint row forces v_U into the orthogonal complement of conj(row); rotating
/// that complement onto coordinates 1.. yields a pencil of the same shape, one size smaller.
inline CMatrix deflate_null_corner(const CMatrix& e, double tol) {
    const std::size_t n = e.rows();
    const std::size_t nu = n - 1;
    CVector b(nu), c(nu);
    for (std::size_t j = 0; j < nu; ++j) {
        b[j] = e(0, j + 1);
        c[j] = e(j + 1, 0);
    }
    if (norm2(b) <= tol || norm2(c) <= tol)
        throw NumericalFailure("finite_generalized_eigenvalues: singular pencil (null constraint)");
    if (nu == 1) {
        // (v0, v1) with b v1 = 0 forces v1 = 0, then c v0 = 0 forces v0 = 0: no eigenvector.
        return CMatrix(0, 0);
    }
    CVector x(nu);
    for (std::size_t j = 0; j < nu; ++j) x[j] = std::conj(b[j]);
    const Reflector h = make_reflector(x);

    CMatrix m(nu, nu);
    for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t j = 0; j < nu; ++j) m(i, j) = e(i + 1, j + 1);
    // m <- H m
    for (std::size_t j = 0; j < nu; ++j) {
        CVector col(nu);
        for (std::size_t i = 0; i < nu; ++i) col[i] = m(i, j);
        h.apply(col);
        for (std::size_t i = 0; i < nu; ++i) m(i, j) = col[i];
    }
    // m <- m H  (H Hermitian)
    if (!h.identity()) {
        const double f = 2.0 / h.unorm2;
        for (std::size_t i = 0; i < nu; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < nu; ++j) s += m(i, j) * h.u[j];
            s *= f;
            for (std::size_t j = 0; j < nu; ++j) m(i, j) -= s * std::conj(h.u[j]);
        }
    }
    h.apply(c);
    CMatrix out(nu, nu);
    for (std::size_t i = 0; i < nu; ++i) {
        out(i, 0) = c[i];
        for (std::size_t j = 1; j < nu; ++j) out(i, j) = m(i, j);
    }
    return out;
}

}  // namespace detail

/// Finite eigenvalues of the pencil (E, diag(mask)).
///
/// Masked rows/columns are deflated away so only a standard eigenproblem remains.
/// Supported structures: a nonsingular masked block (Schur complement), or a single
/// masked index whose diagonal entry vanishes (arrowhead pencils), handled recursively.
inline CVector finite_generalized_eigenvalues(const CMatrix& e, const std::vector<bool>& mask) {
    const std::size_t n = e.rows();
    if (e.cols() != n) throw DomainError("finite_generalized_eigenvalues: matrix must be square");
    if (mask.size() != n) throw DomainError("finite_generalized_eigenvalues: mask length mismatch");

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (!mask[i]) order.push_back(i);
    const std::size_t k = order.size();
    if (k == 0) return eigenvalues(e);
    for (std::size_t i = 0; i < n; ++i)
        if (mask[i]) order.push_back(i);

    CMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = e(order[i], order[j]);

    const double eps = std::numeric_limits<double>::epsilon();
    if (k == 1) {
        CMatrix cur = std::move(p);
        while (cur.rows() > 0) {
            const double tol = 64.0 * eps * cur.frobenius_norm();
            if (std::abs(cur(0, 0)) > tol) return eigenvalues(detail::schur_complement_1(cur));
            if (cur.rows() == 1)
                throw NumericalFailure("finite_generalized_eigenvalues: singular pencil (zero 1x1)");
            cur = detail::deflate_null_corner(cur, tol);
        }
        return {};
    }

    // k > 1: require a nonsingular masked block.
    CMatrix a11(k, k), a12(k, n - k), a21(n - k, k), a22(n - k, n - k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx v = p(i, j);
            if (i < k && j < k) a11(i, j) = v;
            else if (i < k) a12(i, j - k) = v;
            else if (j < k) a21(i - k, j) = v;
            else a22(i - k, j - k) = v;
        }
    const auto sv = detail::singular_values_of_columns(detail::to_columns(a11));
    if (sv.back() <= 64.0 * eps * p.frobenius_norm())
        throw NumericalFailure(
            "finite_generalized_eigenvalues: singular masked block with several masked indices "
            "is not supported");
    if (n == k) return {};
    // a11^{-1} a12, column by column
    CMatrix x(k, n - k);
    for (std::size_t j = 0; j < n - k; ++j) {
        const CVector col = solve_least_squares(a11, a12.column(j));
        for (std::size_t i = 0; i < k; ++i) x(i, j) = col[i];
    }
    const CMatrix corr = a21 * x;
    CMatrix s(n - k, n - k);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) s(i, j) = a22(i, j) - corr(i, j);
    return eigenvalues(s);
}

}  // namespace ratapprox
