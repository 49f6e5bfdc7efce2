#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "g2m/errors.hpp"

namespace g2m {

/// Dense row-major matrix. Everything in this toolkit is desk scale
/// (n <= 64), so there is no blocking, no sparsity, no expression templates.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

inline Mat transpose(const Mat& m) {
    Mat t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline std::vector<double> matvec(const Mat& a, const std::vector<double>& x) {
    if (a.cols() != x.size()) throw InputError("matvec: dimension mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

inline double frobenius_norm(const Mat& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

inline double max_abs(const Mat& m) {
    double s = 0.0;
    for (double v : m.data()) s = std::max(s, std::abs(v));
    return s;
}

/// Lower Cholesky factor of a symmetric matrix, or nullopt when the matrix is
/// not numerically positive-definite.
inline std::optional<Mat> cholesky(const Mat& s) {
    const std::size_t n = s.rows();
    if (n != s.cols()) return std::nullopt;
    Mat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = s(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

inline double det_from_cholesky(const Mat& lower) {
    double p = 1.0;
    for (std::size_t i = 0; i < lower.rows(); ++i) p *= lower(i, i);
    return p * p;
}

/// Solve L y = b with L lower triangular.
inline std::vector<double> forward_solve(const Mat& l, std::vector<double> b) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
        b[i] /= l(i, i);
    }
    return b;
}

/// Solve L^T x = b with L lower triangular.
inline std::vector<double> backward_solve_t(const Mat& l, std::vector<double> b) {
    const std::size_t n = l.rows();
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) b[ii] -= l(k, ii) * b[k];
        b[ii] /= l(ii, ii);
    }
    return b;
}

inline std::vector<double> cholesky_solve(const Mat& lower, const std::vector<double>& b) {
    return backward_solve_t(lower, forward_solve(lower, b));
}

/// Gauss-Jordan inverse with partial pivoting.
inline Mat inverse(Mat a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw InputError("inverse: matrix not square");
    Mat inv = Mat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-300)
            throw NumericError("inverse: matrix is singular");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const double d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Determinant by LU with partial pivoting.
inline double determinant(Mat a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw InputError("determinant: matrix not square");
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

struct SymEig {
    std::vector<double> values;  // ascending
    Mat vectors;                 // column j pairs with values[j]
};

/// Cyclic Jacobi eigensolver for symmetric matrices. Deterministic sweep
/// order, eigenvalues sorted ascending, each eigenvector's largest-magnitude
/// component made positive so results are reproducible bit for bit.
inline SymEig jacobi_eigensym(Mat s, int max_sweeps = 100) {
    const std::size_t n = s.rows();
    if (n != s.cols()) throw InputError("jacobi_eigensym: matrix not square");
    Mat v = Mat::identity(n);
    const double scale = std::max(max_abs(s), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = s(i, i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
    SymEig out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = diag[order[j]];
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v(i, order[j])) > std::abs(v(imax, order[j]))) imax = i;
        const double sign = v(imax, order[j]) >= 0.0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, order[j]);
    }
    return out;
}

/// Generalized symmetric-definite eigenproblem  h x = lambda g x  with g
/// positive-definite, reduced through the Cholesky factor of g.
inline SymEig generalized_eigensym(const Mat& h, const Mat& g) {
    auto chol = cholesky(g);
    if (!chol) throw NumericError("generalized_eigensym: right-hand matrix not positive-definite");
    const Mat& l = *chol;
    const std::size_t n = h.rows();
    // m = L^{-1} h L^{-T}, built column by column
    Mat m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = h(i, j);
        col = forward_solve(l, col);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    Mat mt = transpose(m);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = mt(i, j);
        col = forward_solve(l, col);
        for (std::size_t i = 0; i < n; ++i) mt(i, j) = col[i];
    }
    SymEig eig = jacobi_eigensym(mt);
    // map y back to x = L^{-T} y
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = eig.vectors(i, j);
        y = backward_solve_t(l, y);
        for (std::size_t i = 0; i < n; ++i) eig.vectors(i, j) = y[i];
    }
    return eig;
}

/// 2-norm condition number estimate via the eigenvalues of a^T a.
inline double condition_estimate(const Mat& a) {
    Mat ata = matmul(transpose(a), a);
    SymEig eig = jacobi_eigensym(ata);
    const double lo = eig.values.front(), hi = eig.values.back();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

}  // namespace g2m
