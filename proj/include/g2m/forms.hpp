#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "g2m/errors.hpp"
#include "g2m/linalg.hpp"

namespace g2m {

inline constexpr int kDim = 7;

/// C(7,k) for k = 0..7
inline constexpr std::array<int, 8> kBasisCount = {1, 7, 21, 35, 35, 21, 7, 1};

namespace detail {

/// Strictly increasing index tuples over {0,...,6} in lexicographic order,
/// one table per degree, with rank lookup keyed by the 7-bit index mask.
struct TupleTables {
    std::array<std::vector<unsigned>, 8> mask_of_rank;
    std::array<std::vector<std::array<int, 7>>, 8> tuple_of_rank;
    std::array<std::array<int, 128>, 8> rank_of_mask{};

    TupleTables() {
        for (auto& row : rank_of_mask) row.fill(-1);
        for (int k = 0; k <= kDim; ++k) {
            std::array<int, 7> idx{};
            for (int i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                unsigned mask = 0;
                for (int i = 0; i < k; ++i) mask |= 1u << idx[i];
                rank_of_mask[k][mask] = static_cast<int>(mask_of_rank[k].size());
                mask_of_rank[k].push_back(mask);
                tuple_of_rank[k].push_back(idx);
                if (k == 0) break;
                int pos = k - 1;
                while (pos >= 0 && idx[pos] == kDim - k + pos) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }
};

inline const TupleTables& tables() {
    static const TupleTables t;
    return t;
}

/// Sign of e^A wedge e^B relative to e^{A union B} for disjoint index masks:
/// (-1)^{#inversions} when interleaving the sorted B indices after A.
inline int merge_sign(unsigned mask_a, unsigned mask_b) {
    int inv = 0;
    for (int i = 0; i < kDim; ++i)
        if (mask_b >> i & 1u) inv += std::popcount(mask_a >> (i + 1));
    return (inv & 1) ? -1 : 1;
}

/// Determinant of a k x k submatrix handed in as a flat row-major array.
inline double small_det(double* m, int k) {
    double det = 1.0;
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(m[r * k + col]) > std::abs(m[piv * k + col])) piv = r;
        if (m[piv * k + col] == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(m[piv * k + j], m[col * k + j]);
            det = -det;
        }
        det *= m[col * k + col];
        for (int r = col + 1; r < k; ++r) {
            const double f = m[r * k + col] / m[col * k + col];
            for (int j = col; j < k; ++j) m[r * k + j] -= f * m[col * k + j];
        }
    }
    return det;
}

}  // namespace detail

struct Vector7 {
    std::array<double, 7> c{};

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    static Vector7 axis(int i) {
        Vector7 v;
        v[i] = 1.0;
        return v;
    }
};

inline Vector7 operator+(Vector7 a, const Vector7& b) {
    for (int i = 0; i < kDim; ++i) a[i] += b[i];
    return a;
}

inline Vector7 operator*(double s, Vector7 a) {
    for (int i = 0; i < kDim; ++i) a[i] *= s;
    return a;
}

/// Exterior form of fixed degree on oriented R^7. Coefficients are stored
/// densely over the strictly increasing index tuples of that degree, in
/// lexicographic order.
class Form {
public:
    Form() : degree_(0) {}

    explicit Form(int degree) : degree_(degree) {
        if (degree < 0 || degree > kDim) throw InputError("Form: degree out of range 0..7");
    }

    /// Basis form e^{axes}. Axes are 0-based, strictly increasing.
    static Form basis(std::initializer_list<int> axes) {
        Form f(static_cast<int>(axes.size()));
        unsigned mask = 0;
        int prev = -1;
        for (int a : axes) {
            if (a < 0 || a >= kDim || a <= prev)
                throw InputError("Form::basis: axes must be strictly increasing in 0..6");
            mask |= 1u << a;
            prev = a;
        }
        f.c_[static_cast<std::size_t>(detail::tables().rank_of_mask[f.degree_][mask])] = 1.0;
        return f;
    }

    int degree() const { return degree_; }
    int size() const { return kBasisCount[static_cast<std::size_t>(degree_)]; }

    double operator[](int rank) const { return c_[static_cast<std::size_t>(rank)]; }
    double& operator[](int rank) { return c_[static_cast<std::size_t>(rank)]; }

    Form& operator+=(const Form& o) {
        require_same_degree(o, "+");
        for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
        return *this;
    }
    Form& operator-=(const Form& o) {
        require_same_degree(o, "-");
        for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
        return *this;
    }
    Form& operator*=(double s) {
        for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] *= s;
        return *this;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < size(); ++i) m = std::max(m, std::abs(c_[static_cast<std::size_t>(i)]));
        return m;
    }

    /// Euclidean norm of the coefficient vector
    double coeff_norm() const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
        return std::sqrt(s);
    }

    bool finite() const {
        for (int i = 0; i < size(); ++i)
            if (!std::isfinite(c_[static_cast<std::size_t>(i)])) return false;
        return true;
    }

private:
    void require_same_degree(const Form& o, const char* op) const {
        if (degree_ != o.degree_)
            throw InputError(std::string("Form: degree mismatch in operator") + op);
    }

    int degree_;
    std::array<double, 35> c_{};
};

inline Form operator+(Form a, const Form& b) { return a += b; }
inline Form operator-(Form a, const Form& b) { return a -= b; }
inline Form operator*(double s, Form a) { return a *= s; }
inline Form operator*(Form a, double s) { return a *= s; }
inline Form operator-(Form a) { return a *= -1.0; }

/// Symmetric 7x7 metric tensor. Stored exactly symmetric; positive
/// definiteness is checked where the metric is actually used.
class Metric7 {
public:
    Metric7() = default;

    static Metric7 identity() { return scaled_identity(1.0); }

    static Metric7 scaled_identity(double c) {
        Metric7 g;
        for (int i = 0; i < kDim; ++i) g.e_[static_cast<std::size_t>(i * kDim + i)] = c;
        return g;
    }

    static Metric7 from_row_major(std::span<const double> entries) {
        if (entries.size() != 49) throw InputError("Metric7: expected 49 row-major entries");
        Metric7 g;
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) {
                if (entries[static_cast<std::size_t>(i * kDim + j)] !=
                    entries[static_cast<std::size_t>(j * kDim + i)])
                    throw InputError("Metric7: entries must be exactly symmetric");
                g.e_[static_cast<std::size_t>(i * kDim + j)] = entries[static_cast<std::size_t>(i * kDim + j)];
            }
        return g;
    }

    double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * kDim + j)]; }

    void set(int i, int j, double v) {
        e_[static_cast<std::size_t>(i * kDim + j)] = v;
        e_[static_cast<std::size_t>(j * kDim + i)] = v;
    }

    const std::array<double, 49>& row_major() const { return e_; }

    Mat as_mat() const {
        Mat m(7, 7);
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = (*this)(i, j);
        return m;
    }

private:
    std::array<double, 49> e_{};
};

/// Factorization bundle for one metric: the inverse and the volume density,
/// computed once and shared across inner products and Hodge stars.
class MetricOps {
public:
    explicit MetricOps(const Metric7& g) : g_(g) {
        auto chol = cholesky(g.as_mat());
        if (!chol) throw InputError("metric is not positive-definite");
        sqrt_det_ = 1.0;
        for (int i = 0; i < kDim; ++i) sqrt_det_ *= (*chol)(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
        Mat inv = inverse(g.as_mat());
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j)
                inv_[static_cast<std::size_t>(i * kDim + j)] =
                    0.5 * (inv(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +
                           inv(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
    }

    const Metric7& metric() const { return g_; }
    double inv(int i, int j) const { return inv_[static_cast<std::size_t>(i * kDim + j)]; }
    double sqrt_det() const { return sqrt_det_; }

private:
    Metric7 g_;
    std::array<double, 49> inv_{};
    double sqrt_det_ = 1.0;
};

/// Wedge product. Bilinear, associative, graded-anticommutative; the
/// anticommutativity is bit-exact: swapping the arguments reproduces the
/// same floats up to sign. Mixed degrees delegate to the smaller-degree-first
/// order, equal degrees accumulate each unordered index pair as one grouped
/// two-term sum.
inline Form wedge(const Form& x, const Form& y) {
    const int kx = x.degree(), ky = y.degree();
    if (kx + ky > kDim) throw InputError("wedge: degree overflow (deg a + deg b > 7)");
    const auto& t = detail::tables();
    Form out(kx + ky);
    if (ky < kx) {
        out = wedge(y, x);
        if ((kx * ky) % 2 != 0) out *= -1.0;
        return out;
    }
    if (kx == 0 && ky == 0) {
        out[0] = x[0] * y[0];
        return out;
    }
    if (kx == ky) {
        const int n = kBasisCount[static_cast<std::size_t>(kx)];
        for (int rx = 0; rx < n; ++rx) {
            const unsigned mx = t.mask_of_rank[static_cast<std::size_t>(kx)][static_cast<std::size_t>(rx)];
            for (int ry = rx + 1; ry < n; ++ry) {
                const unsigned my = t.mask_of_rank[static_cast<std::size_t>(ky)][static_cast<std::size_t>(ry)];
                if (mx & my) continue;
                const double u = detail::merge_sign(mx, my) * x[rx] * y[ry];
                const double v = detail::merge_sign(my, mx) * x[ry] * y[rx];
                if (u == 0.0 && v == 0.0) continue;
                out[t.rank_of_mask[static_cast<std::size_t>(kx + ky)][mx | my]] += u + v;
            }
        }
        return out;
    }
    for (int rx = 0; rx < kBasisCount[static_cast<std::size_t>(kx)]; ++rx) {
        const double cx = x[rx];
        if (cx == 0.0) continue;
        const unsigned mx = t.mask_of_rank[static_cast<std::size_t>(kx)][static_cast<std::size_t>(rx)];
        for (int ry = 0; ry < kBasisCount[static_cast<std::size_t>(ky)]; ++ry) {
            const double cy = y[ry];
            if (cy == 0.0) continue;
            const unsigned my = t.mask_of_rank[static_cast<std::size_t>(ky)][static_cast<std::size_t>(ry)];
            if (mx & my) continue;
            const int rank = t.rank_of_mask[static_cast<std::size_t>(kx + ky)][mx | my];
            out[rank] += detail::merge_sign(mx, my) * cx * cy;
        }
    }
    return out;
}

/// Interior product u -| x: contraction on the first slot, degree drops by one.
inline Form interior(const Vector7& u, const Form& x) {
    const int k = x.degree();
    if (k < 1) throw InputError("interior: form must have degree >= 1");
    const auto& t = detail::tables();
    Form out(k - 1);
    for (int r = 0; r < kBasisCount[static_cast<std::size_t>(k)]; ++r) {
        const double cx = x[r];
        if (cx == 0.0) continue;
        const auto& tup = t.tuple_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
        const unsigned mask = t.mask_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
        double sign = 1.0;
        for (int m = 0; m < k; ++m) {
            const int i = tup[static_cast<std::size_t>(m)];
            const double ui = u[i];
            if (ui != 0.0) {
                const int rank = t.rank_of_mask[static_cast<std::size_t>(k - 1)][mask & ~(1u << i)];
                out[rank] += sign * ui * cx;
            }
            sign = -sign;
        }
    }
    return out;
}

namespace detail {

/// det of the inverse-metric block picked out by two index tuples; the
/// degrees that dominate runtime get direct cofactor formulas
inline double gram_det(const MetricOps& g, const std::array<int, 7>& rows,
                       const std::array<int, 7>& cols, int k) {
    if (k == 0) return 1.0;
    if (k == 1) return g.inv(rows[0], cols[0]);
    if (k == 2)
        return g.inv(rows[0], cols[0]) * g.inv(rows[1], cols[1]) -
               g.inv(rows[0], cols[1]) * g.inv(rows[1], cols[0]);
    if (k == 3) {
        const double a = g.inv(rows[0], cols[0]), b = g.inv(rows[0], cols[1]), c = g.inv(rows[0], cols[2]);
        const double d = g.inv(rows[1], cols[0]), e = g.inv(rows[1], cols[1]), f = g.inv(rows[1], cols[2]);
        const double p = g.inv(rows[2], cols[0]), q = g.inv(rows[2], cols[1]), r = g.inv(rows[2], cols[2]);
        return a * (e * r - f * q) - b * (d * r - f * p) + c * (d * q - e * p);
    }
    double m[49];
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m[i * k + j] = g.inv(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    return small_det(m, k);
}

}  // namespace detail

/// Pointwise inner product on degree-k forms induced by g, via Gram
/// determinants of inverse-metric pairings.
inline double inner(const Form& x, const Form& y, const MetricOps& g) {
    const int k = x.degree();
    if (k != y.degree()) throw InputError("inner: forms must have equal degree");
    const auto& t = detail::tables();
    double sum = 0.0;
    for (int rx = 0; rx < kBasisCount[static_cast<std::size_t>(k)]; ++rx) {
        const double cx = x[rx];
        if (cx == 0.0) continue;
        const auto& tupx = t.tuple_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(rx)];
        for (int ry = 0; ry < kBasisCount[static_cast<std::size_t>(k)]; ++ry) {
            const double cy = y[ry];
            if (cy == 0.0) continue;
            const auto& tupy = t.tuple_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(ry)];
            sum += cx * cy * detail::gram_det(g, tupx, tupy, k);
        }
    }
    return sum;
}

inline double inner(const Form& x, const Form& y, const Metric7& g) {
    return inner(x, y, MetricOps(g));
}

/// Riemannian volume form sqrt(det g) e^{0...6} for the fixed orientation.
inline Form volume_form(const MetricOps& g) {
    Form v(kDim);
    v[0] = g.sqrt_det();
    return v;
}

/// Hodge star for the fixed orientation, defined by
///   a ^ star(x) = <a, x>_g vol(g)   for all a with deg a = deg x.
/// Solved against the full basis of equal degree: testing with a = e^J pins
/// the complementary coefficient of star(x) for every J.
inline Form hodge_star(const Form& x, const MetricOps& g) {
    const int k = x.degree();
    const auto& t = detail::tables();
    Form out(kDim - k);
    const double sd = g.sqrt_det();
    for (int rj = 0; rj < kBasisCount[static_cast<std::size_t>(k)]; ++rj) {
        const unsigned mj = t.mask_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(rj)];
        const unsigned mk = ~mj & 0x7fu;
        const auto& tupj = t.tuple_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(rj)];
        // <e^J, x>_g
        double ip = 0.0;
        for (int rx = 0; rx < kBasisCount[static_cast<std::size_t>(k)]; ++rx) {
            const double cx = x[rx];
            if (cx == 0.0) continue;
            ip += cx * detail::gram_det(g, tupj, t.tuple_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(rx)], k);
        }
        const int rank = t.rank_of_mask[static_cast<std::size_t>(kDim - k)][mk];
        out[rank] = detail::merge_sign(mj, mk) * ip * sd;
    }
    return out;
}

inline Form hodge_star(const Form& x, const Metric7& g) {
    return hodge_star(x, MetricOps(g));
}

/// Evaluate a degree-k form on k vectors.
inline double evaluate(const Form& x, std::span<const Vector7> vectors) {
    const int k = x.degree();
    if (static_cast<int>(vectors.size()) != k)
        throw InputError("evaluate: number of vectors must equal the form degree");
    if (k == 0) return x[0];
    const auto& t = detail::tables();
    double sum = 0.0;
    for (int r = 0; r < kBasisCount[static_cast<std::size_t>(k)]; ++r) {
        const double c = x[r];
        if (c == 0.0) continue;
        const auto& tup = t.tuple_of_rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
        double m[49];
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                m[i * k + j] = vectors[static_cast<std::size_t>(j)][tup[static_cast<std::size_t>(i)]];
        sum += c * detail::small_det(m, k);
    }
    return sum;
}

/// Coefficient of e^{0...6} in a degree-7 form.
inline double top_coefficient(const Form& x) {
    if (x.degree() != kDim) throw InputError("top_coefficient: form must have degree 7");
    return x[0];
}

}  // namespace g2m
