#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include "helly/errors.hpp"

namespace helly {

using Vec = std::vector<double>;

// Dense row-major matrix, sized for desk-scale geometry (d <= ~8).
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    const std::vector<double>& data() const { return data_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec operator*(double s, Vec a) {
    for (auto& x : a) x *= s;
    return a;
}

inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& a) {
    const double n = norm(a);
    if (n <= 0.0) throw numeric_error("cannot normalize zero vector");
    return (1.0 / n) * a;
}

// y = M x
inline Vec matvec(const Mat& m, const Vec& x) {
    Vec y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// y = M^T x
inline Vec matvec_t(const Mat& m, const Vec& x) {
    Vec y(m.cols(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * x[i];
        y[j] = s;
    }
    return y;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// Solves A x = b by Gaussian elimination with partial pivoting. A is copied.
// Throws numeric_error on (near-)singular systems.
inline Vec solve_dense(Mat a, Vec b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw input_error("solve_dense: shape mismatch");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::fabs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a(r, col)) > best) {
                best = std::fabs(a(r, col));
                piv = r;
            }
        }
        if (best < 1e-300) throw numeric_error("solve_dense: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

// Orthonormalizes the columns of m in place (modified Gram-Schmidt with
// re-orthogonalization). Throws numeric_error if the columns are rank
// deficient.
inline Mat orthonormalized(Mat m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Vec v = m.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                const Vec q = m.col(p);
                const double c = dot(q, v);
                for (std::size_t i = 0; i < m.rows(); ++i) v[i] -= c * q[i];
            }
        }
        const double n = norm(v);
        if (n < 1e-12) throw numeric_error("orthonormalized: rank-deficient columns");
        for (auto& x : v) x /= n;
        m.set_col(j, v);
    }
    return m;
}

// Deterministic orthonormal completion: returns a d x (d-k) matrix whose
// columns complete the columns of basis (d x k, orthonormal) to an
// orthonormal basis of R^d.
inline Mat orthonormal_complement(const Mat& basis) {
    const std::size_t d = basis.rows();
    const std::size_t k = basis.cols();
    Mat out(d, d - k);
    std::size_t found = 0;
    std::vector<Vec> cols;
    cols.reserve(d);
    for (std::size_t j = 0; j < k; ++j) cols.push_back(basis.col(j));
    for (std::size_t e = 0; e < d && found < d - k; ++e) {
        Vec v(d, 0.0);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& q : cols) {
                const double c = dot(q, v);
                for (std::size_t i = 0; i < d; ++i) v[i] -= c * q[i];
            }
        const double n = norm(v);
        if (n < 1e-8) continue;
        for (auto& x : v) x /= n;
        cols.push_back(v);
        out.set_col(found++, v);
    }
    if (found != d - k) throw numeric_error("orthonormal_complement: completion failed");
    return out;
}

// Max-norm deviation of basis^T basis from the identity.
inline double orthonormality_defect(const Mat& basis) {
    double worst = 0.0;
    for (std::size_t a = 0; a < basis.cols(); ++a)
        for (std::size_t b = 0; b < basis.cols(); ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < basis.rows(); ++i) s += basis(i, a) * basis(i, b);
            worst = std::max(worst, std::fabs(s - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

// Eigenvectors of a small symmetric matrix by cyclic Jacobi rotations,
// returned as columns sorted by descending eigenvalue.
inline void symmetric_eigen(Mat a, Vec& values, Mat& vectors) {
    const std::size_t n = a.rows();
    vectors = Mat::identity(n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = vectors(i, p), viq = vectors(i, q);
                    vectors(i, p) = c * vip - s * viq;
                    vectors(i, q) = s * vip + c * viq;
                }
            }
    }
    values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    // selection sort by descending eigenvalue, swapping vector columns along
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (values[j] > values[best]) best = j;
        if (best != i) {
            std::swap(values[i], values[best]);
            for (std::size_t r = 0; r < n; ++r) std::swap(vectors(r, i), vectors(r, best));
        }
    }
}

}  // namespace helly
