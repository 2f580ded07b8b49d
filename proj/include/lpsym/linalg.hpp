#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lpsym {

using VecD = std::vector<double>;

// Small dense row-major matrix of doubles.
class MatD {
public:
    MatD() : rows_(0), cols_(0) {}
    MatD(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(size_t(rows) * cols, fill) {}

    static MatD identity(int n) {
        MatD m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    double operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    MatD transposed() const {
        MatD t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend MatD operator*(const MatD& a, const MatD& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        MatD r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                double v = a(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += v * b(k, j);
            }
        return r;
    }

    friend MatD operator-(const MatD& a, const MatD& b) {
        MatD r(a.rows_, a.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j) - b(i, j);
        return r;
    }

    friend MatD operator+(const MatD& a, const MatD& b) {
        MatD r(a.rows_, a.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j) + b(i, j);
        return r;
    }

    MatD scaled(double c) const {
        MatD r = *this;
        for (auto& v : r.a_) v *= c;
        return r;
    }

private:
    int rows_, cols_;
    std::vector<double> a_;
};

inline VecD matvec(const MatD& m, const VecD& v) {
    if (m.cols() != int(v.size())) throw std::invalid_argument("matvec shape mismatch");
    VecD r(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline double dot(const VecD& a, const VecD& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const VecD& a) { return std::sqrt(dot(a, a)); }

inline double frobenius(const MatD& m) {
    double s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

inline double max_abs_diff(const MatD& m, const MatD& target) {
    double s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s = std::max(s, std::abs(m(i, j) - target(i, j)));
    return s;
}

inline bool is_symmetric(const MatD& m, double tol) {
    if (m.rows() != m.cols()) return false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol * std::max(1.0, std::abs(m(i, j)))) return false;
    return true;
}

// Determinant by LU with partial pivoting.
inline double det(MatD m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows();
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            d = -d;
        }
        d *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

// Gauss-Jordan inverse.
inline MatD inverse(MatD m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows();
    MatD inv = MatD::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) throw std::domain_error("singular matrix");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(k, j));
                std::swap(inv(piv, j), inv(k, j));
            }
        double f = m(k, k);
        for (int j = 0; j < n; ++j) {
            m(k, j) /= f;
            inv(k, j) /= f;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            double g = m(i, k);
            if (g == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                m(i, j) -= g * m(k, j);
                inv(i, j) -= g * inv(k, j);
            }
        }
    }
    return inv;
}

// Cofactor matrix C with M * C^T = det(M) * I; for symmetric M it satisfies
// sum_k M_{ak} C_{ki} = delta_{ai} det(M).
inline MatD cofactor_matrix(const MatD& m) {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("cofactor of non-square matrix");
    MatD c(n, n);
    if (n == 1) {
        c(0, 0) = 1.0;
        return c;
    }
    MatD minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int r = 0;
            for (int a = 0; a < n; ++a) {
                if (a == i) continue;
                int s = 0;
                for (int b = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor(r, s) = m(a, b);
                    ++s;
                }
                ++r;
            }
            c(i, j) = (((i + j) & 1) ? -1.0 : 1.0) * det(minor);
        }
    return c;
}

}  // namespace lpsym
