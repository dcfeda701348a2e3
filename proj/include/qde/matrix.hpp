#pragma once

#include <optional>
#include <vector>

#include "qde/mp.hpp"
#include "qde/ratfunc.hpp"

namespace qde {

/// Pivot quality for Gauss-Jordan elimination: smaller is better, zero
/// elements are unusable. Exact elements prefer structurally small pivots;
/// numeric elements prefer large magnitude (classic partial pivoting).
inline double pivot_weight(const RatFunc& x) {
    if (x.is_zero()) return 1e300;
    return static_cast<double>(x.num().term_count() + x.den().term_count());
}
inline double pivot_weight(const MpComplex& z) {
    if (z.is_zero()) return 1e300;
    return -c_abs(z).to_double();
}

inline RatFunc elem_inverse(const RatFunc& x) { return x.inverse(); }
inline MpComplex elem_inverse(const MpComplex& z) { return c_inv(z); }

/**
 * @brief Dense matrix over an exact or numeric coefficient type.
 *
 * T needs value semantics, ring operators, a member is_zero(), and the two
 * free functions pivot_weight / elem_inverse for inversion. A default
 * constructed T must be the additive zero.
 */
template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}

    static Mat identity(std::size_t n, const T& one) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : d_)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat operator-() const {
        Mat m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = -d_[k];
        return m;
    }
    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] + o.d_[k];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] - o.d_[k];
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw std::domain_error("Mat: dimension mismatch in product");
        Mat m(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const T& a = (*this)(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.c_; ++j) {
                    const T& b = o(k, j);
                    if (b.is_zero()) continue;
                    m(i, j) += a * b;
                }
            }
        return m;
    }
    Mat& operator+=(const Mat& o) { return *this = *this + o; }
    Mat& operator-=(const Mat& o) { return *this = *this - o; }

    Mat scaled(const T& s) const {
        Mat m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] * s;
        return m;
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// Gauss-Jordan inverse; nullopt when singular. `one` is the multiplicative
    /// identity prototype (exact types carry a variable table in it).
    std::optional<Mat> inverse(const T& one) const {
        if (r_ != c_) throw std::domain_error("Mat: inverse of non-square matrix");
        std::size_t n = r_;
        Mat a(*this);
        Mat inv = identity(n, one);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t best = n;
            double bw = 1e300;
            for (std::size_t row = col; row < n; ++row) {
                double w = pivot_weight(a(row, col));
                if (w < bw) {
                    bw = w;
                    best = row;
                }
            }
            if (best == n || a(best, col).is_zero()) return std::nullopt;
            if (best != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(col, j), a(best, j));
                    std::swap(inv(col, j), inv(best, j));
                }
            }
            T pinv = elem_inverse(a(col, col));
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) = a(col, j) * pinv;
                inv(col, j) = inv(col, j) * pinv;
            }
            for (std::size_t row = 0; row < n; ++row) {
                if (row == col || a(row, col).is_zero()) continue;
                T f = a(row, col);
                for (std::size_t j = 0; j < n; ++j) {
                    a(row, j) = a(row, j) - f * a(col, j);
                    inv(row, j) = inv(row, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

  private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> d_;

    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::domain_error("Mat: dimension mismatch");
    }
};

/// Largest entry magnitude of a numeric matrix.
inline MpReal mat_max_abs(const Mat<MpComplex>& m) {
    MpReal best(0L);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) best = mp_max(best, c_abs(m(i, j)));
    return best;
}

}  // namespace qde
