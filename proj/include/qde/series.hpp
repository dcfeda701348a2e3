#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "qde/matrix.hpp"

namespace qde {

/// Exponent vector of the Kaehler variables, indexed by color.
using ZKey = std::vector<int>;

inline int zkey_degree(const ZKey& k) { return std::accumulate(k.begin(), k.end(), 0); }
inline ZKey zkey_zero(std::size_t n) { return ZKey(n, 0); }
inline ZKey zkey_add(const ZKey& a, const ZKey& b) {
    ZKey r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline ZKey zkey_scaled(const ZKey& a, int s) {
    ZKey r = a;
    for (auto& x : r) x *= s;
    return r;
}

/**
 * @brief Truncated power series in the Kaehler variables with scalar
 * coefficients.
 *
 * `dir` is +1 for expansions around z = 0 (keys of nonnegative total degree)
 * and -1 around z = infinity (nonpositive). Terms beyond `order` in absolute
 * total degree are dropped on every operation, so products are safe to chain.
 */
template <class T>
class ZSeries {
  public:
    ZSeries() = default;
    ZSeries(std::size_t nz, int order, int dir = 1) : nz_(nz), order_(order), dir_(dir) {}

    std::size_t nz() const { return nz_; }
    int order() const { return order_; }
    int dir() const { return dir_; }
    const std::map<ZKey, T>& terms() const { return terms_; }

    bool in_window(const ZKey& k) const {
        int d = dir_ * zkey_degree(k);
        return d >= 0 && d <= order_;
    }

    void add(const ZKey& k, const T& c) {
        if (c.is_zero() || !in_window(k)) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    T coeff(const ZKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? T() : it->second;
    }

    bool is_zero() const { return terms_.empty(); }

    ZSeries operator+(const ZSeries& o) const {
        ZSeries r(*this);
        for (const auto& [k, c] : o.terms_) r.add(k, c);
        return r;
    }
    ZSeries operator-(const ZSeries& o) const {
        ZSeries r(*this);
        for (const auto& [k, c] : o.terms_) r.add(k, -c);
        return r;
    }
    ZSeries operator*(const ZSeries& o) const {
        ZSeries r(nz_, order_, dir_);
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) r.add(zkey_add(ka, kb), ca * cb);
        return r;
    }
    ZSeries scaled(const T& s) const {
        ZSeries r(nz_, order_, dir_);
        for (const auto& [k, c] : terms_) r.add(k, c * s);
        return r;
    }

    /// Geometric-series inverse; the constant term must be invertible.
    ZSeries inverse() const {
        T c0 = coeff(zkey_zero(nz_));
        if (c0.is_zero()) throw std::domain_error("ZSeries: constant term not invertible");
        T c0i = elem_inverse(c0);
        ZSeries n(nz_, order_, dir_);  // n = 1 - c0^-1 * this (no constant term)
        for (const auto& [k, c] : terms_) {
            if (zkey_degree(k) == 0) continue;
            n.add(k, -(c0i * c));
        }
        ZSeries r(nz_, order_, dir_);
        r.add(zkey_zero(nz_), c0i);
        ZSeries acc(nz_, order_, dir_);
        acc.add(zkey_zero(nz_), c0i);
        for (int d = 0; d < order_; ++d) {
            acc = n * acc;
            if (acc.is_zero()) break;
            r = r + acc;
        }
        return r;
    }

    bool operator==(const ZSeries& o) const { return terms_ == o.terms_; }

  private:
    std::size_t nz_ = 0;
    int order_ = 0;
    int dir_ = 1;
    std::map<ZKey, T> terms_;
};

/**
 * @brief Truncated matrix-valued series in the Kaehler variables.
 *
 * Same windowing rules as ZSeries. Coefficients are dense square matrices.
 */
template <class T>
class MatSeries {
  public:
    MatSeries() = default;
    MatSeries(std::size_t nz, std::size_t dim, int order, int dir = 1)
        : nz_(nz), dim_(dim), order_(order), dir_(dir) {}

    static MatSeries identity(std::size_t nz, std::size_t dim, int order, const T& one, int dir = 1) {
        MatSeries s(nz, dim, order, dir);
        s.add(zkey_zero(nz), Mat<T>::identity(dim, one));
        return s;
    }

    std::size_t nz() const { return nz_; }
    std::size_t dim() const { return dim_; }
    int order() const { return order_; }
    int dir() const { return dir_; }
    const std::map<ZKey, Mat<T>>& terms() const { return terms_; }

    bool in_window(const ZKey& k) const {
        int d = dir_ * zkey_degree(k);
        return d >= 0 && d <= order_;
    }

    void add(const ZKey& k, const Mat<T>& m) {
        if (m.is_zero() || !in_window(k)) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, m);
        } else {
            it->second += m;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Mat<T> coeff(const ZKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Mat<T>(dim_, dim_) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }

    MatSeries operator+(const MatSeries& o) const {
        MatSeries r(*this);
        for (const auto& [k, m] : o.terms_) r.add(k, m);
        return r;
    }
    MatSeries operator-(const MatSeries& o) const {
        MatSeries r(*this);
        for (const auto& [k, m] : o.terms_) r.add(k, -m);
        return r;
    }
    MatSeries operator*(const MatSeries& o) const {
        MatSeries r(nz_, dim_, order_, dir_);
        for (const auto& [ka, ma] : terms_)
            for (const auto& [kb, mb] : o.terms_) {
                ZKey k = zkey_add(ka, kb);
                if (r.in_window(k)) r.add(k, ma * mb);
            }
        return r;
    }
    MatSeries operator*(const ZSeries<T>& s) const {
        MatSeries r(nz_, dim_, order_, dir_);
        for (const auto& [ka, ma] : terms_)
            for (const auto& [kb, cb] : s.terms()) {
                ZKey k = zkey_add(ka, kb);
                if (r.in_window(k)) r.add(k, ma.scaled(cb));
            }
        return r;
    }
    MatSeries scaled(const T& s) const {
        MatSeries r(nz_, dim_, order_, dir_);
        for (const auto& [k, m] : terms_) r.add(k, m.scaled(s));
        return r;
    }

    /// Multiply the coefficient of each key by f(total degree of key); this is
    /// how the shift z -> p^s z acts (f(d) = p^(s d)).
    template <class F>
    MatSeries scale_by_degree(F f) const {
        MatSeries r(nz_, dim_, order_, dir_);
        for (const auto& [k, m] : terms_) r.add(k, m.scaled(f(zkey_degree(k))));
        return r;
    }

    /**
     * Multiplicative inverse order by order. The degree-0 coefficient must be
     * invertible; `one` is the scalar identity prototype.
     */
    MatSeries inverse(const T& one) const {
        Mat<T> a0 = coeff(zkey_zero(nz_));
        auto a0i = a0.inverse(one);
        if (!a0i) throw std::domain_error("MatSeries: constant term not invertible");
        // Solve B * this = 1 by increasing |total degree| of the key:
        // B_k = -(sum_{0 < m <= k} B_{k-m} A_m) A_0^{-1}, B_0 = A_0^{-1}.
        MatSeries b(nz_, dim_, order_, dir_);
        b.add(zkey_zero(nz_), *a0i);
        // Group our keys by |degree| for the convolution.
        std::map<int, std::vector<const std::pair<const ZKey, Mat<T>>*>> by_deg;
        for (const auto& kv : terms_) {
            int d = dir_ * zkey_degree(kv.first);
            if (d > 0) by_deg[d].push_back(&kv);
        }
        for (int d = 1; d <= order_; ++d) {
            // Collect contributions at |degree| d.
            std::map<ZKey, Mat<T>> contrib;
            for (const auto& [da, lst] : by_deg) {
                if (da > d) break;
                for (const auto* kv : lst) {
                    for (const auto& [kb, mb] : b.terms_) {
                        if (dir_ * zkey_degree(kb) != d - da) continue;
                        ZKey k = zkey_add(kb, kv->first);
                        auto it = contrib.find(k);
                        if (it == contrib.end())
                            contrib.emplace(k, mb * kv->second);
                        else
                            it->second += mb * kv->second;
                    }
                }
            }
            for (const auto& [k, m] : contrib) b.add(k, -(m * *a0i));
        }
        return b;
    }

    /// Evaluate at concrete values of the Kaehler variables.
    Mat<T> eval_z(const std::vector<T>& z) const {
        Mat<T> r(dim_, dim_);
        for (const auto& [k, m] : terms_) {
            T f;
            bool started = false;
            for (std::size_t c = 0; c < nz_; ++c) {
                if (k[c] == 0) continue;
                T p = pow_elem(z[c], k[c]);
                f = started ? f * p : p;
                started = true;
            }
            r += started ? m.scaled(f) : m;
        }
        return r;
    }

    bool operator==(const MatSeries& o) const { return terms_ == o.terms_; }

  private:
    std::size_t nz_ = 0, dim_ = 0;
    int order_ = 0;
    int dir_ = 1;
    std::map<ZKey, Mat<T>> terms_;

    static T pow_elem(const T& x, int k);
};

template <>
inline MpComplex MatSeries<MpComplex>::pow_elem(const MpComplex& x, int k) {
    return c_pow_si(x, k);
}
template <>
inline RatFunc MatSeries<RatFunc>::pow_elem(const RatFunc& x, int k) {
    return x.pow(k);
}

/// Convert coefficients with a per-entry function (e.g. exact -> numeric).
template <class U, class T, class F>
MatSeries<U> convert_series(const MatSeries<T>& s, F f) {
    MatSeries<U> r(s.nz(), s.dim(), s.order(), s.dir());
    for (const auto& [k, m] : s.terms()) {
        Mat<U> mm(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) mm(i, j) = f(m(i, j));
        r.add(k, mm);
    }
    return r;
}

}  // namespace qde
