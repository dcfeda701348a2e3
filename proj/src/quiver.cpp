#include "qde/quiver.hpp"

#include <algorithm>
#include <functional>

namespace qde {

namespace {

/// All partitions of m (weakly decreasing rows), unconstrained order.
std::vector<Partition> partitions_of(int m) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int maxrow) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int row = std::min(rest, maxrow); row >= 1; --row) {
            cur.push_back(row);
            rec(rest - row, row);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

}  // namespace

QuiverContext::QuiverContext(int n, std::vector<int> framing_colors) : n_(n), sigma_(std::move(framing_colors)) {
    if (n_ < 1) throw std::domain_error("QuiverContext: need at least one node");
    if (sigma_.empty()) throw std::domain_error("QuiverContext: need at least one framing factor");
    for (int s : sigma_)
        if (s < 0 || s >= n_) throw std::domain_error("QuiverContext: framing color out of range");
    std::vector<std::string> names{"q", "t"};
    for (std::size_t j = 0; j < sigma_.size(); ++j) names.push_back("u" + std::to_string(j + 1));
    names.push_back("p");
    for (int i = 1; i <= n_; ++i) names.push_back("z" + std::to_string(i));
    vt_ = VarTable::make(std::move(names));
}

QuiverContext QuiverContext::hilb() { return QuiverContext(2, {0}); }

std::vector<FixedPoint> QuiverContext::fixed_points(const std::vector<int>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::domain_error("QuiverContext: dimension vector size mismatch");
    int total = 0;
    for (int x : v) {
        if (x < 0) throw std::domain_error("QuiverContext: negative dimension");
        total += x;
    }
    std::size_t k = sigma_.size();
    std::vector<FixedPoint> out;
    // Enumerate all k-tuples of partitions with total box count `total`,
    // then filter by per-color counts.
    std::vector<Partition> cur(k);
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int rest) {
        if (j + 1 == k) {
            for (auto& p : partitions_of(rest)) {
                cur[j] = std::move(p);
                FixedPoint fp{cur};
                if (dims(fp) == v) out.push_back(fp);
            }
            cur[j].clear();
            return;
        }
        for (int m = 0; m <= rest; ++m) {
            for (auto& p : partitions_of(m)) {
                cur[j] = std::move(p);
                rec(j + 1, rest - m);
            }
            cur[j].clear();
        }
    };
    rec(0, total);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ColoredBox> QuiverContext::boxes(const FixedPoint& fp) const {
    std::vector<ColoredBox> out;
    for (std::size_t j = 0; j < fp.parts.size(); ++j)
        for (std::size_t y = 0; y < fp.parts[j].size(); ++y)
            for (int x = 0; x < fp.parts[j][y]; ++x)
                out.push_back({j, x, static_cast<int>(y)});
    return out;
}

std::vector<int> QuiverContext::dims(const FixedPoint& fp) const {
    std::vector<int> v(static_cast<std::size_t>(n_), 0);
    for (const auto& b : boxes(fp)) ++v[static_cast<std::size_t>(box_color(b))];
    return v;
}

Monomial QuiverContext::chi(const ColoredBox& b) const {
    Monomial m(vt_->size());
    m.e[var_q()] = static_cast<std::int32_t>(2 * (b.x + b.y + 1));
    m.e[var_t()] = static_cast<std::int32_t>(2 * (b.x - b.y));
    m.e[var_u(b.frame)] = 2;
    return m;
}

Monomial QuiverContext::det_v(const FixedPoint& fp, int color) const {
    Monomial m = Monomial::one(vt_->size());
    for (const auto& b : boxes(fp))
        if (box_color(b) == color) m = m * chi(b);
    return m;
}

Monomial QuiverContext::line_bundle_eigenvalue(const FixedPoint& fp, const std::vector<int>& L) const {
    if (static_cast<int>(L.size()) != n_) throw std::domain_error("QuiverContext: line bundle degree size mismatch");
    Monomial m = Monomial::one(vt_->size());
    for (int c = 0; c < n_; ++c) {
        if (L[static_cast<std::size_t>(c)] == 0) continue;
        m = m * det_v(fp, c).pow(L[static_cast<std::size_t>(c)]);
    }
    return m;
}

bool QuiverContext::contains(const FixedPoint& big, const FixedPoint& small) {
    if (big.parts.size() != small.parts.size()) return false;
    for (std::size_t j = 0; j < big.parts.size(); ++j) {
        const auto& a = big.parts[j];
        const auto& b = small.parts[j];
        if (b.size() > a.size()) return false;
        for (std::size_t y = 0; y < b.size(); ++y)
            if (b[y] > a[y]) return false;
    }
    return true;
}

std::vector<ColoredBox> QuiverContext::skew(const FixedPoint& big, const FixedPoint& small) const {
    if (!contains(big, small)) throw std::domain_error("QuiverContext: skew of non-nested fixed points");
    std::vector<ColoredBox> out;
    for (std::size_t j = 0; j < big.parts.size(); ++j)
        for (std::size_t y = 0; y < big.parts[j].size(); ++y) {
            int lo = y < small.parts[j].size() ? small.parts[j][y] : 0;
            for (int x = lo; x < big.parts[j][y]; ++x) out.push_back({j, x, static_cast<int>(y)});
        }
    return out;
}

std::vector<long> QuiverContext::w_minus_cv(const std::vector<int>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::domain_error("QuiverContext: dimension vector size mismatch");
    std::vector<long> r(static_cast<std::size_t>(n_), 0);
    for (int s : sigma_) ++r[static_cast<std::size_t>(s)];
    for (int c = 0; c < n_; ++c) {
        long cv = 2L * v[static_cast<std::size_t>(c)];
        cv -= v[static_cast<std::size_t>(mod_color(c - 1))];
        cv -= v[static_cast<std::size_t>(mod_color(c + 1))];
        r[static_cast<std::size_t>(c)] -= cv;
    }
    return r;
}

std::string QuiverContext::fp_name(const FixedPoint& fp) const {
    auto one = [](const Partition& p) {
        std::string s = "(";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(p[i]);
        }
        return s + ")";
    };
    if (fp.parts.size() == 1) return one(fp.parts[0]);
    std::string s = "[";
    for (std::size_t j = 0; j < fp.parts.size(); ++j) {
        if (j) s += ",";
        s += one(fp.parts[j]);
    }
    return s + "]";
}

}  // namespace qde
