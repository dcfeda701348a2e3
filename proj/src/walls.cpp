#include "qde/walls.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qde {

namespace {

Rat dot(const Slope& m, const std::vector<int>& d) {
    Rat r(0);
    for (std::size_t c = 0; c < d.size(); ++c) r += m[c] * Rat(d[c]);
    return r;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// True when the set {c : pick[c]} is nonempty, proper, and consists of
/// cyclically consecutive colors.
bool cyclic_interval(const std::vector<bool>& pick) {
    std::size_t n = pick.size();
    int transitions = 0;
    bool any = false, all = true;
    for (std::size_t c = 0; c < n; ++c) {
        any = any || pick[c];
        all = all && pick[c];
        if (pick[c] != pick[(c + 1) % n]) ++transitions;
    }
    return any && !all && transitions == 2;
}

}  // namespace

WallArrangement::WallArrangement(const QuiverContext& ctx, std::vector<int> v)
    : ctx_(&ctx), v_(std::move(v)) {
    std::size_t n = static_cast<std::size_t>(ctx.n());
    if (v_.size() != n) throw std::domain_error("Walls: dimension vector size does not match the quiver rank");
    for (int vc : v_)
        if (vc < 0) throw std::domain_error("Walls: negative dimension vector entry");

    // Walk the box [0, v] in lexicographic order and keep the admissible
    // directions; sort by total degree first for a stable census order.
    std::vector<int> d(n, 0);
    while (true) {
        std::size_t c = n;
        while (c > 0) {
            --c;
            if (d[c] < v_[c]) {
                ++d[c];
                std::fill(d.begin() + static_cast<std::ptrdiff_t>(c) + 1, d.end(), 0);
                break;
            }
            if (c == 0) {
                std::stable_sort(families_.begin(), families_.end(),
                                 [](const WallFamily& a, const WallFamily& b) {
                                     int sa = std::accumulate(a.d.begin(), a.d.end(), 0);
                                     int sb = std::accumulate(b.d.begin(), b.d.end(), 0);
                                     if (sa != sb) return sa < sb;
                                     return a.d < b.d;
                                 });
                return;
            }
        }
        int mn = *std::min_element(d.begin(), d.end());
        int mx = *std::max_element(d.begin(), d.end());
        if (mx == 0) continue;
        if (mx == mn) {
            families_.push_back({d, WallKind::heisenberg});
        } else if (mx - mn == 1) {
            std::vector<bool> pick(n);
            for (std::size_t k = 0; k < n; ++k) pick[k] = (d[k] == mx);
            if (cyclic_interval(pick)) families_.push_back({d, WallKind::sl2});
        }
    }
}

PathTrace WallArrangement::trace(const Slope& s, const Slope& e) const {
    std::size_t n = v_.size();
    if (s.size() != n || e.size() != n) throw std::domain_error("Walls: slope size does not match the quiver rank");

    struct Key {
        std::vector<int> dprim;
        Rat level;

        bool operator<(const Key& o) const {
            if (dprim != o.dprim) return dprim < o.dprim;
            return level < o.level;
        }
    };
    std::map<Key, Crossing> found;

    for (const WallFamily& f : families_) {
        Rat a = dot(s, f.d), b = dot(e, f.d);
        if (is_integer(a) || is_integer(b))
            throw std::domain_error("Walls: path endpoint lies on a hyperplane");
        if (a == b) continue;  // parallel to the family and not on it
        Rat lo = std::min(a, b), hi = std::max(a, b);
        int g = 0;
        for (int dc : f.d) g = std::gcd(g, dc);
        std::vector<int> dprim(n);
        for (std::size_t c = 0; c < n; ++c) dprim[c] = f.d[c] / g;
        for (Rat l = rat_floor(lo) + 1; l < hi; l += 1) {
            Rat tau = (a - l) / (a - b);
            Key key{dprim, l / g};
            auto it = found.find(key);
            if (it == found.end()) {
                Slope point(n);
                for (std::size_t c = 0; c < n; ++c) point[c] = s[c] + tau * (e[c] - s[c]);
                found.emplace(key, Crossing{Wall{dprim, key.level, f.kind, {g}}, tau, std::move(point)});
            } else {
                it->second.wall.ks.push_back(g);
            }
        }
    }

    PathTrace out{s, e, {}};
    for (auto& [key, cr] : found) {
        std::sort(cr.wall.ks.begin(), cr.wall.ks.end());
        out.crossings.push_back(std::move(cr));
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& x, const Crossing& y) { return x.tau < y.tau; });
    for (std::size_t i = 1; i < out.crossings.size(); ++i)
        if (out.crossings[i].tau == out.crossings[i - 1].tau)
            throw std::domain_error("Walls: path meets two distinct hyperplanes at one point");
    return out;
}

PathTrace WallArrangement::trace_generic(const Slope& s, const Slope& e) const {
    std::size_t n = v_.size();
    Rat step(1, 9973);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Slope s2(n), e2(n);
        Rat h = Rat(attempt) * step;
        for (std::size_t c = 0; c < n; ++c) {
            Rat nudge = h / Rat(static_cast<long>(c) + 1);
            s2[c] = s[c] + nudge;
            e2[c] = e[c] + nudge;
        }
        try {
            return trace(s2, e2);
        } catch (const std::domain_error&) {
            if (attempt == 63) throw;
        }
    }
    throw std::domain_error("Walls: no generic nudge found");
}

Slope path_end(const Slope& s, const std::vector<int>& L) {
    if (s.size() != L.size()) throw std::domain_error("Walls: line bundle degree size does not match the slope");
    Slope e(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) e[c] = s[c] - Rat(L[c]);
    return e;
}

}  // namespace qde
