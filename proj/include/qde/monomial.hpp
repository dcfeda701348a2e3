#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qde/rational.hpp"
#include "qde/vartable.hpp"

namespace qde {

/**
 * @brief Multivariate Laurent monomial with half-integer exponents.
 *
 * Exponents are stored doubled (int32), so q^(1/2) has entry 1 and q^2 has
 * entry 4. All exponents arising from the bracket calculus live on this
 * lattice; constructors taking rationals verify half-integrality.
 */
struct Monomial {
    std::vector<std::int32_t> e;  // doubled exponents, one per table slot

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}

    static Monomial one(std::size_t nvars) { return Monomial(nvars); }

    /// Single-variable monomial var^(num/2) given the doubled exponent.
    static Monomial var_pow2(std::size_t nvars, std::size_t var, std::int32_t doubled) {
        Monomial m(nvars);
        m.e[var] = doubled;
        return m;
    }

    bool is_one() const {
        for (auto x : e)
            if (x != 0) return false;
        return true;
    }

    std::int64_t grade() const {  // total doubled degree
        return std::accumulate(e.begin(), e.end(), std::int64_t(0));
    }

    Monomial operator*(const Monomial& o) const {
        check(o);
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    Monomial operator/(const Monomial& o) const {
        check(o);
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }
    Monomial inverse() const {
        Monomial r(*this);
        for (auto& x : r.e) x = -x;
        return r;
    }
    Monomial pow(long k) const {
        Monomial r(*this);
        for (auto& x : r.e) x = static_cast<std::int32_t>(x * k);
        return r;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }

    /// Graded-lex comparison: higher total degree first, then the first
    /// differing exponent decides (bigger exponent = bigger monomial).
    static int cmp(const Monomial& a, const Monomial& b) {
        std::int64_t ga = a.grade(), gb = b.grade();
        if (ga != gb) return ga < gb ? -1 : 1;
        for (std::size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
        return 0;
    }

    std::string to_string(const VarTable& vt) const {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += vt.name(i);
            if (e[i] != 2) {
                s += "^";
                if (e[i] % 2 == 0)
                    s += std::to_string(e[i] / 2);
                else
                    s += "(" + std::to_string(e[i]) + "/2)";
            }
        }
        return s.empty() ? "1" : s;
    }

  private:
    void check(const Monomial& o) const {
        if (e.size() != o.e.size()) throw std::domain_error("Monomial: mismatched tables");
    }
};

/// Descending graded-lex order, so ordered containers begin at the leading term.
struct MonoCmpDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::cmp(a, b) > 0; }
};

}  // namespace qde
