#pragma once

#include <map>
#include <string>
#include <vector>

#include "qde/mp.hpp"
#include "qde/ratfunc.hpp"

namespace qde {

/**
 * @brief Numeric evaluation of symbolic expressions.
 *
 * Each variable is assigned a complex value; the principal square root of
 * every value is taken once at construction, so all half-integer powers are
 * evaluated on one consistent branch.
 */
class NumEval {
  public:
    NumEval(VarTablePtr vt, const std::map<std::string, MpComplex>& values) : vt_(std::move(vt)) {
        sqrtv_.resize(vt_->size());
        bound_.assign(vt_->size(), false);
        for (std::size_t i = 0; i < vt_->size(); ++i) {
            auto it = values.find(vt_->name(i));
            if (it == values.end()) continue;
            sqrtv_[i] = c_sqrt(it->second);
            bound_[i] = true;
        }
        for (const auto& [name, value] : values) {
            (void)value;
            bool known = false;
            for (std::size_t i = 0; i < vt_->size(); ++i)
                if (vt_->name(i) == name) known = true;
            if (!known) throw std::domain_error("NumEval: unknown variable '" + name + "'");
        }
    }

    const VarTablePtr& table() const { return vt_; }

    /// Value of the variable itself (square of the stored root).
    MpComplex value(std::size_t var) const {
        require(var);
        return sqrtv_[var] * sqrtv_[var];
    }

    MpComplex operator()(const Monomial& m) const {
        MpComplex r(MpReal(1L));
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i] != 0) {
                require(i);
                r *= c_pow_si(sqrtv_[i], m.e[i]);
            }
        return r;
    }

    MpComplex operator()(const Laurent& p) const {
        MpComplex r;
        for (const auto& [m, c] : p.terms()) r += (*this)(m)*MpComplex(MpReal(c));
        return r;
    }

    MpComplex operator()(const RatFunc& f) const {
        if (f.is_zero()) return MpComplex();
        return (*this)(f.num()) / (*this)(f.den());
    }

  private:
    void require(std::size_t var) const {
        if (!bound_[var]) throw std::domain_error("NumEval: no value for variable '" + vt_->name(var) + "'");
    }

    VarTablePtr vt_;
    std::vector<MpComplex> sqrtv_;  // principal square roots of the values
    std::vector<bool> bound_;       // variables that were given a value
};

/**
 * @brief Exact rational evaluation. Values are supplied for the square roots
 * of the variables, so half-integer powers stay in the rational field.
 */
class ExactEval {
  public:
    ExactEval(VarTablePtr vt, const std::map<std::string, Rat>& sqrt_values) : vt_(std::move(vt)) {
        sqrtv_.resize(vt_->size());
        bound_.assign(vt_->size(), false);
        for (std::size_t i = 0; i < vt_->size(); ++i) {
            auto it = sqrt_values.find(vt_->name(i));
            if (it == sqrt_values.end()) continue;
            if (it->second == 0) throw std::domain_error("ExactEval: zero value for '" + vt_->name(i) + "'");
            sqrtv_[i] = it->second;
            bound_[i] = true;
        }
    }

    const VarTablePtr& table() const { return vt_; }

    Rat operator()(const Monomial& m) const {
        Rat r = 1;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            std::int32_t e = m.e[i];
            if (e == 0) continue;
            if (!bound_[i]) throw std::domain_error("ExactEval: no value for variable '" + vt_->name(i) + "'");
            Rat f = 1;
            long a = e < 0 ? -e : e;
            for (long k = 0; k < a; ++k) f *= sqrtv_[i];
            r *= e < 0 ? Rat(1) / f : f;
        }
        return r;
    }

    Rat operator()(const Laurent& p) const {
        Rat r = 0;
        for (const auto& [m, c] : p.terms()) r += (*this)(m)*c;
        return r;
    }

    Rat operator()(const RatFunc& f) const {
        if (f.is_zero()) return 0;
        Rat d = (*this)(f.den());
        if (d == 0) throw std::domain_error("ExactEval: denominator vanishes at the chosen point");
        return (*this)(f.num()) / d;
    }

  private:
    VarTablePtr vt_;
    std::vector<Rat> sqrtv_;  // rational values of the square roots
    std::vector<bool> bound_;  // variables that were given a value
};

}  // namespace qde
