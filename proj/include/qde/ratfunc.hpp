#pragma once

#include <map>
#include <string>

#include "qde/laurent.hpp"

namespace qde {

/**
 * @brief Exact rational function: quotient of two Laurent polynomials in
 * canonical reduced form.
 *
 * Canonical form: the denominator is a primitive polynomial (minimum
 * exponent 0 in every variable, coprime integer coefficients, positive
 * leading coefficient) coprime to the numerator; monomial units and the
 * rational content ride on the numerator. Zero is 0/1. Two rational
 * functions are equal iff their canonical parts are identical, so equality
 * is a pair of polynomial comparisons.
 */
class RatFunc {
  public:
    RatFunc() = default;  // the tableless zero, compatible with any operand
    explicit RatFunc(const Laurent& p) : num_(p) {
        if (p.table()) den_ = Laurent::one(p.table());
        normalize_den_only();
    }
    RatFunc(const Laurent& n, const Laurent& d) : num_(n), den_(d) { reduce(); }

    static RatFunc zero(const VarTablePtr& vt) { return RatFunc(Laurent::zero(vt)); }
    static RatFunc one(const VarTablePtr& vt) { return RatFunc(Laurent::one(vt)); }
    static RatFunc constant(const VarTablePtr& vt, const Rat& c) { return RatFunc(Laurent::constant(vt, c)); }
    static RatFunc var(const VarTablePtr& vt, const std::string& name) { return RatFunc(Laurent::var(vt, name)); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    const VarTablePtr& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one() || num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && is_polynomial(); }
    Rat constant_value() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const;
    RatFunc scaled(const Rat& c) const;
    RatFunc pow(long k) const;  // any sign

    bool operator==(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Substitute variables by monomials in numerator and denominator, then
    /// re-canonicalize.
    RatFunc substitute_monomials(const std::map<std::size_t, Laurent::MonoImage>& images) const;

    RatFunc on_table(const VarTablePtr& target) const;

    std::string to_string() const;

  private:
    Laurent num_;  // carries unit monomial and rational content
    Laurent den_;  // primitive, positive leading coefficient; 1 when zero/polynomial

    void reduce();
    void normalize_den_only();
};

}  // namespace qde
