#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qde/monomial.hpp"
#include "qde/rational.hpp"
#include "qde/vartable.hpp"

namespace qde {

struct LaurentUnitParts;

/**
 * @brief Exact multivariate Laurent polynomial over the rationals.
 *
 * Terms are kept in a map ordered by descending graded-lex, so iteration
 * starts at the leading term and serialization is canonical. Exponents live
 * on the half-integer (doubled) lattice; see Monomial.
 *
 * A default-constructed Laurent is the zero polynomial with no variable
 * table; it is compatible with any operand (additive identity, absorbing
 * for multiplication).
 */
class Laurent {
  public:
    using TermMap = std::map<Monomial, Rat, MonoCmpDesc>;

    Laurent() = default;
    explicit Laurent(VarTablePtr vt) : vt_(std::move(vt)) {}

    static Laurent zero(VarTablePtr vt) { return Laurent(std::move(vt)); }
    static Laurent constant(VarTablePtr vt, const Rat& c) {
        Laurent p(vt);
        if (c != 0) p.terms_[Monomial::one(vt->size())] = c;
        return p;
    }
    static Laurent one(VarTablePtr vt) { return constant(std::move(vt), 1); }
    static Laurent monomial(VarTablePtr vt, const Monomial& m, const Rat& c = 1) {
        Laurent p(vt);
        if (c != 0) p.terms_[m] = c;
        return p;
    }
    /// var^(doubled/2)
    static Laurent var_pow2(VarTablePtr vt, const std::string& name, std::int32_t doubled) {
        auto i = vt->index(name);
        return monomial(vt, Monomial::var_pow2(vt->size(), i, doubled));
    }
    static Laurent var(VarTablePtr vt, const std::string& name) { return var_pow2(std::move(vt), name, 2); }

    const VarTablePtr& table() const { return vt_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
    }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }

    /// Leading (graded-lex largest) term; polynomial must be nonzero.
    const std::pair<const Monomial, Rat>& leading() const;

    Rat constant_value() const;  // value of a constant polynomial

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    Laurent scaled(const Rat& c) const;                       // c * this
    Laurent mono_mul(const Monomial& m, const Rat& c = 1) const;  // c * m * this
    Laurent pow(long k) const;                                // k >= 0

    bool operator==(const Laurent& o) const;
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// Doubled exponent range [min,max] of one variable across all terms.
    std::pair<std::int32_t, std::int32_t> exp_range(std::size_t var) const;

    /// Degree in one variable on the doubled lattice (max exponent); zero poly -> 0.
    std::int32_t deg2(std::size_t var) const { return exp_range(var).second; }
    bool involves(std::size_t var) const;

    /**
     * Unit normalization: factor this = unit_mono * unit_coeff * primitive
     * where primitive has min-exponent 0 in every variable, integer coprime
     * coefficients, and positive leading coefficient.
     */
    using UnitParts = LaurentUnitParts;
    UnitParts unit_normalize() const;

    /// Exact division; nullopt if the divisor does not divide evenly.
    static std::optional<Laurent> exact_divide(const Laurent& a, const Laurent& b);

    /**
     * Multivariate gcd (content/primitive-part recursion with subresultant
     * PRS). The result is primitive with positive leading coefficient;
     * monomial units never appear in a gcd.
     */
    static Laurent gcd(const Laurent& a, const Laurent& b);

    /// Substitute a subset of variables by monomials (with coefficient); the
    /// result stays a Laurent polynomial. Keyed by variable index.
    struct MonoImage {
        Monomial mono;
        Rat coeff = 1;  // must be nonzero
    };
    Laurent substitute_monomials(const std::map<std::size_t, MonoImage>& images) const;

    /// Substitute one variable by a polynomial. All exponents of the variable
    /// must be even (integral powers) and nonnegative.
    Laurent substitute_poly(std::size_t var, const Laurent& image) const;

    /// Map this polynomial onto another table (all present variables must exist there).
    Laurent on_table(const VarTablePtr& target) const;

    std::string to_string() const;

  private:
    friend class RatFunc;
    VarTablePtr vt_;
    TermMap terms_;

    void add_term(const Monomial& m, const Rat& c);
    static const VarTablePtr& join(const Laurent& a, const Laurent& b);
};

struct LaurentUnitParts {
    Monomial unit_mono;
    Rat unit_coeff;
    Laurent primitive;
};

}  // namespace qde
