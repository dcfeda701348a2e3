#include "qde/ratfunc.hpp"

namespace qde {

void RatFunc::normalize_den_only() {
    if (num_.is_zero()) {
        den_ = num_.table() ? Laurent::one(num_.table()) : Laurent();
        return;
    }
    if (!den_.table() && num_.table()) den_ = Laurent::one(num_.table());
}

void RatFunc::reduce() {
    if (den_.is_zero() && den_.table()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
        normalize_den_only();
        return;
    }
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    auto ud = den_.unit_normalize();
    den_ = ud.primitive;
    if (!ud.unit_mono.is_one() || ud.unit_coeff != 1)
        num_ = num_.mono_mul(ud.unit_mono.inverse(), Rat(1) / ud.unit_coeff);
    if (den_.is_one()) return;
    if (num_.is_monomial()) return;  // monomial numerator is coprime to a primitive denominator
    Laurent g = Laurent::gcd(num_, den_);
    if (!g.is_one()) {
        auto qn = Laurent::exact_divide(num_, g);
        auto qd = Laurent::exact_divide(den_, g);
        if (!qn || !qd) throw std::domain_error("RatFunc: gcd does not divide");
        num_ = *qn;
        den_ = *qd;
        // Gauss: quotient of primitives by a primitive stays primitive with
        // positive leading coefficient, so no second normalization pass.
    }
}

Rat RatFunc::constant_value() const {
    if (!is_constant()) throw std::domain_error("RatFunc: not a constant");
    return num_.constant_value();
}

RatFunc RatFunc::operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    RatFunc r;
    if (den_ == o.den_) {
        r.num_ = num_ + o.num_;
        r.den_ = den_.table() ? den_ : o.den_;
    } else {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
    }
    r.reduce();
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) {
        VarTablePtr vt = table() ? table() : o.table();
        return vt ? zero(vt) : RatFunc();
    }
    // Cross-reduce first: gcd(this->num, o.den) and gcd(o.num, this->den)
    // are divided out, after which all four parts are pairwise coprime and
    // the product is already canonical (products of primitives stay
    // primitive), so no further reduction pass is needed.
    RatFunc a(num_, o.den_);
    RatFunc b(o.num_, den_);
    RatFunc r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    RatFunc r;
    auto un = num_.unit_normalize();
    r.num_ = den_.mono_mul(un.unit_mono.inverse(), Rat(1) / un.unit_coeff);
    r.den_ = un.primitive;
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::scaled(const Rat& c) const {
    if (c == 0) return table() ? zero(table()) : RatFunc();
    RatFunc r(*this);
    r.num_ = r.num_.scaled(c);
    return r;
}

RatFunc RatFunc::pow(long k) const {
    if (k == 0) {
        if (!table()) throw std::domain_error("RatFunc: power of tableless zero");
        return one(table());
    }
    RatFunc base = k < 0 ? inverse() : *this;
    unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    RatFunc r = one(base.table());
    while (n > 0) {
        if (n & 1) r *= base;
        if (n >>= 1) base *= base;
    }
    return r;
}

RatFunc RatFunc::substitute_monomials(const std::map<std::size_t, Laurent::MonoImage>& images) const {
    RatFunc r;
    r.num_ = num_.substitute_monomials(images);
    r.den_ = den_.substitute_monomials(images);
    r.reduce();
    return r;
}

RatFunc RatFunc::on_table(const VarTablePtr& target) const {
    RatFunc r;
    r.num_ = num_.on_table(target);
    r.den_ = den_.on_table(target);
    r.normalize_den_only();
    return r;
}

std::string RatFunc::to_string() const {
    if (is_polynomial()) return num_.to_string();
    std::string n = num_.to_string();
    std::string d = den_.to_string();
    if (num_.term_count() > 1) n = "(" + n + ")";
    if (den_.term_count() > 1) d = "(" + d + ")";
    return n + " / " + d;
}

}  // namespace qde
