#pragma once

#include <mpfr.h>

#include <string>

#include "qde/rational.hpp"

namespace qde {

/// Working precision in bits for all floating-point computation.
constexpr mpfr_prec_t kMpPrec = 256;

/**
 * @brief Fixed-precision (256-bit) real number backed by MPFR.
 *
 * Value semantics with the usual arithmetic operators; rounding is always
 * to nearest. Conversions from rationals are exact up to the working
 * precision.
 */
class MpReal {
  public:
    MpReal() { mpfr_init2(v_, kMpPrec); mpfr_set_zero(v_, 1); }
    MpReal(long x) : MpReal() { mpfr_set_si(v_, x, MPFR_RNDN); }
    MpReal(int x) : MpReal(static_cast<long>(x)) {}
    MpReal(double x) : MpReal() { mpfr_set_d(v_, x, MPFR_RNDN); }
    explicit MpReal(const Rat& x) : MpReal() { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    explicit MpReal(const std::string& s) : MpReal() {
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::domain_error("MpReal: bad literal '" + s + "'");
    }

    MpReal(const MpReal& o) : MpReal() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpReal(MpReal&& o) noexcept { mpfr_init2(v_, kMpPrec); mpfr_swap(v_, o.v_); }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    MpReal operator-() const { MpReal r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    MpReal operator+(const MpReal& o) const { MpReal r; mpfr_add(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    MpReal operator-(const MpReal& o) const { MpReal r; mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    MpReal operator*(const MpReal& o) const { MpReal r; mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    MpReal operator/(const MpReal& o) const { MpReal r; mpfr_div(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    MpReal& operator+=(const MpReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator-=(const MpReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator*=(const MpReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator/=(const MpReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    bool operator==(const MpReal& o) const { return mpfr_equal_p(v_, o.v_) != 0; }
    bool operator!=(const MpReal& o) const { return !(*this == o); }
    bool operator<(const MpReal& o) const { return mpfr_less_p(v_, o.v_) != 0; }
    bool operator<=(const MpReal& o) const { return mpfr_lessequal_p(v_, o.v_) != 0; }
    bool operator>(const MpReal& o) const { return mpfr_greater_p(v_, o.v_) != 0; }
    bool operator>=(const MpReal& o) const { return mpfr_greaterequal_p(v_, o.v_) != 0; }

    std::string to_string(int digits = 30) const;

  private:
    mpfr_t v_;
};

MpReal mp_abs(const MpReal& x);
MpReal mp_sqrt(const MpReal& x);  // x >= 0
MpReal mp_log(const MpReal& x);   // x > 0
MpReal mp_exp(const MpReal& x);
MpReal mp_cos(const MpReal& x);
MpReal mp_sin(const MpReal& x);
MpReal mp_atan2(const MpReal& y, const MpReal& x);
MpReal mp_floor(const MpReal& x);
MpReal mp_pow_si(const MpReal& x, long k);
MpReal mp_pi();
MpReal mp_max(const MpReal& a, const MpReal& b);

/**
 * @brief Complex number at the engine's working precision.
 *
 * Principal branches throughout: c_sqrt and c_log cut along the negative
 * real axis, with the argument taken in (-pi, pi].
 */
struct MpComplex {
    MpReal re, im;

    MpComplex() = default;
    MpComplex(MpReal r) : re(std::move(r)) {}
    MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
    MpComplex(long r) : re(r) {}
    MpComplex(int r) : re(static_cast<long>(r)) {}
    MpComplex(double r) : re(r) {}
    explicit MpComplex(const Rat& r) : re(r) {}

    static MpComplex i() { return MpComplex(MpReal(0L), MpReal(1L)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    MpComplex operator-() const { return {-re, -im}; }
    MpComplex operator+(const MpComplex& o) const { return {re + o.re, im + o.im}; }
    MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
    MpComplex operator*(const MpComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    MpComplex operator/(const MpComplex& o) const;
    MpComplex& operator+=(const MpComplex& o) { re += o.re; im += o.im; return *this; }
    MpComplex& operator-=(const MpComplex& o) { re -= o.re; im -= o.im; return *this; }
    MpComplex& operator*=(const MpComplex& o) { return *this = *this * o; }
    MpComplex& operator/=(const MpComplex& o) { return *this = *this / o; }

    bool operator==(const MpComplex& o) const { return re == o.re && im == o.im; }
    bool operator!=(const MpComplex& o) const { return !(*this == o); }

    std::string to_string(int digits = 30) const;
};

MpReal c_abs(const MpComplex& z);
MpComplex c_conj(const MpComplex& z);
MpComplex c_inv(const MpComplex& z);
MpComplex c_sqrt(const MpComplex& z);  // principal branch
MpComplex c_log(const MpComplex& z);   // principal branch
MpComplex c_exp(const MpComplex& z);
MpComplex c_pow_si(const MpComplex& z, long k);
MpReal c_arg(const MpComplex& z);  // in (-pi, pi]

/// exp(2 pi i phase): the point on the unit circle at the given phase in turns.
MpComplex exp_2pii(const MpReal& phase);

}  // namespace qde
