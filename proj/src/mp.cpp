#include "qde/mp.hpp"

#include <cstdio>
#include <vector>

namespace qde {

std::string MpReal::to_string(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
    return std::string(buf.data());
}

MpReal mp_abs(const MpReal& x) { MpReal r; mpfr_abs(r.raw(), x.raw(), MPFR_RNDN); return r; }

MpReal mp_sqrt(const MpReal& x) {
    if (x.sign() < 0) throw std::domain_error("MpReal: sqrt of negative value");
    MpReal r;
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

MpReal mp_log(const MpReal& x) {
    if (x.sign() <= 0) throw std::domain_error("MpReal: log of non-positive value");
    MpReal r;
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

MpReal mp_exp(const MpReal& x) { MpReal r; mpfr_exp(r.raw(), x.raw(), MPFR_RNDN); return r; }
MpReal mp_cos(const MpReal& x) { MpReal r; mpfr_cos(r.raw(), x.raw(), MPFR_RNDN); return r; }
MpReal mp_sin(const MpReal& x) { MpReal r; mpfr_sin(r.raw(), x.raw(), MPFR_RNDN); return r; }

MpReal mp_atan2(const MpReal& y, const MpReal& x) {
    MpReal r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

MpReal mp_floor(const MpReal& x) { MpReal r; mpfr_floor(r.raw(), x.raw()); return r; }

MpReal mp_pow_si(const MpReal& x, long k) {
    MpReal r;
    mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}

MpReal mp_pi() { MpReal r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }

MpReal mp_max(const MpReal& a, const MpReal& b) { return a < b ? b : a; }

MpComplex MpComplex::operator/(const MpComplex& o) const {
    MpReal n = o.re * o.re + o.im * o.im;
    if (n.is_zero()) throw std::domain_error("MpComplex: division by zero");
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
}

std::string MpComplex::to_string(int digits) const {
    return re.to_string(digits) + (im.sign() < 0 ? " - " : " + ") + mp_abs(im).to_string(digits) + "i";
}

MpReal c_abs(const MpComplex& z) {
    MpReal r;
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

MpComplex c_conj(const MpComplex& z) { return {z.re, -z.im}; }

MpComplex c_inv(const MpComplex& z) { return MpComplex(MpReal(1L)) / z; }

MpReal c_arg(const MpComplex& z) {
    if (z.is_zero()) throw std::domain_error("MpComplex: argument of zero");
    return mp_atan2(z.im, z.re);
}

MpComplex c_sqrt(const MpComplex& z) {
    if (z.is_zero()) return MpComplex();
    // Principal branch via half-angle: sqrt(r) * exp(i arg/2), arg in (-pi, pi].
    MpReal r = mp_sqrt(c_abs(z));
    MpReal half = c_arg(z) / MpReal(2L);
    return {r * mp_cos(half), r * mp_sin(half)};
}

MpComplex c_log(const MpComplex& z) {
    if (z.is_zero()) throw std::domain_error("MpComplex: log of zero");
    return {mp_log(c_abs(z)), c_arg(z)};
}

MpComplex c_exp(const MpComplex& z) {
    MpReal r = mp_exp(z.re);
    return {r * mp_cos(z.im), r * mp_sin(z.im)};
}

MpComplex c_pow_si(const MpComplex& z, long k) {
    if (k == 0) return MpComplex(MpReal(1L));
    MpComplex base = k < 0 ? c_inv(z) : z;
    unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    MpComplex r(MpReal(1L));
    while (n > 0) {
        if (n & 1) r *= base;
        if (n >>= 1) base *= base;
    }
    return r;
}

MpComplex exp_2pii(const MpReal& phase) {
    MpReal a = MpReal(2L) * mp_pi() * phase;
    return {mp_cos(a), mp_sin(a)};
}

}  // namespace qde
