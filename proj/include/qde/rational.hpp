#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qde {

/// Exact rational scalar used throughout the symbolic layer.
using Rat = mpq_class;

/// Parse "a/b" or "a" into a canonical rational.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::domain_error("rational: empty literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::domain_error("rational: bad literal '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

/// Floor of a rational as an exact integer-valued rational.
inline Rat rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rat(q);
}

/// Integer value of a rational known to be integral.
inline long rat_to_long(const Rat& r) {
    if (r.get_den() != 1) throw std::domain_error("rational: not an integer: " + r.get_str());
    if (!r.get_num().fits_slong_p()) throw std::domain_error("rational: integer overflow");
    return r.get_num().get_si();
}

/// True when 2*r is an integer (the exponent lattice of the engine).
inline bool rat_is_half_integral(const Rat& r) {
    Rat d = 2 * r;
    return d.get_den() == 1;
}

}  // namespace qde
