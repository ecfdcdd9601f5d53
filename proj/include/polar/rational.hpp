#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace polar {

// Exact arithmetic for scenario weights and pruning thresholds. Binomials
// like C(2048, 8) exceed what doubles can hold exactly, and the threshold
// comparisons must be bit-exact, so everything combinatorial stays rational
// until the decoder boundary.
using Rational = mpq_class;
using Integer = mpz_class;

inline Integer binom(unsigned long n, unsigned long k) {
    if (k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Every finite double is a dyadic rational; this conversion is exact.
inline Rational rational_of(double x) {
    return Rational(x);
}

inline double to_double(const Rational& q) {
    return q.get_d();
}

inline std::string numerator_str(const Rational& q) {
    return q.get_num().get_str();
}

inline std::string denominator_str(const Rational& q) {
    return q.get_den().get_str();
}

}  // namespace polar
