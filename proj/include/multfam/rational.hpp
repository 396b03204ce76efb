#ifndef MULTFAM_RATIONAL_HPP
#define MULTFAM_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace multfam {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds a canonical rational num/den; throws std::domain_error on den == 0.
Rational make_rational(const Integer &num, const Integer &den = 1);

/// Parses "7", "-3", "3/2" (surrounding whitespace allowed).
Rational parse_rational(std::string_view text);

Integer floor_of(const Rational &q);
Integer ceil_of(const Rational &q);

/// Ceiling of q as int64; throws std::overflow_error if it does not fit.
std::int64_t ceil_i64(const Rational &q);
std::int64_t to_i64(const Integer &z);

Integer binomial(std::int64_t n, std::int64_t k);
Integer factorial(unsigned n);
Rational pow(const Rational &q, unsigned e);

/// "num/den" or "num" when den == 1.
std::string to_string(const Rational &q);
std::string to_string(const Integer &z);

/// Decimal rendering with `digits` significant digits, round-half-even.
/// Display only; verdicts never read it.
std::string to_decimal(const Rational &q, int digits = 12);

/// Exact rational d-th root when it exists.
bool exact_root(const Rational &q, unsigned d, Rational &root);

/// Bisection bracket lo <= q^(1/d) <= hi with hi - lo <= width (q >= 0).
void root_bracket(const Rational &q, unsigned d, const Rational &width,
                  Rational &lo, Rational &hi);

} // namespace multfam

#endif
