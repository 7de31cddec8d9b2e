#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gkf {

using Integer = mpz_class;
using Rational = mpq_class;

/// "num" or "num/den" in lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Accepts "a", "-a" and "a/b"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Binomial coefficient C(n, k) as an exact integer (0 when k is out of range).
Integer binomial(long n, long k);

/// Narrowing that throws std::overflow_error when the value does not fit.
std::uint64_t to_u64(const Integer& z);

}  // namespace gkf
