// Exact rational arithmetic used everywhere in the library.
//
// All lengths, masses, flows and costs are GMP rationals; decimal or
// fractional text input is converted exactly at the I/O boundary and
// printed back in lowest terms.
#pragma once

#include <gmpxx.h>

#include <string>

namespace tcnorm {

using Rat = mpq_class;
using Int = mpz_class;

// Parses "p", "-p", "p/q" or a decimal like "1.25" into an exact rational.
// Throws Error{ParseError} on malformed input or zero denominator.
Rat rat_from_string(const std::string& text);

// Lowest-terms rendering: "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);

inline Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

inline int rat_sign(const Rat& value) { return sgn(value); }

// The two-argument mpq_class constructor does not reduce to lowest terms,
// and GMP comparisons assume canonical operands. Build fractions through
// this instead.
inline Rat make_rat(long num, long den) {
  Rat value(num, den);
  value.canonicalize();
  return value;
}

}  // namespace tcnorm
