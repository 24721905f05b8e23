#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "shufflecap/errors.hpp"

namespace shufflecap {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Canonical text form: "p" or "p/q" with q > 1, sign on the numerator.
inline std::string rat_str(const Rational& q) { return q.str(); }

// Accepts "p" or "p/q" with an optional leading sign. Canonicalizes: the GMP
// string constructor would keep "3/6" unreduced, so we go through a division.
Rational parse_rational(const std::string& s);

} // namespace shufflecap
