#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <stdexcept>
#include <string>

namespace walras {

// Exact rational scalar used everywhere. No floating point in any
// equilibrium, preference, or axiom computation.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num, den);
}

// Canonical "p/q" form, q > 0, gcd(p,q)=1. Integers still print as "p/1"
// so that files round-trip byte for byte.
inline std::string to_frac(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" and bare integers "p".
inline Rat parse_frac(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

}  // namespace walras
