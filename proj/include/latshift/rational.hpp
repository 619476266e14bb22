#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "latshift/errors.hpp"

namespace latshift {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Coordinates of a vector in the lattice basis, exact rationals.
using RationalVector = std::vector<Rat>;

/// Lattice point, coordinates in the lattice basis.
using IntVector = std::vector<std::int64_t>;

inline Int rat_floor(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt_floor(const Int& n) { return boost::multiprecision::sqrt(n); }

/// Parse "p/q" or "p" (q > 0 after normalization). Throws BadParameter on junk.
inline Rat parse_rat(std::string_view s) {
  auto bad = [&] { throw BadParameter("not a rational: '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    Int num{std::string(s.substr(0, slash))};
    Int den{std::string(s.substr(slash + 1))};
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rat(0);  // unreachable
}

/// Render as "p" or "p/q"; never a float.
inline std::string format_rat(const Rat& r) {
  if (is_integral(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string format_int(const Int& n) { return n.str(); }

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline std::int64_t to_int64(const Int& n) {
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw BadParameter("integer out of 64-bit range: " + n.str());
  return static_cast<std::int64_t>(n);
}

}  // namespace latshift
