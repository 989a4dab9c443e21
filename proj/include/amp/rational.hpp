#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "amp/error.hpp"

namespace amp {

// Exact scalars are GMP rationals.  mpq_class keeps values canonical (lowest
// terms, positive denominator) through arithmetic; parsing below enforces the
// accepted text form "p" or "p/q" with an optional sign on the numerator only.
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  require(den != 0, "ZeroDenominator", "denominator must be nonzero");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& num, const Int& den) {
  require(den != 0, "ZeroDenominator", "denominator must be nonzero");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace detail {
inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}
}  // namespace detail

// Accepts "p", "-p", "p/q", "-p/q" with decimal digits; q > 0 implicit in the
// grammar (no sign allowed after '/').  Anything else is a ParseError.
inline Rat rat_from_string(const std::string& text) {
  std::string s = text;
  require(!s.empty(), "ParseError", "empty rational literal");
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    s.erase(s.begin());
  }
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  require(detail::all_digits(num) && detail::all_digits(den), "ParseError",
          "bad rational literal '" + text + "' (want p, -p, p/q or -p/q)");
  Int num_z(num), den_z(den);
  Rat r(num_z, den_z);
  require(r.get_den() != 0, "ParseError", "zero denominator in '" + text + "'");
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

// Serialized form: "p" for integers, "p/q" otherwise, sign on the numerator.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Common denominator of a rational vector (lcm of denominators), >= 1.
inline Int common_denominator(const RatVec& v) {
  Int l = 1;
  for (const Rat& r : v) {
    Int d = r.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

inline RatVec rat_vec(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(rat(x));
  return v;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  require(a.size() == b.size(), "DimMismatch", "dot: length mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace amp
