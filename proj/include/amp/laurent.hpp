#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "amp/error.hpp"
#include "amp/rational.hpp"

namespace amp {

using Expo = std::vector<long>;  // integer exponent vector, length = dim
using Cplx = std::complex<double>;

inline Cplx ipow(Cplx x, long e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  Cplx r = 1.0;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// Laurent polynomial with exact rational coefficients.  The term map is
// ordered lexicographically by exponent vector (std::map over vectors), which
// doubles as the canonical column order wherever supports become matrices.
struct LaurentPoly {
  int dim = 0;
  std::map<Expo, Rat> terms;

  LaurentPoly() = default;
  explicit LaurentPoly(int n) : dim(n) {}

  void add_term(const Expo& e, const Rat& c) {
    require(static_cast<int>(e.size()) == dim, "DimMismatch",
            "exponent length does not match polynomial dimension");
    require(c.get_den() != 0, "ZeroDenominator", "coefficient with zero denominator");
    // Re-reduce defensively: a caller may have built the coefficient with the
    // raw mpq_class(num, den) constructor, which skips canonicalization, and
    // GMP comparison semantics assume canonical operands.
    Rat cc = c;
    cc.canonicalize();
    if (cc == 0) return;
    auto [it, fresh] = terms.emplace(e, cc);
    if (!fresh) {
      it->second += cc;
      if (it->second == 0) terms.erase(it);
    }
  }

  bool empty() const { return terms.empty(); }
  size_t size() const { return terms.size(); }

  bool all_coeffs_positive() const {
    for (const auto& [e, c] : terms)
      if (c <= 0) return false;
    return true;
  }

  Cplx eval(const std::vector<Cplx>& x) const {
    require(static_cast<int>(x.size()) == dim, "DimMismatch", "eval point dimension");
    Cplx s = 0.0;
    for (const auto& [e, c] : terms) {
      Cplx t = to_double(c);
      for (int i = 0; i < dim; ++i) t *= ipow(x[i], e[i]);
      s += t;
    }
    return s;
  }

  double eval_real(const std::vector<double>& x) const {
    require(static_cast<int>(x.size()) == dim, "DimMismatch", "eval point dimension");
    double s = 0.0;
    for (const auto& [e, c] : terms) {
      double t = to_double(c);
      for (int i = 0; i < dim; ++i) {
        double b = x[i];
        long k = e[i];
        if (k < 0) {
          b = 1.0 / b;
          k = -k;
        }
        for (long p = 0; p < k; ++p) t *= b;
      }
      s += t;
    }
    return s;
  }

  // theta_i = x_i d/dx_i: multiplies each coefficient by its i-th exponent.
  LaurentPoly theta(int i) const {
    require(i >= 0 && i < dim, "DimMismatch", "theta index out of range");
    LaurentPoly r(dim);
    for (const auto& [e, c] : terms) r.add_term(e, c * Rat(e[i]));
    return r;
  }

  LaurentPoly operator*(const LaurentPoly& o) const {
    require(dim == o.dim, "DimMismatch", "product of polynomials in different dimensions");
    LaurentPoly r(dim);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        Expo e(dim);
        for (int i = 0; i < dim; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    require(dim == o.dim, "DimMismatch", "sum of polynomials in different dimensions");
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& o) const {
    require(dim == o.dim, "DimMismatch", "difference of polynomials in different dimensions");
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
  }

  LaurentPoly scaled(const Rat& f) const {
    LaurentPoly r(dim);
    for (const auto& [e, c] : terms) r.add_term(e, c * f);
    return r;
  }

  std::vector<Expo> support() const {
    std::vector<Expo> s;
    s.reserve(terms.size());
    for (const auto& [e, c] : terms) s.push_back(e);
    return s;
  }
};

inline LaurentPoly monomial(int dim, const Expo& e, const Rat& c = Rat(1)) {
  LaurentPoly p(dim);
  p.add_term(e, c);
  return p;
}

inline LaurentPoly constant_poly(int dim, const Rat& c) {
  return monomial(dim, Expo(dim, 0), c);
}

// Numerator/denominator pair, the shape in which cohomology-class
// representatives (ratios against the canonical form) are supplied.
struct RationalFn {
  LaurentPoly num, den;

  static RationalFn poly(const LaurentPoly& p) {
    return {p, constant_poly(p.dim, Rat(1))};
  }

  Cplx eval(const std::vector<Cplx>& x) const {
    Cplx d = den.eval(x);
    require(std::abs(d) > 1e-300, "PoleAtCritical",
            "denominator vanishes at evaluation point");
    return num.eval(x) / d;
  }
};

}  // namespace amp
