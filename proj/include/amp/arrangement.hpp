#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/rational.hpp"
#include "amp/residue_pairing.hpp"

namespace amp {

// A projective hyperplane together with its twist weight.  coeffs has length
// n+1 and is read against homogeneous coordinates (x0 : x1 : ... : xn), with
// x0 the homogenizing coordinate: the affine chart x0 = 1 sees the zero set of
// coeffs[0] + coeffs[1] x1 + ... + coeffs[n] xn.  The hyperplane at infinity
// in the standard presentation is (1, 0, ..., 0).
struct Hyperplane {
  RatVec coeffs;
  Rat alpha;
};

// A projective arrangement with one member distinguished as the hyperplane at
// infinity.  Weights must sum to zero exactly; that is what makes the twisted
// forms single-valued on the torus side and is validated up front.
struct Arrangement {
  int n = 0;
  std::vector<Hyperplane> hyps;
  int infinity = 0;
};

// A zero-dimensional stratum: the n hyperplanes cutting it out (sorted
// indices) and its primitive integer homogeneous coordinates.
struct ArrVertex {
  std::vector<int> subset;
  IntVec point;
};

namespace arr_detail {

// Primitive integer representative of a rational coefficient vector, with the
// first nonzero entry positive, so proportional hyperplanes compare equal.
inline IntVec primitive_coeffs(const RatVec& c) {
  Int den = common_denominator(c);
  IntVec w(c.size());
  Int g = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    Rat scaled = c[i] * den;
    w[i] = scaled.get_num();
    g = gcd(g, w[i]);
  }
  require(g != 0, "InvalidIndex", "hyperplane has identically zero coefficients");
  int lead_sign = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] /= g;
    if (lead_sign == 0 && w[i] != 0) lead_sign = sgn(w[i]);
  }
  if (lead_sign < 0)
    for (auto& x : w) x = -x;
  return w;
}

inline Rat eval_hyperplane(const Hyperplane& h, const IntVec& pt) {
  Rat s = 0;
  for (size_t i = 0; i < h.coeffs.size(); ++i) s += h.coeffs[i] * Rat(pt[i]);
  return s;
}

}  // namespace arr_detail

inline void validate_arrangement(const Arrangement& arr) {
  require(arr.n >= 1, "DimMismatch", "arrangement dimension must be at least 1");
  const int N = static_cast<int>(arr.hyps.size());
  require(N >= arr.n + 1, "NonGenericArrangement",
          "need at least n+1 hyperplanes to cut out a vertex");
  require(arr.infinity >= 0 && arr.infinity < N, "InvalidIndex",
          "infinity index out of range");
  Rat weight_sum = 0;
  for (const Hyperplane& h : arr.hyps) {
    require(static_cast<int>(h.coeffs.size()) == arr.n + 1, "DimMismatch",
            "hyperplane coefficient vector must have length n+1");
    weight_sum += h.alpha;
  }
  require(weight_sum == 0, "WeightSumNonzero",
          "twist weights must sum to zero, got " + rat_to_string(weight_sum));
  // Coincident hyperplanes are not a normal crossing configuration.
  std::vector<IntVec> prim;
  prim.reserve(N);
  for (const Hyperplane& h : arr.hyps) prim.push_back(arr_detail::primitive_coeffs(h.coeffs));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      require(prim[i] != prim[j], "NonGenericArrangement",
              "hyperplanes " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                  " coincide");
}

// All zero-dimensional strata.  Every n-subset of the arrangement must meet in
// exactly one projective point and no n+1 hyperplanes may pass through a
// common point; anything else is a degeneration this exact engine refuses
// rather than resolves.
inline std::vector<ArrVertex> arrangement_vertices(const Arrangement& arr) {
  validate_arrangement(arr);
  const int n = arr.n;
  const int N = static_cast<int>(arr.hyps.size());

  std::vector<ArrVertex> out;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    // Integer matrix whose rows are the chosen coefficient vectors.
    IntMat m(n, n + 1);
    for (int r = 0; r < n; ++r) {
      IntVec row = arr_detail::primitive_coeffs(arr.hyps[pick[r]].coeffs);
      for (int c = 0; c <= n; ++c) m.at(r, c) = row[c];
    }
    IntMat ker = kernel_lattice(m);
    std::string label;
    for (int r = 0; r < n; ++r) label += (r ? "," : "") + std::to_string(pick[r] + 1);
    require(ker.cols == 1, "NonGenericArrangement",
            "hyperplanes {" + label + "} do not meet in a single point");
    ArrVertex v;
    v.subset = pick;
    v.point.resize(n + 1);
    int lead_sign = 0;
    for (int c = 0; c <= n; ++c) {
      v.point[c] = ker.at(c, 0);
      if (lead_sign == 0 && v.point[c] != 0) lead_sign = sgn(v.point[c]);
    }
    if (lead_sign < 0)
      for (auto& x : v.point) x = -x;
    // Normal crossing: exactly the chosen hyperplanes vanish here.
    for (int h = 0; h < N; ++h) {
      bool chosen = std::find(pick.begin(), pick.end(), h) != pick.end();
      bool vanishes = arr_detail::eval_hyperplane(arr.hyps[h], v.point) == 0;
      require(chosen || !vanishes, "NonGenericArrangement",
              "hyperplane " + std::to_string(h + 1) + " also passes through the vertex of {" +
                  label + "}");
    }
    out.push_back(std::move(v));

    int i = n - 1;
    while (i >= 0 && pick[i] == N - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Residue of the logarithmic form attached to the ordered tuple of
// hyperplanes `form` (each entry an index, none of them the infinity member)
// along the ordered tuple cutting out `vertex`.  Componentwise the residue of
// dlog(l_H / l_inf) along the divisor E is 1 for E = H, -1 for E = H_inf and
// 0 otherwise; the full residue is the determinant of that incidence matrix.
inline Rat form_residue(const Arrangement& arr, const std::vector<int>& form,
                        const ArrVertex& vertex) {
  require(static_cast<int>(form.size()) == arr.n, "DimMismatch",
          "basis form must list exactly n hyperplanes");
  for (int h : form) {
    require(h >= 0 && h < static_cast<int>(arr.hyps.size()), "InvalidIndex",
            "basis form references hyperplane " + std::to_string(h + 1));
    require(h != arr.infinity, "InvalidIndex",
            "basis form may not use the hyperplane at infinity");
  }
  const int n = arr.n;
  IntMat r(n, n);
  for (int i = 0; i < n; ++i) {
    int e = vertex.subset[i];
    for (int j = 0; j < n; ++j) {
      if (e == form[j])
        r.at(i, j) = 1;
      else if (e == arr.infinity)
        r.at(i, j) = -1;
      else
        r.at(i, j) = 0;
    }
  }
  return Rat(det_int(r));
}

// Bridge into the residue-pairing engine: one scalar point per vertex, with
// the product of the twist weights through it as connection residue.
inline std::vector<SncPoint> arrangement_residue_data(const Arrangement& arr,
                                                      const std::vector<std::vector<int>>& basis,
                                                      const std::vector<ArrVertex>& vertices) {
  std::vector<SncPoint> points;
  points.reserve(vertices.size());
  for (const ArrVertex& v : vertices) {
    SncPoint p;
    for (int i = 0; i < arr.n; ++i) p.id += (i ? "," : "") + std::to_string(v.subset[i] + 1);
    p.matrix_case = false;
    p.conn_scalar = 1;
    for (int h : v.subset) {
      require(arr.hyps[h].alpha != 0, "ZeroWeightAtVertex",
              "weight of hyperplane " + std::to_string(h + 1) +
                  " vanishes at vertex {" + p.id + "}");
      p.conn_scalar *= arr.hyps[h].alpha;
    }
    for (size_t a = 0; a < basis.size(); ++a)
      p.residues["w" + std::to_string(a)] = {form_residue(arr, basis[a], v)};
    points.push_back(std::move(p));
  }
  return points;
}

// Gram matrix of the chosen basis forms under the normalized pairing.
inline RatMat intersection_matrix(const Arrangement& arr,
                                  const std::vector<std::vector<int>>& basis) {
  std::vector<ArrVertex> vertices = arrangement_vertices(arr);
  std::vector<SncPoint> points = arrangement_residue_data(arr, basis, vertices);
  const int k = static_cast<int>(basis.size());
  RatMat m(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Rat val = pairing_from_residues(points, "w" + std::to_string(a), "w" + std::to_string(b));
      m.at(a, b) = val;
      m.at(b, a) = val;
    }
  return m;
}

}  // namespace amp
