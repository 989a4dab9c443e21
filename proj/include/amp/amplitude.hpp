#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amp/cayley.hpp"
#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/polytope.hpp"
#include "amp/rational.hpp"
#include "amp/triangulate.hpp"

namespace amp {

struct AmplitudeResult {
  Rat value;
  std::string pipeline;  // "triangulation" | "dual_volume"
  std::optional<Triangulation> triangulation_used;
  std::vector<std::pair<std::vector<int>, Rat>> per_simplex_terms;
};

// p_sigma(X) := A_sigma^{-1} X; its entries are the per-simplex linear
// functionals whose product sits under each term of the amplitude sum.
inline RatVec p_sigma(const Configuration& cfg, const std::vector<int>& sigma,
                      const RatVec& X) {
  IntMat A = cfg.submatrix(sigma);
  require(A.rows == A.cols, "DimMismatch", "simplex size must equal configuration rank");
  return solve_exact(A, X);
}

// Signed Filliman sum over a triangulation of a pointed cone:
//   sum_sigma 1 / (|det A_sigma| * prod_i p_{sigma,i}(X)).
// Individual terms may be negative when X leaves a simplex's span region; the
// total is triangulation-independent.
inline Rat dual_cone_volume(const Triangulation& t, const RatVec& X) {
  const Configuration& cfg = t.config;
  // pointedness: some functional phi has <phi, a_j> >= 1 on every generator;
  // search basic solutions of the exact feasibility system
  {
    const int d = cfg.dim, m = cfg.count();
    bool pointed = false;
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      IntMat A = cfg.submatrix(idx);
      if (det_int(A) != 0) {
        RatVec phi = solve_exact(A.transposed(), RatVec(d, Rat(1)));
        bool feas = true;
        for (int j = 0; j < m && feas; ++j) {
          Rat s = 0;
          for (int i = 0; i < d; ++i) s += Rat(cfg.points[j][i]) * phi[i];
          if (s < 1) feas = false;
        }
        if (feas) {
          pointed = true;
          break;
        }
      }
      int k = d - 1;
      while (k >= 0 && idx[k] == m - d + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int i = k + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
    }
    require(pointed, "NotPointed", "generator cone contains a line");
  }

  Rat total = 0;
  for (const auto& sigma : t.simplices) {
    Int det = det_int(t.config.submatrix(sigma));
    RatVec p = p_sigma(cfg, sigma, X);
    Rat prod = rat(det < 0 ? Int(-det) : det, Int(1));
    for (const Rat& pi : p) {
      require(pi != 0, "ParameterOnWall",
              "parameter lies on a facet hyperplane of a simplex");
      prod *= pi;
    }
    total += 1 / prod;
  }
  return total;
}

// Exact amplitude from a regular triangulation of the Cayley configuration:
//   v_1...v_e * sum_sigma 1/|det A_sigma| * prod_i 1/p_{sigma,i}(delta).
inline AmplitudeResult amplitude_triangulation(const CayleyConfig& cc, const RatVec& delta,
                                               const Triangulation& t) {
  require(static_cast<int>(delta.size()) == cc.n + cc.e, "DimMismatch",
          "delta length must be n+e");
  AmplitudeResult res;
  res.pipeline = "triangulation";
  res.triangulation_used = t;

  Rat weight = 1;
  for (int j = 0; j < cc.e; ++j) weight *= delta[j];

  Rat total = 0;
  for (const auto& sigma : t.simplices) {
    Int det = det_int(cc.config.submatrix(sigma));
    RatVec p = p_sigma(cc.config, sigma, delta);
    Rat prod = rat(det < 0 ? Int(-det) : det, Int(1));
    for (const Rat& pi : p) {
      require(pi != 0, "ParameterOnWall",
              "delta lies on a facet hyperplane of simplex; choose another "
              "triangulation or parameters");
      prod *= pi;
    }
    Rat term = 1 / prod;
    res.per_simplex_terms.emplace_back(sigma, term);
    total += term;
  }
  res.value = weight * total;
  return res;
}

// Exact amplitude as the normalized volume of the dual polytope (P - u)^polar
// with P the v-weighted Minkowski sum of the Newton polytopes.
inline AmplitudeResult amplitude_dual_volume(const std::vector<LaurentPoly>& qs,
                                             const RatVec& v, const RatVec& u) {
  require(qs.size() == v.size(), "DimMismatch", "one weight per factor");
  // Re-reduce defensively before any exact comparison: polytope vertex
  // enumeration relies on GMP equality, which assumes canonical operands.
  RatVec vc = v, uc = u;
  for (RatVec* vec : {&vc, &uc})
    for (Rat& x : *vec) {
      require(x.get_den() != 0, "ZeroDenominator", "parameter with zero denominator");
      x.canonicalize();
    }
  std::vector<Polytope> newts;
  for (const auto& q : qs) newts.push_back(newton_polytope(q));
  Polytope P = weighted_minkowski(newts, vc);
  require(P.full_dim(), "NotFullDim", "weighted Minkowski sum is lower-dimensional");
  require(contains_interior(P, uc), "NotInterior",
          "u must lie strictly inside the weighted Newton polytope");
  Polytope dual = dual_polytope(P, uc);
  AmplitudeResult res;
  res.pipeline = "dual_volume";
  res.value = normalized_volume(dual);
  return res;
}

}  // namespace amp
