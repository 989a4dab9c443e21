#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/rational.hpp"

namespace amp {

// A configuration is a list of N integer columns spanning R^d.  Point
// configurations enter homogenized (leading 1), so cone and point
// triangulations go through the same code path: a simplex is a d-subset with
// nonzero determinant, and a lift selects the regular triangulation via lower
// supporting functionals.
struct Configuration {
  int dim = 0;
  std::vector<IntVec> points;  // columns, each of length dim

  Configuration() = default;
  Configuration(int d, std::vector<IntVec> pts) : dim(d), points(std::move(pts)) {
    for (const auto& p : points)
      require(static_cast<int>(p.size()) == dim, "DimMismatch",
              "configuration column length mismatch");
    for (size_t i = 0; i < points.size(); ++i)
      for (size_t j = i + 1; j < points.size(); ++j)
        require(points[i] != points[j], "DuplicateColumn",
                "configuration has duplicate columns " + std::to_string(i + 1) + "," +
                    std::to_string(j + 1));
    IntMat m(dim, static_cast<int>(points.size()));
    for (int j = 0; j < m.cols; ++j)
      for (int i = 0; i < dim; ++i) m.at(i, j) = points[j][i];
    require(rat_rank(to_rat(m)) == dim, "NotFullDim",
            "configuration does not span the ambient space");
  }

  int count() const { return static_cast<int>(points.size()); }

  IntMat matrix() const {
    IntMat m(dim, count());
    for (int j = 0; j < m.cols; ++j)
      for (int i = 0; i < dim; ++i) m.at(i, j) = points[j][i];
    return m;
  }

  IntMat submatrix(const std::vector<int>& sigma) const {
    IntMat m(dim, static_cast<int>(sigma.size()));
    for (size_t j = 0; j < sigma.size(); ++j)
      for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = points[sigma[j]][i];
    return m;
  }
};

// Simplices hold 0-based column indices internally; the JSON layer shifts to
// 1-based on the wire.
struct Triangulation {
  Configuration config;
  std::vector<std::vector<int>> simplices;
  std::vector<long> lift;
};

// Regular triangulation T(lift): a d-subset sigma with det != 0 belongs to
// T iff the unique linear functional matching the lift on sigma stays strictly
// below the lift everywhere else.  A tie (functional meets the lift at a
// column outside sigma) means the lifted lower hull has a non-simplex facet.
inline Triangulation regular_triangulation(const Configuration& c,
                                           const std::vector<long>& lift) {
  const int d = c.dim, n = c.count();
  require(static_cast<int>(lift.size()) == n, "DimMismatch",
          "lift length must match column count");
  Triangulation t{c, {}, lift};

  // iterate over all d-subsets in lexicographic order
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    IntMat A = c.submatrix(idx);
    if (det_int(A) != 0) {
      // functional ell with ell(a_i) = lift_i on sigma: solve A^T ell = lift_sigma
      RatVec rhs(d);
      for (int i = 0; i < d; ++i) rhs[i] = Rat(lift[idx[i]]);
      RatVec ell = rat_solve(to_rat(A.transposed()), rhs);
      bool lower = true, tie = false;
      for (int j = 0; j < n && lower; ++j) {
        if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
        Rat val = 0;
        for (int i = 0; i < d; ++i) val += ell[i] * Rat(c.points[j][i]);
        Rat slack = Rat(lift[j]) - val;
        if (slack < 0) lower = false;
        else if (slack == 0) tie = true;
      }
      if (lower && tie)
        fail("DegenerateLift", "lifted lower hull has a non-simplex facet");
      if (lower) t.simplices.push_back(idx);
    }
    // next subset
    int k = d - 1;
    while (k >= 0 && idx[k] == n - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
  return t;
}

// Heights drawn uniformly from {-H..H}; degenerate draws are retried with
// fresh randomness rather than nudged, so every returned triangulation comes
// from an honestly generic lift.
inline Triangulation random_regular_triangulation(const Configuration& c, uint64_t seed,
                                                  long height_bound = 1000,
                                                  int max_retries = 64) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-height_bound, height_bound);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<long> lift(c.count());
    for (auto& h : lift) h = dist(rng);
    try {
      return regular_triangulation(c, lift);
    } catch (const Error& e) {
      if (e.kind() != "DegenerateLift") throw;
    }
  }
  fail("RetriesExhausted", "no generic lift found within retry budget");
}

// Sum of |det| over simplices; equals the normalized volume of the hull when
// the triangulation is honest, which is what the cross-checks assert.
inline Int volume_check(const Triangulation& t) {
  Int total = 0;
  for (const auto& sigma : t.simplices) {
    Int d = det_int(t.config.submatrix(sigma));
    total += d < 0 ? Int(-d) : d;
  }
  return total;
}

}  // namespace amp
