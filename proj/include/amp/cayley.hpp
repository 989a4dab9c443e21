#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/laurent.hpp"
#include "amp/polytope.hpp"
#include "amp/rational.hpp"
#include "amp/triangulate.hpp"

namespace amp {

// Parameter bundle for an integrand x^u * prod_j q_j(x)^{-v_j}.
struct Problem {
  std::vector<LaurentPoly> qs;
  RatVec v;  // one positive weight per factor
  RatVec u;
};

// delta = (v_1..v_e, u_1..u_n); weights must be strictly positive.  Entries
// are re-reduced so values built with the raw mpq_class(num, den) constructor
// cannot leak non-canonical rationals into the exact pipelines.
inline RatVec assemble_delta(const RatVec& v, const RatVec& u) {
  for (const Rat& w : v)
    require(w > 0, "NonPositiveWeight", "factor weights must be positive");
  RatVec delta;
  delta.reserve(v.size() + u.size());
  delta.insert(delta.end(), v.begin(), v.end());
  delta.insert(delta.end(), u.begin(), u.end());
  for (Rat& d : delta) {
    require(d.get_den() != 0, "ZeroDenominator", "parameter with zero denominator");
    d.canonicalize();
  }
  return delta;
}

// Column order within each block: colexicographic on exponent vectors
// (compare from the last coordinate), which reproduces the block pattern of
// the worked configurations (1, x, y for 1+x+y).
inline bool colex_less(const Expo& a, const Expo& b) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

inline std::vector<Expo> sorted_support(const LaurentPoly& q) {
  std::vector<Expo> s = q.support();
  std::sort(s.begin(), s.end(), colex_less);
  return s;
}

struct CayleyConfig {
  int n = 0, e = 0;
  Configuration config;          // (n+e) x N, indicator rows on top
  std::vector<int> block_sizes;  // N_j per factor
  std::vector<int> owner;        // column index -> factor index
};

inline bool snf_diag_all_ones(const IntVec& diag, int want) {
  if (static_cast<int>(diag.size()) < want) return false;
  for (int i = 0; i < want; ++i)
    if (diag[i] != 1) return false;
  return true;
}

namespace cayley_detail {

inline CayleyConfig assemble(const std::vector<LaurentPoly>& qs) {
  require(!qs.empty(), "EmptyPolynomial", "need at least one factor");
  const int e = static_cast<int>(qs.size());
  const int n = qs[0].dim;
  for (const auto& q : qs) {
    require(q.dim == n, "DimMismatch", "all factors must share the variable count");
    require(!q.empty(), "EmptyPolynomial", "zero polynomial among the factors");
  }
  CayleyConfig cc;
  cc.n = n;
  cc.e = e;
  std::vector<IntVec> cols;
  for (int j = 0; j < e; ++j) {
    std::vector<Expo> supp = sorted_support(qs[j]);
    cc.block_sizes.push_back(static_cast<int>(supp.size()));
    for (const Expo& a : supp) {
      IntVec col(n + e, Int(0));
      col[j] = 1;
      for (int i = 0; i < n; ++i) col[e + i] = a[i];
      cols.push_back(col);
      cc.owner.push_back(j);
    }
  }
  cc.config = Configuration(n + e, cols);
  return cc;
}

}  // namespace cayley_detail

// Builds the block configuration [indicators; exponents] and verifies that
// its columns generate the full lattice Z^{n+e} (Smith diagonal all ones).
// Requires the weighted Newton-polytope Minkowski sum to be full-dimensional.
inline CayleyConfig build_cayley(const std::vector<LaurentPoly>& qs) {
  std::vector<Polytope> newts;
  for (const auto& q : qs) newts.push_back(newton_polytope(q));
  RatVec ones(qs.size(), Rat(1));
  Polytope mink = weighted_minkowski(newts, ones);
  require(mink.full_dim(), "NotFullDim",
          "Minkowski sum of the Newton polytopes is lower-dimensional");

  CayleyConfig cc = cayley_detail::assemble(qs);
  IntMat m = cc.config.submatrix([&] {
    std::vector<int> all(cc.config.count());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }());
  IntVec diag = smith_diagonal(smith_normal_form(m).S);
  if (!snf_diag_all_ones(diag, cc.n + cc.e)) {
    std::string d;
    for (const Int& x : diag) d += (d.empty() ? "" : ",") + x.get_str();
    fail("NotSaturated", "column lattice has index > 1; SNF diagonal = [" + d + "]");
  }
  return cc;
}

// Change of variables fixing a non-saturated exponent lattice: translate each
// factor by its first exponent, find Q with Z{translated exponents} = ZQ via
// the Smith form, and map exponents through Q^{-1}.  The rebuilt configuration
// is saturated; |det Q| is the lattice index that was repaired.
inline std::pair<std::vector<LaurentPoly>, IntMat> saturation_repair(
    const std::vector<LaurentPoly>& qs) {
  require(!qs.empty(), "EmptyPolynomial", "need at least one factor");
  const int n = qs[0].dim;

  // already saturated: leave the input untouched
  try {
    build_cayley(qs);
    return {qs, IntMat::identity(n)};
  } catch (const Error& e) {
    if (e.kind() != "NotSaturated") throw;
  }

  std::vector<Expo> base(qs.size());
  std::vector<IntVec> cols;
  for (size_t j = 0; j < qs.size(); ++j) {
    std::vector<Expo> supp = sorted_support(qs[j]);
    base[j] = supp.front();
    for (const Expo& a : supp) {
      IntVec c(n);
      for (int i = 0; i < n; ++i) c[i] = a[i] - base[j][i];
      cols.push_back(c);
    }
  }
  IntMat B(n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) B.at(i, static_cast<int>(j)) = cols[j][i];

  SmithResult snf = smith_normal_form(B);
  IntVec diag = smith_diagonal(snf.S);
  int rank = 0;
  for (const Int& d : diag)
    if (d != 0) ++rank;
  require(rank == n, "RankDeficient",
          "translated exponents span a proper subspace; no repair possible");

  // Q = U^{-1} * diag(d_1..d_n): then ZQ equals the column lattice of B.
  RatMat uinv = rat_inverse(to_rat(snf.U));
  IntMat Q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat q = uinv.at(i, j) * Rat(diag[j]);
      require(is_integer(q), "RankDeficient", "internal: non-integer repair matrix");
      Q.at(i, j) = q.get_num();
    }

  RatMat qinv = rat_inverse(to_rat(Q));
  std::vector<LaurentPoly> out;
  for (size_t j = 0; j < qs.size(); ++j) {
    LaurentPoly p(n);
    for (const auto& [a, c] : qs[j].terms) {
      Expo ne(n);
      for (int i = 0; i < n; ++i) {
        Rat x = 0;
        for (int k = 0; k < n; ++k) x += qinv.at(i, k) * Rat(a[k] - base[j][k]);
        require(is_integer(x), "RankDeficient", "internal: repaired exponent not integral");
        ne[i] = static_cast<long>(x.get_num().get_si());
      }
      p.add_term(ne, c);
    }
    out.push_back(p);
  }
  return {out, Q};
}

}  // namespace amp
