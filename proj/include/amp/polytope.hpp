#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/laurent.hpp"
#include "amp/rational.hpp"

namespace amp {

// Inward-facing halfspace <normal, x> >= offset; normal is a primitive
// integer vector stored as rationals, `tight` indexes the vertices on the
// facet.
struct Facet {
  RatVec normal;
  Rat offset;
  std::vector<int> tight;
};

namespace hull_detail {

// Row-reduce the difference matrix of `pts` and report (affine rank, pivot
// coordinate indices).  The pivot coordinates give an affine-injective
// projection of the span, which is how lower-dimensional faces get recursed
// on without leaving exact arithmetic.
inline std::pair<int, std::vector<int>> affine_rank_pivots(const std::vector<RatVec>& pts,
                                                           int dim) {
  std::vector<int> pivots;
  if (pts.size() <= 1) return {0, pivots};
  RatMat d(static_cast<int>(pts.size()) - 1, dim);
  for (size_t i = 1; i < pts.size(); ++i)
    for (int j = 0; j < dim; ++j) d.at(static_cast<int>(i) - 1, j) = pts[i][j] - pts[0][j];
  int r = 0;
  for (int c = 0; c < dim && r < d.rows; ++c) {
    int p = -1;
    for (int i = r; i < d.rows; ++i)
      if (d.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < dim; ++j) std::swap(d.at(r, j), d.at(p, j));
    for (int i = r + 1; i < d.rows; ++i) {
      if (d.at(i, c) == 0) continue;
      Rat f = d.at(i, c) / d.at(r, c);
      for (int j = c; j < dim; ++j) d.at(i, j) -= f * d.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {r, pivots};
}

inline std::vector<RatVec> project(const std::vector<RatVec>& pts,
                                   const std::vector<int>& coords) {
  std::vector<RatVec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    RatVec q;
    q.reserve(coords.size());
    for (int c : coords) q.push_back(p[c]);
    out.push_back(q);
  }
  return out;
}

// Primitive integer normal of the hyperplane through d affinely independent
// points of R^d (kernel of the cleared difference matrix).  Empty result if
// the points are dependent.
inline IntVec hyperplane_normal(const std::vector<RatVec>& pts, const std::vector<int>& subset,
                                int d) {
  IntMat diffs(d - 1, d);
  for (int i = 1; i < d; ++i) {
    RatVec row(d);
    for (int j = 0; j < d; ++j) row[j] = pts[subset[i]][j] - pts[subset[0]][j];
    Int l = common_denominator(row);
    for (int j = 0; j < d; ++j) diffs.at(i - 1, j) = Rat(row[j] * Rat(l)).get_num();
  }
  IntMat ker = kernel_lattice(diffs);
  if (ker.cols != 1) return {};
  IntVec n(d);
  for (int i = 0; i < d; ++i) n[i] = ker.at(i, 0);
  return n;
}

// Exhaustive facet enumeration for a full-dimensional point set: every
// d-subset spanning a hyperplane with all points on one side contributes a
// facet.  Desk scale (dim <= 4, tens of points), so C(N,d) is fine.
inline std::vector<Facet> hull_facets(const std::vector<RatVec>& pts, int d) {
  const int n = static_cast<int>(pts.size());
  require(n >= d + 1, "NotFullDim", "too few points for a full-dimensional hull");
  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  std::vector<Facet> facets;

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    IntVec nrm = hyperplane_normal(pts, idx, d);
    if (!nrm.empty()) {
      Rat c = 0;
      for (int j = 0; j < d; ++j) c += Rat(nrm[j]) * pts[idx[0]][j];
      bool lo = true, hi = true;
      for (int p = 0; p < n && (lo || hi); ++p) {
        Rat v = -c;
        for (int j = 0; j < d; ++j) v += Rat(nrm[j]) * pts[p][j];
        if (v < 0) hi = false;
        if (v > 0) lo = false;
      }
      if (lo != hi) {  // genuine supporting hyperplane (lo&&hi would mean flat set)
        RatVec normal(d);
        Rat offset;
        if (hi) {
          for (int j = 0; j < d; ++j) normal[j] = Rat(nrm[j]);
          offset = c;
        } else {
          for (int j = 0; j < d; ++j) normal[j] = Rat(-nrm[j]);
          offset = -c;
        }
        std::vector<std::string> key;
        for (const Rat& x : normal) key.push_back(rat_to_string(x));
        if (seen.emplace(key, rat_to_string(offset)).second) {
          Facet f{normal, offset, {}};
          for (int p = 0; p < n; ++p) {
            Rat v = -f.offset;
            for (int j = 0; j < d; ++j) v += f.normal[j] * pts[p][j];
            if (v == 0) f.tight.push_back(p);
          }
          facets.push_back(std::move(f));
        }
      }
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == n - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
  return facets;
}

// Indices of the extreme points of an arbitrary (possibly lower-dimensional)
// point set: project the affine span onto pivot coordinates, take the hull
// there, and call a point extreme when its tight facet normals span.
inline std::vector<int> extreme_indices(const std::vector<RatVec>& pts, int dim) {
  std::vector<int> uniq;
  for (size_t i = 0; i < pts.size(); ++i) {
    bool dup = false;
    for (int u : uniq)
      if (pts[u] == pts[i]) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(static_cast<int>(i));
  }
  std::vector<RatVec> up;
  for (int u : uniq) up.push_back(pts[u]);

  auto [rank, pivots] = affine_rank_pivots(up, dim);
  if (rank == 0) return {uniq[0]};
  std::vector<RatVec> proj = project(up, pivots);
  std::vector<Facet> facets = hull_facets(proj, rank);
  std::vector<int> out;
  for (size_t p = 0; p < proj.size(); ++p) {
    std::vector<RatVec> rows;
    for (const Facet& f : facets)
      if (std::find(f.tight.begin(), f.tight.end(), static_cast<int>(p)) != f.tight.end())
        rows.push_back(f.normal);
    if (static_cast<int>(rows.size()) < rank) continue;
    RatMat m(static_cast<int>(rows.size()), rank);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < rank; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    if (rat_rank(m) == rank) out.push_back(uniq[p]);
  }
  return out;
}

// Star (placing) triangulation of a full-dimensional point set in R^k:
// cone the first point over the recursively triangulated facets that avoid
// it.  Returns index subsets of size k+1.
inline std::vector<std::vector<int>> star_triangulation(const std::vector<RatVec>& pts, int k) {
  const int n = static_cast<int>(pts.size());
  if (n == k + 1) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return {all};
  }
  std::vector<std::vector<int>> out;
  for (const Facet& f : hull_facets(pts, k)) {
    if (std::find(f.tight.begin(), f.tight.end(), 0) != f.tight.end()) continue;
    std::vector<RatVec> fpts;
    for (int t : f.tight) fpts.push_back(pts[t]);
    std::vector<std::vector<int>> sub;
    if (k == 1) {
      sub = {{0}};  // facet of a segment is a single point
    } else {
      auto [rank, pivots] = affine_rank_pivots(fpts, k);
      require(rank == k - 1, "NotFullDim", "facet has wrong affine rank");
      sub = star_triangulation(project(fpts, pivots), k - 1);
    }
    for (const auto& s : sub) {
      std::vector<int> simplex{0};
      for (int li : s) simplex.push_back(f.tight[li]);
      out.push_back(simplex);
    }
  }
  return out;
}

}  // namespace hull_detail

// Convex hull of rational points.  `rank` is the affine dimension; facets are
// only populated for full-dimensional polytopes (lower-dimensional ones stay
// valid as vertex sets, e.g. Newton polytopes of sparse factors, but the
// volume/dual/interior operations refuse them).
struct Polytope {
  int dim = 0;
  int rank = 0;
  std::vector<RatVec> vertices;
  std::vector<Facet> facets;

  static Polytope from_points(int dim, const std::vector<RatVec>& pts) {
    require(!pts.empty(), "EmptyPolynomial", "cannot build a polytope from no points");
    for (const auto& p : pts)
      require(static_cast<int>(p.size()) == dim, "DimMismatch", "point length mismatch");
    Polytope P;
    P.dim = dim;
    std::vector<int> ext = hull_detail::extreme_indices(pts, dim);
    for (int i : ext) P.vertices.push_back(pts[i]);
    P.rank = hull_detail::affine_rank_pivots(P.vertices, dim).first;
    if (P.rank == dim) {
      P.facets = hull_detail::hull_facets(P.vertices, dim);
      std::sort(P.facets.begin(), P.facets.end(), [](const Facet& a, const Facet& b) {
        for (size_t i = 0; i < a.normal.size(); ++i)
          if (a.normal[i] != b.normal[i]) return a.normal[i] < b.normal[i];
        return a.offset < b.offset;
      });
    }
    return P;
  }

  bool full_dim() const { return rank == dim; }
};

inline Polytope newton_polytope(const LaurentPoly& p) {
  require(!p.empty(), "EmptyPolynomial", "newton polytope of the zero polynomial");
  std::vector<RatVec> pts;
  for (const auto& [e, c] : p.terms) {
    RatVec v(p.dim);
    for (int i = 0; i < p.dim; ++i) v[i] = Rat(e[i]);
    pts.push_back(v);
  }
  return Polytope::from_points(p.dim, pts);
}

// Minkowski sum of the factors' Newton polytopes scaled by positive weights:
// hull of all weighted vertex-tuple sums.
inline Polytope weighted_minkowski(const std::vector<Polytope>& parts, const RatVec& weights) {
  require(!parts.empty(), "EmptyPolynomial", "empty Minkowski sum");
  require(parts.size() == weights.size(), "DimMismatch", "one weight per summand");
  for (const Rat& w : weights)
    require(w > 0, "NonPositiveWeight", "Minkowski weights must be positive");
  const int dim = parts[0].dim;
  for (const auto& p : parts)
    require(p.dim == dim, "DimMismatch", "Minkowski summands in different dimensions");

  std::vector<RatVec> sums{RatVec(dim, Rat(0))};
  std::vector<RatVec> next;
  for (size_t j = 0; j < parts.size(); ++j) {
    next.clear();
    for (const auto& base : sums)
      for (const auto& v : parts[j].vertices) {
        RatVec s(dim);
        for (int i = 0; i < dim; ++i) s[i] = base[i] + weights[j] * v[i];
        next.push_back(s);
      }
    sums.swap(next);
  }
  return Polytope::from_points(dim, sums);
}

inline bool contains_interior(const Polytope& P, const RatVec& u) {
  require(P.full_dim(), "NotFullDim", "interior test needs a full-dimensional polytope");
  require(static_cast<int>(u.size()) == P.dim, "DimMismatch", "point length mismatch");
  for (const Facet& f : P.facets) {
    Rat v = -f.offset;
    for (int j = 0; j < P.dim; ++j) v += f.normal[j] * u[j];
    if (v <= 0) return false;
  }
  return true;
}

inline bool contains(const Polytope& P, const RatVec& u) {
  require(P.full_dim(), "NotFullDim", "membership test needs a full-dimensional polytope");
  for (const Facet& f : P.facets) {
    Rat v = -f.offset;
    for (int j = 0; j < P.dim; ++j) v += f.normal[j] * u[j];
    if (v < 0) return false;
  }
  return true;
}

// Polar dual of P - u: { psi : <psi, w - u> >= -1 for every vertex w of P }.
// Needs u strictly interior so the dual is a bounded polytope.  Vertices come
// from exhaustive d-subset intersection of the defining hyperplanes; each
// vertex constraint of P contributes exactly one facet of the dual.
inline Polytope dual_polytope(const Polytope& P, const RatVec& u) {
  require(contains_interior(P, u), "NotInterior",
          "duality base point must lie strictly inside the polytope");
  const int d = P.dim;
  const int m = static_cast<int>(P.vertices.size());

  std::vector<RatVec> rows(m, RatVec(d));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) rows[i][j] = P.vertices[i][j] - u[j];

  std::vector<RatVec> verts;
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    RatMat A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A.at(i, j) = rows[idx[i]][j];
    bool ok = true;
    RatVec psi;
    try {
      psi = rat_solve(A, RatVec(d, Rat(-1)));
    } catch (const Error&) {
      ok = false;
    }
    if (ok) {
      for (int i = 0; i < m && ok; ++i) {
        Rat v = 0;
        for (int j = 0; j < d; ++j) v += rows[i][j] * psi[j];
        if (v < -1) ok = false;
      }
      if (ok && std::find(verts.begin(), verts.end(), psi) == verts.end())
        verts.push_back(psi);
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == m - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
  return Polytope::from_points(d, verts);
}

// n! times Lebesgue volume, exact.  Star triangulation over the facet
// structure, then a sum of |det| over the simplices.
inline Rat normalized_volume(const Polytope& P) {
  require(P.full_dim(), "NotFullDim", "volume of a lower-dimensional polytope");
  const int d = P.dim;
  Rat total = 0;
  for (const auto& s : hull_detail::star_triangulation(P.vertices, d)) {
    RatMat M(d, d);
    for (int i = 1; i <= d; ++i)
      for (int j = 0; j < d; ++j)
        M.at(i - 1, j) = P.vertices[s[i]][j] - P.vertices[s[0]][j];
    total += abs(det_rat(M));
  }
  return total;
}

inline Polytope scale_polytope(const Polytope& P, const Rat& lambda) {
  require(lambda > 0, "NonPositiveWeight", "scale factor must be positive");
  std::vector<RatVec> pts;
  for (const auto& v : P.vertices) {
    RatVec w(P.dim);
    for (int j = 0; j < P.dim; ++j) w[j] = lambda * v[j];
    pts.push_back(w);
  }
  return Polytope::from_points(P.dim, pts);
}

}  // namespace amp
