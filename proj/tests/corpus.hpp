#pragma once

// Shared problem corpus for the unit and acceptance suites: the four golden
// closed-form problems plus a deterministic random-problem generator used by
// the cross-pipeline agreement checks.

#include <random>

#include "amp/amplitude.hpp"
#include "amp/cayley.hpp"
#include "amp/laurent.hpp"
#include "amp/polytope.hpp"
#include "amp/rational.hpp"
#include "amp/triangulate.hpp"

namespace corpus {

using amp::Expo;
using amp::LaurentPoly;
using amp::Problem;
using amp::Rat;
using amp::RatVec;

inline LaurentPoly poly1(std::initializer_list<std::pair<long, long>> terms) {
  LaurentPoly q(1);
  for (const auto& [e, c] : terms) q.add_term({e}, Rat(c));
  return q;
}

inline LaurentPoly poly2(std::initializer_list<std::pair<std::pair<long, long>, long>> terms) {
  LaurentPoly q(2);
  for (const auto& [e, c] : terms) q.add_term({e.first, e.second}, Rat(c));
  return q;
}

// q = 1+x, v = 3, u = 1; amplitude 3/2
inline Problem beta() {
  return {{poly1({{0, 1}, {1, 1}})}, {Rat(3)}, {Rat(1)}};
}

// q = 1+x+x^2, v = 3, u = 1; amplitude 6/5
inline Problem quadratic() {
  return {{poly1({{0, 1}, {1, 1}, {2, 1}})}, {Rat(3)}, {Rat(1)}};
}

// q = 1+x+y, v = 3, u = (1,1); amplitude 3
inline Problem dirichlet() {
  return {{poly2({{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}})}, {Rat(3)}, {Rat(1), Rat(1)}};
}

// q1 = 1+x (v1=2), q2 = 1+y (v2=3), u = (1,1);
// amplitude v1 v2 / (u1 (v1-u1) u2 (v2-u2)) = 3
inline Problem product() {
  LaurentPoly q1(2), q2(2);
  q1.add_term({0, 0}, 1);
  q1.add_term({1, 0}, 1);
  q2.add_term({0, 0}, 1);
  q2.add_term({0, 1}, 1);
  return {{q1, q2}, {Rat(2), Rat(3)}, {Rat(1), Rat(1)}};
}

inline std::vector<std::pair<Problem, Rat>> goldens() {
  return {{beta(), amp::rat(3, 2)},
          {quadratic(), amp::rat(6, 5)},
          {dirichlet(), Rat(3)},
          {product(), Rat(3)}};
}

// Deterministic random problem with n <= 3, e <= 2, at most 8 Cayley columns,
// positive rational coefficients, and u strictly interior to the weighted
// Newton polytope (a positive convex combination of its vertices).  Retries
// internally until the Cayley configuration is saturated and full-dimensional
// and a random regular triangulation evaluates off every parameter wall.
inline Problem random_problem(std::uint64_t seed, int max_n = 3) {
  std::mt19937_64 rng(0x777a5eedull ^ (seed * 0x9e3779b97f4a7c15ull));
  auto pick = [&](long lo, long hi) {
    return static_cast<long>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  // Sequence the two draws explicitly (argument evaluation order is
  // unspecified) and go through amp::rat so the value is canonicalized: the
  // raw mpq_class(num, den) constructor does not reduce, and GMP comparisons
  // are only defined on canonical rationals.
  auto pick_rat = [&](long nhi, long dhi) {
    const long num = pick(1, nhi);
    const long den = pick(1, dhi);
    return amp::rat(num, den);
  };
  for (int attempt = 0; attempt < 400; ++attempt) {
    const int n = static_cast<int>(pick(1, max_n));
    const int e = static_cast<int>(pick(1, 2));
    const int budget = 8;
    std::vector<int> sizes(e);
    sizes[0] = static_cast<int>(pick(2, n + 2));
    if (e == 2) sizes[1] = static_cast<int>(pick(2, std::min(3, budget - sizes[0])));

    Problem prob;
    bool bad = false;
    for (int j = 0; j < e && !bad; ++j) {
      LaurentPoly q(n);
      q.add_term(Expo(n, 0), pick_rat(4, 2));
      for (int t = 1; t < sizes[j]; ++t) {
        Expo ex(n);
        for (int i = 0; i < n; ++i) ex[i] = pick(0, 3);
        q.add_term(ex, pick_rat(5, 3));
      }
      if (static_cast<int>(q.size()) < 2) bad = true;  // duplicate draws collapsed
      prob.qs.push_back(std::move(q));
      prob.v.push_back(pick_rat(6, 2));
    }
    if (bad) continue;

    try {
      std::vector<amp::Polytope> parts;
      for (const auto& q : prob.qs) parts.push_back(amp::newton_polytope(q));
      amp::Polytope P = amp::weighted_minkowski(parts, prob.v);
      if (!P.full_dim()) continue;
      RatVec u(n, Rat(0));
      Rat total = 0;
      for (const RatVec& w : P.vertices) {
        Rat lam(pick(1, 4));
        total += lam;
        for (int i = 0; i < n; ++i) u[i] += lam * w[i];
      }
      for (int i = 0; i < n; ++i) u[i] /= total;
      prob.u = u;

      amp::CayleyConfig cfg = amp::build_cayley(prob.qs);
      RatVec delta = amp::assemble_delta(prob.v, prob.u);
      amp::Triangulation tri =
          amp::random_regular_triangulation(cfg.config, rng());
      (void)amp::amplitude_triangulation(cfg, delta, tri);
      return prob;
    } catch (const amp::Error&) {
      continue;  // not saturated, degenerate, or parameter on a wall: redraw
    }
  }
  amp::fail("RetriesExhausted", "random problem generator exhausted its attempts");
}

}  // namespace corpus
