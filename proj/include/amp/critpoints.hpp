#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "amp/cayley.hpp"
#include "amp/error.hpp"
#include "amp/laurent.hpp"
#include "amp/rational.hpp"
#include "amp/triangulate.hpp"

namespace amp {

// L = sum_i u_i log x_i - sum_j v_j log q_j(x).  Parameters arrive exact and
// are mirrored as doubles for the numeric solvers.
struct LogLikelihood {
  std::vector<LaurentPoly> qs;
  RatVec u, v;
  int n = 0;

  LogLikelihood() = default;
  LogLikelihood(std::vector<LaurentPoly> qs_, RatVec v_, RatVec u_)
      : qs(std::move(qs_)), u(std::move(u_)), v(std::move(v_)) {
    require(!qs.empty(), "EmptyPolynomial", "need at least one factor");
    n = qs[0].dim;
    require(static_cast<int>(u.size()) == n, "DimMismatch", "u length mismatch");
    require(qs.size() == v.size(), "DimMismatch", "one weight per factor");
    for (const Rat& w : v)
      require(w > 0, "NonPositiveWeight", "factor weights must be positive");
  }
};

struct CriticalPoint {
  std::vector<Cplx> coords;
  Cplx hessian_det = 0.0;
  double newton_residual = 0.0;
};

// Cleared critical equations: u_i * prod_j q_j - sum_j v_j (theta_i q_j) *
// prod_{k != j} q_k, one Laurent polynomial per variable, exact coefficients.
inline std::vector<LaurentPoly> build_system(const LogLikelihood& L) {
  const int e = static_cast<int>(L.qs.size());
  LaurentPoly full = constant_poly(L.n, Rat(1));
  for (const auto& q : L.qs) full = full * q;
  std::vector<LaurentPoly> without(e, constant_poly(L.n, Rat(1)));
  for (int j = 0; j < e; ++j)
    for (int k = 0; k < e; ++k)
      if (k != j) without[j] = without[j] * L.qs[k];

  std::vector<LaurentPoly> sys;
  for (int i = 0; i < L.n; ++i) {
    LaurentPoly g = full.scaled(L.u[i]);
    for (int j = 0; j < e; ++j) g = g - (L.qs[j].theta(i) * without[j]).scaled(L.v[j]);
    sys.push_back(g);
  }
  return sys;
}

namespace crit_detail {

// Cached Euler derivatives of the factors.
struct Derivs {
  const LogLikelihood* L;
  std::vector<std::vector<LaurentPoly>> d1;                // d1[j][i] = theta_i q_j
  std::vector<std::vector<std::vector<LaurentPoly>>> d2;   // d2[j][i][k] = theta_k theta_i q_j
  std::vector<double> vd;
  std::vector<double> ud;

  explicit Derivs(const LogLikelihood& ll) : L(&ll) {
    const int n = ll.n;
    for (const auto& q : ll.qs) {
      std::vector<LaurentPoly> row1;
      std::vector<std::vector<LaurentPoly>> row2;
      for (int i = 0; i < n; ++i) {
        row1.push_back(q.theta(i));
        std::vector<LaurentPoly> inner;
        for (int k = 0; k < n; ++k) inner.push_back(row1.back().theta(k));
        row2.push_back(inner);
      }
      d1.push_back(std::move(row1));
      d2.push_back(std::move(row2));
    }
    for (const Rat& w : ll.v) vd.push_back(to_double(w));
    for (const Rat& w : ll.u) ud.push_back(to_double(w));
  }

  // gradient of L in Euler derivatives: G_i = u_i - sum_j v_j (theta_i q_j)/q_j
  std::vector<Cplx> grad(const std::vector<Cplx>& x) const {
    const int n = L->n;
    std::vector<Cplx> g(n);
    std::vector<Cplx> qv;
    for (const auto& q : L->qs) qv.push_back(q.eval(x));
    for (int i = 0; i < n; ++i) {
      Cplx s = ud[i];
      for (size_t j = 0; j < L->qs.size(); ++j) s -= vd[j] * d1[j][i].eval(x) / qv[j];
      g[i] = s;
    }
    return g;
  }

  // toric Hessian matrix H_ik = theta_k theta_i L
  std::vector<std::vector<Cplx>> hessian(const std::vector<Cplx>& x) const {
    const int n = L->n;
    std::vector<std::vector<Cplx>> H(n, std::vector<Cplx>(n, Cplx(0)));
    for (size_t j = 0; j < L->qs.size(); ++j) {
      Cplx q = L->qs[j].eval(x);
      std::vector<Cplx> t1(n);
      for (int i = 0; i < n; ++i) t1[i] = d1[j][i].eval(x);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          H[i][k] -= vd[j] * (d2[j][i][k].eval(x) / q - t1[i] * t1[k] / (q * q));
    }
    return H;
  }

  // scale-aware pole guard: |q_j(x)| must not be negligible against the
  // term-magnitude sum
  bool off_poles(const std::vector<Cplx>& x) const {
    for (const auto& q : L->qs) {
      double mag = 0.0;
      for (const auto& [e, c] : q.terms) {
        double t = std::abs(to_double(c));
        for (int i = 0; i < q.dim; ++i) t *= std::abs(ipow(x[i], e[i]));
        mag += t;
      }
      if (std::abs(q.eval(x)) < 1e-9 * (mag + 1e-300)) return false;
    }
    return true;
  }
};

inline Cplx cplx_det(std::vector<std::vector<Cplx>> m) {
  const int n = static_cast<int>(m.size());
  Cplx det = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    if (std::abs(m[p][k]) == 0.0) return 0.0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < n; ++i) {
      Cplx f = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

inline std::vector<Cplx> cplx_solve(std::vector<std::vector<Cplx>> m, std::vector<Cplx> b) {
  const int n = static_cast<int>(m.size());
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    require(std::abs(m[p][k]) > 0.0, "DegenerateCritical", "singular Newton system");
    if (p != k) {
      std::swap(m[p], m[k]);
      std::swap(b[p], b[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      Cplx f = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Cplx> x(n);
  for (int i = n - 1; i >= 0; --i) {
    Cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

inline double inf_norm(const std::vector<Cplx>& v) {
  double m = 0.0;
  for (const Cplx& c : v) m = std::max(m, std::abs(c));
  return m;
}

// Durand-Kerner simultaneous iteration for all roots of a dense univariate
// polynomial (ascending coefficients, complex).
inline std::vector<Cplx> all_roots(std::vector<Cplx> c) {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  require(c.size() >= 2, "DegenerateCritical", "critical polynomial is constant");
  const int d = static_cast<int>(c.size()) - 1;
  for (int i = 0; i < d; ++i) c[i] /= c[d];
  c[d] = 1.0;
  auto eval = [&](Cplx x) {
    Cplx r = 0.0;
    for (int i = d; i >= 0; --i) r = r * x + c[i];
    return r;
  };
  double R = 1.0;
  for (int i = 0; i < d; ++i) R = std::max(R, std::abs(c[i]));
  R = 1.0 + R;
  std::vector<Cplx> r(d);
  for (int k = 0; k < d; ++k)
    r[k] = std::polar(R, 2.0 * M_PI * (k + 0.35) / d + 0.2);
  for (int it = 0; it < 600; ++it) {
    double change = 0.0;
    for (int k = 0; k < d; ++k) {
      Cplx denom = 1.0;
      for (int j = 0; j < d; ++j)
        if (j != k) denom *= r[k] - r[j];
      if (std::abs(denom) == 0.0) {
        r[k] += Cplx(1e-6, 1e-6);
        continue;
      }
      Cplx delta = eval(r[k]) / denom;
      r[k] -= delta;
      change = std::max(change, std::abs(delta) / (1.0 + std::abs(r[k])));
    }
    if (change < 1e-15) break;
  }
  return r;
}

inline double residual_scale(const LogLikelihood& L) {
  double s = 1.0;
  for (const Rat& w : L.u) s = std::max(s, std::fabs(to_double(w)));
  for (const Rat& w : L.v) s = std::max(s, std::fabs(to_double(w)));
  return s;
}

}  // namespace crit_detail

inline Cplx toric_hessian(const LogLikelihood& L, const std::vector<Cplx>& coords) {
  crit_detail::Derivs D(L);
  return crit_detail::cplx_det(D.hessian(coords));
}

// Expected number of nondegenerate critical points for generic data: the
// normalized volume of the Cayley polytope (used as the multistart target;
// completeness is certified separately against the exact amplitude).
inline Int expected_critical_count(const LogLikelihood& L) {
  CayleyConfig cc = cayley_detail::assemble(L.qs);
  Triangulation t = random_regular_triangulation(cc.config, 0x5eed);
  return volume_check(t);
}

// Find the critical points of L on the torus.  n = 1 goes through the cleared
// polynomial and a simultaneous root iteration (complete by construction);
// n >= 2 runs multistart damped Newton in log coordinates until the expected
// count is met or the budget runs out.  Every accepted point is polished,
// pole-guarded, deduplicated, and carries its toric Hessian determinant.
inline std::vector<CriticalPoint> solve_critical(const LogLikelihood& L, uint64_t seed) {
  for (const auto& q : L.qs)
    require(q.all_coeffs_positive(), "NonPositiveCoefficient",
            "factor coefficients must be positive for the critical solver");
  crit_detail::Derivs D(L);
  const int n = L.n;
  const double scale = crit_detail::residual_scale(L);

  std::vector<std::vector<Cplx>> raw;  // candidate coordinates

  if (n == 1) {
    std::vector<LaurentPoly> sys = build_system(L);
    const LaurentPoly& g = sys[0];
    require(!g.empty(), "DegenerateCritical", "critical equation vanished identically");
    long lo = g.terms.begin()->first[0], hi = lo;
    for (const auto& [e, c] : g.terms) {
      lo = std::min(lo, e[0]);
      hi = std::max(hi, e[0]);
    }
    std::vector<Cplx> coeffs(static_cast<size_t>(hi - lo) + 1, Cplx(0));
    for (const auto& [e, c] : g.terms) coeffs[static_cast<size_t>(e[0] - lo)] = to_double(c);
    for (Cplx root : crit_detail::all_roots(coeffs))
      if (std::abs(root) > 1e-12) raw.push_back({root});
  } else {
    const Int expect = expected_critical_count(L);
    const long expected = expect.get_si();
    const int max_starts = 240 + 120 * static_cast<int>(expected);
    long found_target = expected;
    for (int s = 0; s < max_starts; ++s) {
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (s + 1)));
      std::normal_distribution<double> gauss(0.0, 1.2);
      std::vector<Cplx> w(n);
      for (int i = 0; i < n; ++i) w[i] = Cplx(gauss(rng), gauss(rng));
      // damped Newton on G(w) = grad L(exp w); Jacobian is the toric Hessian
      bool converged = false;
      for (int it = 0; it < 80; ++it) {
        std::vector<Cplx> x(n);
        for (int i = 0; i < n; ++i) x[i] = std::exp(w[i]);
        bool bad = false;
        for (int i = 0; i < n; ++i)
          if (std::abs(w[i]) > 40.0) bad = true;
        if (bad || !D.off_poles(x)) break;
        std::vector<Cplx> g = D.grad(x);
        double gn = crit_detail::inf_norm(g);
        if (gn < 1e-12 * scale) {
          converged = true;
          break;
        }
        std::vector<std::vector<Cplx>> H = D.hessian(x);
        std::vector<Cplx> step;
        try {
          step = crit_detail::cplx_solve(H, g);
        } catch (const Error&) {
          break;
        }
        double lam = 1.0;
        for (; lam > 1e-4; lam *= 0.5) {
          std::vector<Cplx> wt(n);
          for (int i = 0; i < n; ++i) wt[i] = w[i] - lam * step[i];
          std::vector<Cplx> xt(n);
          for (int i = 0; i < n; ++i) xt[i] = std::exp(wt[i]);
          if (!D.off_poles(xt)) continue;
          if (crit_detail::inf_norm(D.grad(xt)) < (1.0 - 0.25 * lam) * gn) {
            w = wt;
            break;
          }
        }
        if (lam <= 1e-4) break;
      }
      if (!converged) continue;
      std::vector<Cplx> x(n);
      for (int i = 0; i < n; ++i) x[i] = std::exp(w[i]);
      raw.push_back(x);
      // early exit once the expected count is reached (post-dedup)
      std::vector<std::vector<Cplx>> dedup;
      for (const auto& cand : raw) {
        bool dup = false;
        for (const auto& have : dedup) {
          bool same = true;
          for (int i = 0; i < n; ++i)
            if (std::abs(cand[i] - have[i]) > 1e-8 * (1.0 + std::abs(have[i]))) same = false;
          if (same) dup = true;
        }
        if (!dup) dedup.push_back(cand);
      }
      if (static_cast<long>(dedup.size()) >= found_target) break;
    }
  }

  // polish, guard, dedup, and package
  std::vector<CriticalPoint> out;
  for (auto x : raw) {
    for (int polish = 0; polish < 4; ++polish) {
      if (!D.off_poles(x)) break;
      std::vector<Cplx> g = D.grad(x);
      if (crit_detail::inf_norm(g) < 1e-15 * scale) break;
      std::vector<std::vector<Cplx>> H = D.hessian(x);
      std::vector<Cplx> step;
      try {
        step = crit_detail::cplx_solve(H, g);
      } catch (const Error&) {
        break;
      }
      for (int i = 0; i < n; ++i) x[i] *= std::exp(-step[i]);
    }
    bool zero = false;
    for (const Cplx& c : x)
      if (std::abs(c) < 1e-12) zero = true;
    if (zero || !D.off_poles(x)) continue;
    std::vector<Cplx> g = D.grad(x);
    double res = crit_detail::inf_norm(g) / scale;
    if (res > 1e-10) continue;
    bool dup = false;
    for (const auto& have : out) {
      bool same = true;
      for (int i = 0; i < n; ++i)
        if (std::abs(x[i] - have.coords[i]) > 1e-8 * (1.0 + std::abs(have.coords[i])))
          same = false;
      if (same) dup = true;
    }
    if (dup) continue;
    CriticalPoint cp;
    cp.coords = x;
    cp.newton_residual = res;
    cp.hessian_det = crit_detail::cplx_det(D.hessian(x));
    require(std::abs(cp.hessian_det) >= 1e-12, "DegenerateCritical",
            "toric Hessian numerically singular: parameters non-generic");
    out.push_back(std::move(cp));
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    for (size_t i = 0; i < a.coords.size(); ++i) {
      if (a.coords[i].real() != b.coords[i].real())
        return a.coords[i].real() < b.coords[i].real();
      if (a.coords[i].imag() != b.coords[i].imag())
        return a.coords[i].imag() < b.coords[i].imag();
    }
    return false;
  });
  return out;
}

// sum_p (-1)^n / det Htoric(p); the signed version that reproduces the
// positive exact amplitude when `pts` is complete.
inline Cplx stationary_sum(const LogLikelihood& L, const std::vector<CriticalPoint>& pts) {
  Cplx s = 0.0;
  const double sign = (L.n % 2 == 0) ? 1.0 : -1.0;
  for (const auto& p : pts) s += sign / p.hessian_det;
  require(std::abs(s.imag()) <= 1e-8 * std::max(1e-30, std::abs(s)), "NonRealResult",
          "stationary sum has a non-negligible imaginary part");
  return s;
}

namespace crit_detail {
inline Cplx eval_guarded(const RationalFn& f, const std::vector<Cplx>& x) {
  double mag = 0.0;
  for (const auto& [e, c] : f.den.terms) {
    double t = std::abs(to_double(c));
    for (int i = 0; i < f.den.dim; ++i) t *= std::abs(ipow(x[i], e[i]));
    mag += t;
  }
  Cplx d = f.den.eval(x);
  require(std::abs(d) > 1e-10 * (mag + 1e-300), "PoleAtCritical",
          "form denominator vanishes at a critical point");
  return f.num.eval(x) / d;
}
}  // namespace crit_detail

// General critical-point pairing sum_p a(p) b(p) / det Htoric(p).  No (-1)^n
// here: that sign belongs to the ordering convention of the two cohomology
// arguments and is applied by callers that compare against intersection-side
// normalizations.
inline Cplx k0_pairing(const LogLikelihood& L, const std::vector<CriticalPoint>& pts,
                       const RationalFn& a, const RationalFn& b) {
  Cplx s = 0.0;
  require(a.num.dim == L.n && b.num.dim == L.n, "DimMismatch",
          "form dimension must match the likelihood");
  for (const auto& p : pts)
    s += crit_detail::eval_guarded(a, p.coords) * crit_detail::eval_guarded(b, p.coords) /
         p.hessian_det;
  return s;
}

// Gram matrix of k0_pairing over a list of forms, plus a numeric
// nonsingularity verdict (Hadamard-relative determinant threshold).
inline std::pair<std::vector<std::vector<Cplx>>, bool> gram_basis_check(
    const LogLikelihood& L, const std::vector<CriticalPoint>& pts,
    const std::vector<RationalFn>& forms) {
  const int m = static_cast<int>(forms.size());
  std::vector<std::vector<Cplx>> M(m, std::vector<Cplx>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M[i][j] = k0_pairing(L, pts, forms[i], forms[j]);
  Cplx det = crit_detail::cplx_det(M);
  double rows = 1.0;
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    for (int j = 0; j < m; ++j) r += std::abs(M[i][j]);
    rows *= std::max(r, 1e-30);
  }
  return {M, std::abs(det) > 1e-10 * rows};
}

// Certified driver: retries the multistart with growing seeds until the
// stationary sum matches the exact amplitude, else IncompleteRootSet.
inline std::vector<CriticalPoint> solve_critical_certified(const LogLikelihood& L,
                                                           const Rat& exact_amplitude,
                                                           uint64_t seed, int rounds = 4) {
  const double target = to_double(exact_amplitude);
  for (int r = 0; r < rounds; ++r) {
    std::vector<CriticalPoint> pts = solve_critical(L, seed + 1000003ULL * r);
    if (pts.empty()) continue;
    Cplx s = stationary_sum(L, pts);
    if (std::abs(s.real() - target) <= 1e-6 * std::max(1.0, std::fabs(target))) return pts;
  }
  fail("IncompleteRootSet",
       "stationary sum does not certify against the exact amplitude within budget");
}

}  // namespace amp
