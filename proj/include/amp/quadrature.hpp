#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "amp/error.hpp"
#include "amp/laurent.hpp"
#include "amp/polytope.hpp"
#include "amp/rational.hpp"

namespace amp {

// Result of an epsilon (or alpha) schedule run with extrapolation to 0.
struct QuadratureReport {
  std::vector<double> epsilon_schedule;
  std::vector<double> values;
  double extrapolated = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 0.0;     // 0 picks a per-dimension default
  double drop = 40.0;       // exponent drop defining the truncation region
  std::uint64_t seed = 0x51ab5u;
  long mc_samples = 200000; // n = 3 only
  int max_enlarge = 4;      // truncation-box verification budget
};

namespace quad_detail {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double get() const { return s; }
};

// Exponent functions handed to the integrator.  Implementations fold every
// scale factor (epsilon or alpha) into the exponent itself, so the integrand
// is always exp(value(t) - value(t*)) and the truncation drop is an absolute
// number.  All exponents here are concave, which the maximizer and the
// ray-truncation search rely on.
struct ConcaveExponent {
  int n = 0;
  virtual double value(const std::vector<double>& t) const = 0;
  virtual void derivs(const std::vector<double>& t, std::vector<double>& grad,
                      std::vector<double>& hess) const = 0;  // hess row-major n*n
  virtual ~ConcaveExponent() = default;
};

// One Laurent factor as a stable log-sum-exp: log q(e^t) with softmax mean
// (= gradient of log q in log coordinates) and covariance (= its Hessian).
struct LogSumExpFn {
  int n = 0;
  std::vector<std::vector<double>> expo;
  std::vector<double> logc;

  explicit LogSumExpFn(const LaurentPoly& q) : n(q.dim) {
    for (const auto& [e, c] : q.terms) {
      std::vector<double> a(e.begin(), e.end());
      expo.push_back(std::move(a));
      logc.push_back(std::log(to_double(c)));
    }
  }

  double arg(size_t k, const std::vector<double>& t) const {
    double s = logc[k];
    for (int i = 0; i < n; ++i) s += expo[k][i] * t[i];
    return s;
  }

  double lse(const std::vector<double>& t) const {
    double m = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < expo.size(); ++k) m = std::max(m, arg(k, t));
    double s = 0.0;
    for (size_t k = 0; k < expo.size(); ++k) s += std::exp(arg(k, t) - m);
    return m + std::log(s);
  }

  void mean_cov(const std::vector<double>& t, std::vector<double>& mu,
                std::vector<double>& cov) const {
    const size_t m = expo.size();
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> w(m);
    for (size_t k = 0; k < m; ++k) top = std::max(top, arg(k, t));
    double z = 0.0;
    for (size_t k = 0; k < m; ++k) {
      w[k] = std::exp(arg(k, t) - top);
      z += w[k];
    }
    mu.assign(n, 0.0);
    for (size_t k = 0; k < m; ++k) {
      w[k] /= z;
      for (int i = 0; i < n; ++i) mu[i] += w[k] * expo[k][i];
    }
    cov.assign(static_cast<size_t>(n) * n, 0.0);
    for (size_t k = 0; k < m; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          cov[static_cast<size_t>(i) * n + j] +=
              w[k] * (expo[k][i] - mu[i]) * (expo[k][j] - mu[j]);
  }
};

// eps * [<u,t> - sum_j v_j log q_j(e^t)] — concave because each log-sum-exp
// term is convex and enters with a negative weight.
struct StringyExponent final : ConcaveExponent {
  double eps = 1.0;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<LogSumExpFn> factors;

  StringyExponent(const std::vector<LaurentPoly>& qs, const RatVec& vv, const RatVec& uu,
                  double eps_) {
    n = qs.front().dim;
    eps = eps_;
    for (const Rat& x : uu) u.push_back(to_double(x));
    for (const Rat& x : vv) v.push_back(to_double(x));
    for (const LaurentPoly& q : qs) factors.emplace_back(q);
  }

  double value(const std::vector<double>& t) const override {
    double h = 0.0;
    for (int i = 0; i < n; ++i) h += u[i] * t[i];
    for (size_t j = 0; j < factors.size(); ++j) h -= v[j] * factors[j].lse(t);
    return eps * h;
  }

  void derivs(const std::vector<double>& t, std::vector<double>& grad,
              std::vector<double>& hess) const override {
    grad = u;
    hess.assign(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> mu, cov;
    for (size_t j = 0; j < factors.size(); ++j) {
      factors[j].mean_cov(t, mu, cov);
      for (int i = 0; i < n; ++i) grad[i] -= v[j] * mu[i];
      for (size_t k = 0; k < hess.size(); ++k) hess[k] -= v[j] * cov[k];
    }
    for (double& g : grad) g *= eps;
    for (double& h : hess) h *= eps;
  }
};

// alpha<X,t> - p(e^t): the exponential-integral exponent, again concave.
struct ExponentialExponent final : ConcaveExponent {
  std::vector<double> ax;  // alpha * X
  std::vector<std::vector<double>> expo;
  std::vector<double> logc;

  ExponentialExponent(const LaurentPoly& p, const RatVec& X, double alpha) {
    n = p.dim;
    for (const Rat& x : X) ax.push_back(alpha * to_double(x));
    for (const auto& [e, c] : p.terms) {
      expo.emplace_back(e.begin(), e.end());
      logc.push_back(std::log(to_double(c)));
    }
  }

  double value(const std::vector<double>& t) const override {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += ax[i] * t[i];
    for (size_t k = 0; k < expo.size(); ++k) {
      double a = logc[k];
      for (int i = 0; i < n; ++i) a += expo[k][i] * t[i];
      if (a > 700.0) return -1e290;  // integrand is flat zero out here
      s -= std::exp(a);
    }
    return s;
  }

  void derivs(const std::vector<double>& t, std::vector<double>& grad,
              std::vector<double>& hess) const override {
    grad = ax;
    hess.assign(static_cast<size_t>(n) * n, 0.0);
    for (size_t k = 0; k < expo.size(); ++k) {
      double a = logc[k];
      for (int i = 0; i < n; ++i) a += expo[k][i] * t[i];
      double w = std::exp(std::min(a, 700.0));
      for (int i = 0; i < n; ++i) {
        grad[i] -= w * expo[k][i];
        for (int j = 0; j < n; ++j)
          hess[static_cast<size_t>(i) * n + j] -= w * expo[k][i] * expo[k][j];
      }
    }
  }
};

// ---- small dense helpers (n <= 3) ----

inline double det_dense(int n, const std::vector<double>& a) {
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

inline bool solve_dense(int n, std::vector<double> a, std::vector<double> b,
                        std::vector<double>& x) {
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[static_cast<size_t>(r) * n + c]) >
          std::fabs(a[static_cast<size_t>(p) * n + c]))
        p = r;
    if (std::fabs(a[static_cast<size_t>(p) * n + c]) < 1e-300) return false;
    if (p != c) {
      for (int k = 0; k < n; ++k)
        std::swap(a[static_cast<size_t>(p) * n + k], a[static_cast<size_t>(c) * n + k]);
      std::swap(b[p], b[c]);
    }
    for (int r = c + 1; r < n; ++r) {
      double f = a[static_cast<size_t>(r) * n + c] / a[static_cast<size_t>(c) * n + c];
      for (int k = c; k < n; ++k)
        a[static_cast<size_t>(r) * n + k] -= f * a[static_cast<size_t>(c) * n + k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[static_cast<size_t>(r) * n + k] * x[k];
    x[r] = s / a[static_cast<size_t>(r) * n + r];
  }
  return true;
}

// Damped Newton ascent on a concave exponent; Armijo backtracking on the
// value.  Returns false only when the gradient refuses to vanish.
inline bool maximize_concave(const ConcaveExponent& F, std::vector<double>& t, long& evals) {
  const int n = F.n;
  t.assign(n, 0.0);
  std::vector<double> g, h, step;
  double val = F.value(t);
  ++evals;
  double gscale = 0.0;
  for (int it = 0; it < 400; ++it) {
    F.derivs(t, g, h);
    double gn = 0.0;
    for (double x : g) gn = std::max(gn, std::fabs(x));
    if (it == 0) gscale = std::max(1.0, gn);
    if (gn <= 1e-13 * gscale) return true;
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -g[i];
    if (!solve_dense(n, h, rhs, step)) {
      step = g;  // singular Hessian: plain ascent direction
      double sn = 0.0;
      for (double x : step) sn = std::max(sn, std::fabs(x));
      for (double& x : step) x /= std::max(sn, 1e-30);
    }
    double slope = 0.0;
    for (int i = 0; i < n; ++i) slope += g[i] * step[i];
    if (slope <= 0.0) {
      step = g;
      slope = gn * gn;
    }
    // Newton decrement below the value's rounding noise: the line search
    // cannot measure an improvement this small, so the iterate is a
    // floating-point maximizer even if the gradient norm has not hit the
    // threshold above.
    if (slope <= 8 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(val)))
      return true;
    double lam = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> cand(n);
      for (int i = 0; i < n; ++i) cand[i] = t[i] + lam * step[i];
      double cv = F.value(cand);
      ++evals;
      if (cv >= val + 0.1 * lam * slope) {
        t = cand;
        val = cv;
        moved = true;
        break;
      }
      lam *= 0.5;
    }
    if (!moved) return true;  // stuck at numerical resolution: treat as converged
  }
  return false;
}

// Distance along a ray from the maximum at which the exponent has fallen by
// `drop`.  Concavity makes the exponent monotone decreasing past the max, so
// doubling followed by bisection is exact.
inline double ray_radius(const ConcaveExponent& F, const std::vector<double>& tstar,
                         double fstar, const std::vector<double>& dir, double drop,
                         long& evals) {
  auto below = [&](double r) {
    std::vector<double> t(tstar);
    for (int i = 0; i < F.n; ++i) t[i] += r * dir[i];
    ++evals;
    return F.value(t) <= fstar - drop;
  };
  double hi = 1.0;
  int guard = 0;
  while (!below(hi)) {
    hi *= 2.0;
    require(++guard < 60, "NoConvergence",
            "truncation radius search exceeded budget (exponent decays too slowly)");
  }
  double lo = hi * 0.5 < 1.0 ? 0.0 : hi * 0.5;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (below(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct Box {
  std::vector<double> lo, hi;
};

// Coordinate-aligned truncation box: radii along the axis and diagonal rays
// from the maximum; correctness is re-verified by the enlargement pass in the
// integrator, which is also what the monotone-truncation property tests.
inline Box truncation_box(const ConcaveExponent& F, const std::vector<double>& tstar,
                          double fstar, double drop, long& evals) {
  const int n = F.n;
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < n; ++i) {
    std::vector<double> d(n, 0.0);
    d[i] = 1.0;
    dirs.push_back(d);
    d[i] = -1.0;
    dirs.push_back(d);
  }
  if (n > 1)
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<double> d(n);
      for (int i = 0; i < n; ++i) d[i] = (mask >> i & 1) ? 1.0 : -1.0;
      dirs.push_back(d);
    }
  Box b;
  b.lo.assign(tstar.begin(), tstar.end());
  b.hi.assign(tstar.begin(), tstar.end());
  for (const auto& d : dirs) {
    double r = ray_radius(F, tstar, fstar, d, drop, evals);
    for (int i = 0; i < n; ++i) {
      b.lo[i] = std::min(b.lo[i], tstar[i] + r * d[i]);
      b.hi[i] = std::max(b.hi[i], tstar[i] + r * d[i]);
    }
  }
  return b;
}

inline double simpson_panel(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth, long& evals) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  evals += 2;
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double split = left + right;
  if (depth >= 42 || std::fabs(split - whole) <= 15.0 * tol)
    return split + (split - whole) / 15.0;
  return simpson_panel(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, evals) +
         simpson_panel(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, evals);
}

inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, long& evals) {
  const int panels = 12;
  double h = (b - a) / panels;
  KahanSum total;
  for (int k = 0; k < panels; ++k) {
    double pa = a + k * h, pb = a + (k + 1) * h, pm = 0.5 * (pa + pb);
    double fa = f(pa), fm = f(pm), fb = f(pb);
    evals += 3;
    double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    total.add(simpson_panel(f, pa, pb, fa, fm, fb, whole, abs_tol / panels, 0, evals));
  }
  return total.get();
}

// integral over the box of exp(F - fstar), deterministic, n <= 2
inline double integrate_det(const ConcaveExponent& F, double fstar, const Box& b,
                            double abs_tol, long& evals) {
  if (F.n == 1) {
    auto f = [&](double x) {
      return std::exp(F.value({x}) - fstar);
    };
    return integrate_1d(f, b.lo[0], b.hi[0], abs_tol, evals);
  }
  double wx = b.hi[0] - b.lo[0];
  double inner_tol = abs_tol / (3.0 * wx);
  auto row = [&](double x) {
    auto f = [&](double y) {
      return std::exp(F.value({x, y}) - fstar);
    };
    return integrate_1d(f, b.lo[1], b.hi[1], inner_tol, evals);
  };
  return integrate_1d(row, b.lo[0], b.hi[0], abs_tol * (2.0 / 3.0), evals);
}

// ---- n = 3 Monte Carlo with a Student-t proposal ----
//
// The Laplace Gaussian has lighter tails than the integrand in the small-eps
// regime (linear decay of the exponent), which would make importance weights
// heavy-tailed; a multivariate t proposal with modest degrees of freedom
// keeps the weight distribution bounded in practice.

struct SplitRng {
  std::uint64_t s;
  explicit SplitRng(std::uint64_t seed) : s(seed) {}
  double uniform() {  // in (0,1), reproducible across platforms
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1p-53;
  }
  void normal_pair(double& g1, double& g2) {
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    g1 = r * std::cos(2.0 * M_PI * u2);
    g2 = r * std::sin(2.0 * M_PI * u2);
  }
};

inline double integrate_mc3(const ConcaveExponent& F, const std::vector<double>& tstar,
                            double fstar, const std::vector<double>& hess,
                            const QuadOptions& opt, long& evals, double& std_error) {
  const int n = 3, nu = 6;
  const double scale = 1.7;
  // Cholesky of -H (SPD since the exponent is strictly concave at the max).
  std::vector<double> B(hess.size());
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += -hess[static_cast<size_t>(i) * n + i];
  for (size_t k = 0; k < hess.size(); ++k) B[k] = -hess[k];
  for (int i = 0; i < n; ++i) B[static_cast<size_t>(i) * n + i] += 1e-12 * std::max(tr, 1.0);
  std::vector<double> L(9, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = B[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) s -= L[static_cast<size_t>(i) * n + k] * L[static_cast<size_t>(j) * n + k];
      if (i == j) {
        require(s > 0.0, "NoConvergence", "Hessian at the maximum is not negative definite");
        L[static_cast<size_t>(i) * n + j] = std::sqrt(s);
      } else {
        L[static_cast<size_t>(i) * n + j] = s / L[static_cast<size_t>(j) * n + j];
      }
    }
  double logdetL = std::log(L[0]) + std::log(L[4]) + std::log(L[8]);
  double log_c =
      std::lgamma(0.5 * (nu + n)) - std::lgamma(0.5 * nu) - 0.5 * n * std::log(nu * M_PI);

  SplitRng rng(opt.seed);
  KahanSum mean, sq;
  for (long it = 0; it < opt.mc_samples; ++it) {
    double z[4], chi[6];
    rng.normal_pair(z[0], z[1]);
    rng.normal_pair(z[2], z[3]);
    rng.normal_pair(chi[0], chi[1]);
    rng.normal_pair(chi[2], chi[3]);
    rng.normal_pair(chi[4], chi[5]);
    double w2 = 0.0;
    for (double c : chi) w2 += c * c;
    double mult = std::sqrt(nu / std::max(w2, 1e-12));
    double g[3] = {z[0] * mult, z[1] * mult, z[2] * mult};
    // t = tstar + scale * L^{-T} g
    std::vector<double> t(tstar);
    double x[3];
    for (int i = n - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < n; ++k) s -= L[static_cast<size_t>(k) * n + i] * x[k];
      x[i] = s / L[static_cast<size_t>(i) * n + i];
    }
    for (int i = 0; i < n; ++i) t[i] += scale * x[i];
    double gt2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
    double log_pdf =
        log_c - 0.5 * (nu + n) * std::log1p(gt2 / nu) + logdetL - n * std::log(scale);
    double fw = F.value(t);
    ++evals;
    double w = std::exp(fw - fstar - log_pdf);
    mean.add(w);
    sq.add(w * w);
  }
  double m = mean.get() / opt.mc_samples;
  double var = std::max(0.0, sq.get() / opt.mc_samples - m * m);
  std_error = std::sqrt(var / opt.mc_samples);
  return m;
}

// Shared driver: maximize, truncate, integrate, then verify the truncation by
// enlarging the box until the value is stable.
inline double integrate_exponent(const ConcaveExponent& F, double outer_scale,
                                 const QuadOptions& opt, long& evals, double& std_error) {
  std_error = 0.0;
  std::vector<double> tstar;
  require(maximize_concave(F, tstar, evals), "NoConvergence",
          "interior maximum of the exponent not found");
  double fstar = F.value(tstar);
  ++evals;
  std::vector<double> g, h;
  F.derivs(tstar, g, h);

  if (F.n == 3) {
    double pre = std::exp(fstar) * outer_scale;
    double val = integrate_mc3(F, tstar, fstar, h, opt, evals, std_error);
    std_error *= pre;
    return pre * val;
  }

  double rel = opt.rel_tol > 0 ? opt.rel_tol : (F.n == 1 ? 1e-9 : 3e-9);
  // Laplace value as the initial scale for the absolute tolerance; replaced
  // by the measured integral if they disagree badly.
  double dh = det_dense(F.n, [&] {
    std::vector<double> neg(h.size());
    for (size_t k = 0; k < h.size(); ++k) neg[k] = -h[k];
    return neg;
  }());
  double est = std::pow(2.0 * M_PI, 0.5 * F.n) / std::sqrt(std::max(dh, 1e-300));

  Box box = truncation_box(F, tstar, fstar, opt.drop, evals);
  double result = 0.0;
  for (int pass = 0; pass < 4; ++pass) {
    double abs_tol = rel * est * 0.5;
    result = integrate_det(F, fstar, box, abs_tol, evals);
    require(std::isfinite(result) && result > 0.0, "NoConvergence",
            "quadrature produced a non-finite value");
    if (abs_tol <= 1.02 * rel * result) break;
    est = result;  // tolerance was too loose relative to the true value
  }
  // Monotone truncation check: growing the box must not move the result.
  for (int grow = 0;; ++grow) {
    Box big;
    big.lo.resize(F.n);
    big.hi.resize(F.n);
    for (int i = 0; i < F.n; ++i) {
      double c = 0.5 * (box.lo[i] + box.hi[i]), w = 0.5 * (box.hi[i] - box.lo[i]);
      big.lo[i] = c - 1.6 * w;
      big.hi[i] = c + 1.6 * w;
    }
    double check = integrate_det(F, fstar, big, rel * result * 0.5, evals);
    if (std::fabs(check - result) <= 8.0 * rel * std::fabs(check)) {
      result = check;
      break;
    }
    require(grow < opt.max_enlarge, "NoConvergence",
            "truncation region kept growing (epsilon too small for this budget)");
    box = big;
    result = check;
  }
  return outer_scale * std::exp(fstar) * result;
}

// Neville tableau evaluated at 0; returns the diagonal (degree-k extrapolants).
inline std::vector<double> neville_zero(const std::vector<double>& xs,
                                        const std::vector<double>& ys) {
  size_t m = xs.size();
  std::vector<std::vector<double>> tab(m);
  tab[0] = ys;
  for (size_t j = 1; j < m; ++j) {
    tab[j].resize(m - j);
    for (size_t i = 0; i + j < m; ++i)
      tab[j][i] =
          (xs[i] * tab[j - 1][i + 1] - xs[i + j] * tab[j - 1][i]) / (xs[i] - xs[i + j]);
  }
  std::vector<double> diag(m);
  for (size_t j = 0; j < m; ++j) diag[j] = tab[j][0];
  return diag;
}

// A usable tableau has its last diagonal increment no worse than a modest
// multiple of the previous one (or negligibly small next to the limit).
// Returns the error estimate |last increment| on success.
inline double require_convergent_diag(const std::vector<double>& diag) {
  size_t m = diag.size();
  double last = std::fabs(diag[m - 1] - diag[m - 2]);
  if (m >= 3) {
    double prev = std::fabs(diag[m - 2] - diag[m - 3]);
    require(!(last > 4.0 * prev + 1e-12 && last > 0.05 * std::fabs(diag[m - 1])),
            "DivergentTable", "extrapolants oscillate; schedule unusable");
  }
  return last;
}

}  // namespace quad_detail

inline void validate_stringy_inputs(const std::vector<LaurentPoly>& qs, const RatVec& v,
                                    const RatVec& u) {
  require(!qs.empty(), "EmptyPolynomial", "need at least one factor");
  require(qs.size() == v.size(), "DimMismatch", "one weight per factor required");
  const int n = qs.front().dim;
  require(static_cast<int>(u.size()) == n, "DimMismatch", "u must have length n");
  for (const LaurentPoly& q : qs) {
    require(q.dim == n, "DimMismatch", "factors must share one variable set");
    require(q.all_coeffs_positive(), "NonPositiveCoefficient",
            "factor coefficients must be positive on the integration domain");
  }
  for (const Rat& w : v) require(w > 0, "NonPositiveWeight", "factor weights must be positive");
}

// eps^n times the integral over R^n of exp(eps*[<u,t> - sum v_j log q_j(e^t)]),
// i.e. the torus integral of (x^u prod q_j^{-v_j})^eps against dlog coordinates.
// Deterministic adaptive quadrature for n <= 2; importance-sampled Monte Carlo
// with a reported standard error for n = 3.
inline double eval_stringy(const std::vector<LaurentPoly>& qs, const RatVec& v, const RatVec& u,
                           double eps, const QuadOptions& opt = {},
                           long* evaluations = nullptr, double* std_error = nullptr) {
  validate_stringy_inputs(qs, v, u);
  const int n = qs.front().dim;
  require(n >= 1 && n <= 3, "DimMismatch", "numerical evaluation supports 1 <= n <= 3");
  require(eps > 0.0, "NonPositiveWeight", "epsilon must be positive");

  std::vector<Polytope> parts;
  parts.reserve(qs.size());
  for (const LaurentPoly& q : qs) parts.push_back(newton_polytope(q));
  Polytope P = weighted_minkowski(parts, v);
  require(contains_interior(P, u), "NotInterior",
          "u must lie in the interior of the weighted Newton polytope");

  quad_detail::StringyExponent F(qs, v, u, eps);
  long evals = 0;
  double se = 0.0;
  double value =
      quad_detail::integrate_exponent(F, std::pow(eps, n), opt, evals, se);
  if (evaluations) *evaluations += evals;
  if (std_error) *std_error = se;
  return value;
}

// Runs eval_stringy over a decreasing schedule and extrapolates to 0 with a
// Neville tableau in integer powers of eps (degree = schedule length - 1).
inline QuadratureReport extrapolate_amplitude(const std::vector<LaurentPoly>& qs,
                                              const RatVec& v, const RatVec& u,
                                              const std::vector<double>& schedule,
                                              const QuadOptions& opt = {}) {
  require(schedule.size() >= 3, "InvalidSchedule", "schedule needs at least 3 entries");
  for (size_t i = 0; i < schedule.size(); ++i) {
    require(schedule[i] > 0.0, "InvalidSchedule", "schedule entries must be positive");
    require(i == 0 || schedule[i] < schedule[i - 1], "InvalidSchedule",
            "schedule must be strictly decreasing");
  }
  QuadratureReport rep;
  rep.epsilon_schedule = schedule;
  double max_se = 0.0;
  for (double eps : schedule) {
    double se = 0.0;
    rep.values.push_back(eval_stringy(qs, v, u, eps, opt, &rep.evaluations, &se));
    max_se = std::max(max_se, se);
  }
  std::vector<double> diag = quad_detail::neville_zero(schedule, rep.values);
  rep.extrapolated = diag[diag.size() - 1];
  rep.error_estimate = quad_detail::require_convergent_diag(diag) + max_se;
  return rep;
}

namespace quad_detail {

// Exact cone tests for the exponential integral (n <= 2): the nonconstant
// exponents must span a pointed full-dimensional cone with X in its interior.
inline void check_exponential_cone(const LaurentPoly& p, const RatVec& X) {
  const int n = p.dim;
  std::vector<Expo> gens;
  for (const auto& [e, c] : p.terms) {
    bool zero = true;
    for (long x : e) zero = zero && x == 0;
    if (!zero) gens.push_back(e);
    require(c > 0, "NonPositiveCoefficient", "exponential integrand needs positive terms");
  }
  require(!gens.empty(), "NotPointed", "no nonconstant exponents: cone is trivial");
  if (n == 1) {
    int s = gens[0][0] > 0 ? 1 : -1;
    for (const Expo& a : gens)
      require((a[0] > 0 ? 1 : -1) == s, "NotPointed", "exponent cone is a full line");
    require((X[0] > 0 ? 1 : -1) == s && X[0] != 0, "NotInterior",
            "X must lie strictly inside the exponent cone");
    return;
  }
  require(n == 2, "DimMismatch", "exponential integral supports n <= 2");
  // Explicit value return types: without them these lambdas would hand back
  // the lazy GMP expression object, which keeps references to the Int
  // temporaries that die at the end of the return statement.
  auto cross = [](const Expo& a, const Expo& b) -> Int {
    return Int(a[0]) * Int(b[1]) - Int(a[1]) * Int(b[0]);
  };
  auto dotl = [](const Expo& a, const Expo& b) -> Int {
    return Int(a[0]) * Int(b[0]) + Int(a[1]) * Int(b[1]);
  };
  // full-dimensional?
  bool full = false;
  for (size_t i = 0; i < gens.size() && !full; ++i)
    for (size_t j = i + 1; j < gens.size() && !full; ++j) full = cross(gens[i], gens[j]) != 0;
  require(full, "NotPointed", "exponent cone is not full-dimensional");
  // clockwise-most and counterclockwise-most generators
  int cw = -1, ccw = -1;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool all_left = true, all_right = true;
    for (size_t j = 0; j < gens.size(); ++j) {
      Int cr = cross(gens[i], gens[j]);
      if (cr < 0) all_left = false;
      if (cr > 0) all_right = false;
      if (cr == 0 && dotl(gens[i], gens[j]) < 0) all_left = all_right = false;
    }
    if (all_left) cw = static_cast<int>(i);
    if (all_right) ccw = static_cast<int>(i);
  }
  require(cw >= 0 && ccw >= 0, "NotPointed", "exponent cone contains a line");
  // X strictly inside: counterclockwise of the clockwise-most ray and
  // clockwise of the counterclockwise-most one, both strictly.
  Rat cx = Rat(gens[cw][0]) * X[1] - Rat(gens[cw][1]) * X[0];
  Rat xc = X[0] * Rat(gens[ccw][1]) - X[1] * Rat(gens[ccw][0]);
  require(cx > 0 && xc > 0, "NotInterior", "X must lie strictly inside the exponent cone");
}

}  // namespace quad_detail

// alpha^n times the integral over R^n of exp(-p(e^t) + alpha<X,t>).  As alpha
// tends to 0 this approaches exp(-constant term of p) times the normalized
// volume of the dual cone sliced at <X, .> = 1.
inline double eval_exponential(const LaurentPoly& p, const RatVec& X, double alpha,
                               const QuadOptions& opt = {}, long* evaluations = nullptr) {
  require(p.dim >= 1 && p.dim <= 2, "DimMismatch", "exponential integral supports n <= 2");
  require(static_cast<int>(X.size()) == p.dim, "DimMismatch", "X must have length n");
  require(alpha > 0.0, "NonPositiveWeight", "alpha must be positive");
  quad_detail::check_exponential_cone(p, X);
  quad_detail::ExponentialExponent F(p, X, alpha);
  long evals = 0;
  double se = 0.0;
  double value =
      quad_detail::integrate_exponent(F, std::pow(alpha, p.dim), opt, evals, se);
  if (evaluations) *evaluations += evals;
  return value;
}

inline QuadratureReport extrapolate_exponential(const LaurentPoly& p, const RatVec& X,
                                                const std::vector<double>& schedule,
                                                const QuadOptions& opt = {}) {
  require(schedule.size() >= 3, "InvalidSchedule", "schedule needs at least 3 entries");
  for (size_t i = 1; i < schedule.size(); ++i)
    require(schedule[i] < schedule[i - 1] && schedule[i] > 0.0, "InvalidSchedule",
            "schedule must be positive and strictly decreasing");
  QuadratureReport rep;
  rep.epsilon_schedule = schedule;
  for (double a : schedule)
    rep.values.push_back(eval_exponential(p, X, a, opt, &rep.evaluations));
  std::vector<double> diag = quad_detail::neville_zero(schedule, rep.values);
  rep.extrapolated = diag.back();
  rep.error_estimate = quad_detail::require_convergent_diag(diag);
  return rep;
}

// alpha * integral_0^1 of exp(-1/xi) xi^(alpha Z) dxi/xi, the n = 1 vanishing
// limit: in s = -log xi this is alpha * int_0^inf exp(-e^s - alpha Z s) ds.
inline double zl2_value(double alpha, double Z, const QuadOptions& opt = {}) {
  require(alpha > 0.0 && Z > 0.0, "NonPositiveWeight", "alpha and Z must be positive");
  long evals = 0;
  auto f = [&](double s) {
    return std::exp(-std::exp(s) - alpha * Z * s);
  };
  double rel = opt.rel_tol > 0 ? opt.rel_tol : 1e-10;
  // the e^{-e^s} factor is ~1e-1300 by s = 8, so a fixed window suffices
  double body = quad_detail::integrate_1d(f, 0.0, 8.0, rel, evals);
  return alpha * body;
}

}  // namespace amp
