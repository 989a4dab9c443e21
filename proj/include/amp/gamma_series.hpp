#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "amp/amplitude.hpp"
#include "amp/cayley.hpp"
#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/laurent.hpp"
#include "amp/rational.hpp"
#include "amp/triangulate.hpp"

namespace amp {

// Truncated hypergeometric series attached to one unimodular simplex of a
// Cayley configuration: base exponent v solves A v = -delta with support on
// sigma, and the sum runs over kernel-lattice shifts w with |w|_1 bounded by
// truncation_order.
struct GammaSeries {
  CayleyConfig config;
  std::vector<int> sigma;  // column indices, 0-based
  RatVec delta;
  RatVec base;  // v_sigma^0 for delta, length N
  int truncation_order = 0;
};

namespace gs_detail {

inline RatVec base_exponent(const CayleyConfig& cfg, const std::vector<int>& sigma,
                            const RatVec& delta) {
  const int d = cfg.config.dim;
  require(static_cast<int>(sigma.size()) == d, "DimMismatch",
          "simplex must have n+e columns");
  require(static_cast<int>(delta.size()) == d, "DimMismatch", "delta must have n+e entries");
  IntMat a_sigma = cfg.config.submatrix(sigma);
  Int det = det_int(a_sigma);
  require(det == 1 || det == -1, "NonUnimodular",
          "only unimodular simplices are supported");
  RatVec a = solve_exact(a_sigma, delta);  // entries of A_sigma^{-1} delta
  for (const Rat& x : a)
    require(!is_integer(x), "IntegralParameter",
            "delta has an integral coordinate in this simplex chart");
  RatVec v(cfg.config.count(), Rat(0));
  for (size_t i = 0; i < sigma.size(); ++i) v[sigma[i]] = -a[i];
  return v;
}

inline double recip_gamma(double x) {
  double r = std::round(x);
  if (std::fabs(x - r) < 1e-9 && r <= 0.0) return 0.0;
  return 1.0 / std::tgamma(x);
}

inline Cplx cpow(const Cplx& z, double p) {
  if (z.imag() == 0.0 && z.real() > 0.0) return Cplx(std::pow(z.real(), p), 0.0);
  return std::pow(z, Cplx(p, 0.0));
}

// Kernel-lattice points with |w|_1 <= order, enumerated deterministically:
// coefficient vectors over the kernel basis in odometer order, filtered by the
// 1-norm bound.  The coefficient box |c_i| <= 3*order is generous enough for
// the primitive bases produced here.
inline std::vector<IntVec> lattice_points(const IntMat& kernel, int order) {
  std::vector<IntVec> out;
  const int r = kernel.cols, rows = kernel.rows;
  if (r == 0) {
    out.emplace_back(rows, Int(0));
    return out;
  }
  const long bound = 3L * order;
  std::vector<long> c(r, -bound);
  while (true) {
    IntVec w(rows, Int(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < r; ++j) w[i] += Int(c[j]) * kernel.at(i, j);
    Int norm1 = 0;
    for (const Int& x : w) norm1 += abs(x);
    if (norm1 <= order) out.push_back(std::move(w));
    int pos = r - 1;
    while (pos >= 0 && c[pos] == bound) c[pos--] = -bound;
    if (pos < 0) break;
    ++c[pos];
  }
  return out;
}

}  // namespace gs_detail

inline GammaSeries make_gamma_series(const CayleyConfig& cfg, const std::vector<int>& sigma,
                                     const RatVec& delta, int order) {
  require(order >= 0, "InvalidSchedule", "truncation order must be nonnegative");
  GammaSeries s;
  s.config = cfg;
  s.sigma = sigma;
  s.delta = delta;
  s.base = gs_detail::base_exponent(cfg, sigma, delta);
  s.truncation_order = order;
  return s;
}

// phi_v(z) = sum over kernel-lattice w of z^{w+v} / prod Gamma(1 + w_i + v_i),
// truncated at |w|_1 <= order.  Poles of the Gamma factors are detected with
// exact rational arithmetic: any entry of w + v at a nonpositive integer kills
// the term, which is what confines the sum to w >= 0 off sigma.
inline Cplx phi_eval(const GammaSeries& s, const std::vector<Cplx>& z, const RatVec& delta) {
  const int N = s.config.config.count();
  require(static_cast<int>(z.size()) == N, "DimMismatch", "z must have one entry per column");
  for (const Cplx& x : z)
    require(std::abs(x) > 0.0, "DimMismatch", "z must be componentwise nonzero");
  RatVec v = (delta == s.delta) ? s.base : gs_detail::base_exponent(s.config, s.sigma, delta);

  IntMat kernel = kernel_lattice(s.config.config.matrix());
  std::vector<IntVec> ws = gs_detail::lattice_points(kernel, s.truncation_order);

  Cplx total(0.0, 0.0);
  for (const IntVec& w : ws) {
    bool dead = false;
    for (int i = 0; i < N && !dead; ++i) {
      Rat arg = Rat(w[i]) + v[i] + 1;
      if (is_integer(arg) && arg <= 0) dead = true;
    }
    if (dead) continue;
    Cplx term(1.0, 0.0);
    for (int i = 0; i < N; ++i) {
      double e = to_double(Rat(w[i]) + v[i]);
      term *= gs_detail::cpow(z[i], e);
      term *= gs_detail::recip_gamma(1.0 + e);
    }
    total += term;
  }
  return total;
}

// Common-domain membership: for every simplex of T and every column j outside
// it, |z_sigma^{-A_sigma^{-1} a(j)} z_j| must stay strictly below R.
inline bool in_U_T(const CayleyConfig& cfg, const Triangulation& t,
                   const std::vector<Cplx>& z, double R) {
  require(R > 0.0, "NonPositiveWeight", "domain radius must be positive");
  const int N = cfg.config.count();
  require(static_cast<int>(z.size()) == N, "DimMismatch", "z must have one entry per column");
  for (const std::vector<int>& sigma : t.simplices) {
    IntMat a_sigma = cfg.config.submatrix(sigma);
    for (int j = 0; j < N; ++j) {
      if (std::find(sigma.begin(), sigma.end(), j) != sigma.end()) continue;
      RatVec col(cfg.config.dim);
      for (int r = 0; r < cfg.config.dim; ++r) col[r] = Rat(cfg.config.points[j][r]);
      RatVec beta = solve_exact(a_sigma, col);
      double mag = std::abs(z[j]);
      for (size_t i = 0; i < sigma.size(); ++i)
        mag *= std::pow(std::abs(z[sigma[i]]), -to_double(beta[i]));
      if (!(mag < R)) return false;
    }
  }
  return true;
}

struct GhmResult {
  Rat lhs = 0;
  Cplx rhs{0.0, 0.0};
  double rel_err = 0.0;
};

// Numeric check of the series-product identity for the amplitude: the exact
// value against  v_1...v_e * sum_sigma prod_i [pi / sin(pi a_i)] *
// phi_{sigma,0}(z; delta) * phi_{sigma,0}(z; -delta)  with a = A_sigma^{-1}delta,
// truncated at the given order.  Restricted to unimodular triangulations.
inline GhmResult ghm_identity_check(const std::vector<LaurentPoly>& qs, const RatVec& v,
                                    const RatVec& u, const std::vector<Cplx>& z,
                                    const Triangulation& t, int order, double R = 0.25) {
  CayleyConfig cfg = build_cayley(qs);
  RatVec delta = assemble_delta(v, u);
  RatVec neg_delta(delta.size());
  for (size_t i = 0; i < delta.size(); ++i) neg_delta[i] = -delta[i];

  for (const std::vector<int>& sigma : t.simplices) {
    Int det = det_int(cfg.config.submatrix(sigma));
    require(det == 1 || det == -1, "NonUnimodular",
            "identity check requires a unimodular triangulation");
  }
  require(in_U_T(cfg, t, z, R), "NotInDomain",
          "z lies outside the common convergence domain of the series");

  GhmResult res;
  res.lhs = amplitude_triangulation(cfg, delta, t).value;

  Rat vprod = 1;
  for (const Rat& w : v) vprod *= w;
  Cplx sum(0.0, 0.0);
  for (const std::vector<int>& sigma : t.simplices) {
    RatVec a = solve_exact(cfg.config.submatrix(sigma), delta);
    double weight = 1.0;
    for (const Rat& ai : a) {
      require(!is_integer(ai), "IntegralParameter",
              "delta has an integral coordinate in a simplex chart");
      weight *= M_PI / std::sin(M_PI * to_double(ai));
    }
    GammaSeries s = make_gamma_series(cfg, sigma, delta, order);
    Cplx plus = phi_eval(s, z, delta);
    Cplx minus = phi_eval(s, z, neg_delta);
    sum += weight * plus * minus;
  }
  res.rhs = to_double(vprod) * sum;

  double lhs_d = to_double(res.lhs);
  double denom = std::abs(lhs_d) > 0.0 ? std::abs(lhs_d) : 1.0;
  res.rel_err = std::abs(res.rhs - Cplx(lhs_d, 0.0)) / denom;
  return res;
}

// Exact degree, against the lift defining the triangulation, of the order-k
// tail of the product phi(z;delta)*phi(z;-delta) relative to its leading term:
// <omega, v_sigma^k(delta) + v_sigma^k(-delta)> = 2<omega, w_k> where w_k is
// the kernel element with off-sigma part k.  Zero iff k = 0; positive for the
// contributing shifts (k >= 0 componentwise, nonzero).
inline Rat series_degree(const CayleyConfig& cfg, const std::vector<long>& lift,
                         const std::vector<int>& sigma, const std::vector<long>& k_off) {
  const int d = cfg.config.dim, N = cfg.config.count();
  require(static_cast<int>(lift.size()) == N, "DimMismatch", "one lift entry per column");
  std::vector<int> comp;
  for (int j = 0; j < N; ++j)
    if (std::find(sigma.begin(), sigma.end(), j) == sigma.end()) comp.push_back(j);
  require(k_off.size() == comp.size(), "DimMismatch",
          "k must have one entry per column outside the simplex");
  // right-hand side -A_sigma_bar * k
  RatVec rhs(d, Rat(0));
  for (size_t c = 0; c < comp.size(); ++c)
    for (int r = 0; r < d; ++r) rhs[r] -= Rat(cfg.config.points[comp[c]][r]) * Rat(k_off[c]);
  RatVec on_sigma = solve_exact(cfg.config.submatrix(sigma), rhs);
  Rat deg = 0;
  for (size_t i = 0; i < sigma.size(); ++i) deg += Rat(lift[sigma[i]]) * on_sigma[i];
  for (size_t c = 0; c < comp.size(); ++c) deg += Rat(lift[comp[c]]) * Rat(k_off[c]);
  return deg * 2;
}

}  // namespace amp
