#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "amp/error.hpp"
#include "amp/rational.hpp"

namespace amp {

// Dense integer / rational matrices, row-major.  Desk scale: everything here
// is exact, no floating point.

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  IntMat transposed() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

inline IntMat mul(const IntMat& x, const IntMat& y) {
  require(x.cols == y.rows, "DimMismatch", "matrix product shape mismatch");
  IntMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return z;
}

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.at(i, j) = Rat(m.at(i, j));
  return r;
}

// Fraction-free Bareiss determinant.  Exact, no rational intermediates; the
// intermediate entries stay minors of the input so they do not blow up the way
// naive elimination would.
inline Int det_int(IntMat m) {
  require(m.rows == m.cols, "NonSquare", "determinant needs a square matrix");
  const int n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = t;
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

// Determinant of a rational matrix by clearing each row to integers.
inline Rat det_rat(const RatMat& m) {
  require(m.rows == m.cols, "NonSquare", "determinant needs a square matrix");
  const int n = m.rows;
  IntMat z(n, n);
  Int scale = 1;
  for (int i = 0; i < n; ++i) {
    RatVec row(m.a.begin() + static_cast<size_t>(i) * n,
               m.a.begin() + static_cast<size_t>(i + 1) * n);
    Int l = common_denominator(row);
    for (int j = 0; j < n; ++j) {
      Rat e = m.at(i, j) * Rat(l);
      z.at(i, j) = e.get_num();  // denominator is 1 by construction
    }
    scale *= l;
  }
  return rat(det_int(z), scale);
}

// Gaussian elimination over Q with partial pivoting by first nonzero.
// Returns the unique solution of m x = b; Singular if none/many.
inline RatVec rat_solve(RatMat m, RatVec b) {
  require(m.rows == m.cols, "NonSquare", "solve needs a square matrix");
  const int n = m.rows;
  require(static_cast<int>(b.size()) == n, "DimMismatch", "rhs length mismatch");
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (m.at(i, k) != 0) {
        p = i;
        break;
      }
    require(p >= 0, "Singular", "matrix is singular");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      std::swap(b[k], b[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      if (m.at(i, k) == 0) continue;
      Rat f = m.at(i, k) / m.at(k, k);
      m.at(i, k) = 0;
      for (int j = k + 1; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
      b[i] -= f * b[k];
    }
  }
  RatVec x(n, Rat(0));
  for (int i = n - 1; i >= 0; --i) {
    Rat s = b[i];
    for (int j = i + 1; j < n; ++j) s -= m.at(i, j) * x[j];
    x[i] = s / m.at(i, i);
  }
  return x;
}

inline RatVec solve_exact(const IntMat& m, const RatVec& b) {
  return rat_solve(to_rat(m), b);
}

inline int rat_rank(RatMat m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(p, j));
    for (int i = r + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(r, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

inline RatMat rat_inverse(const RatMat& m) {
  require(m.rows == m.cols, "NonSquare", "inverse needs a square matrix");
  const int n = m.rows;
  RatMat inv(n, n);
  for (int j = 0; j < n; ++j) {
    RatVec e(n, Rat(0));
    e[j] = 1;
    RatVec col = rat_solve(m, e);  // throws Singular if not invertible
    for (int i = 0; i < n; ++i) inv.at(i, j) = col[i];
  }
  return inv;
}

struct SmithResult {
  IntMat U, S, V;  // U * input * V == S, with U and V unimodular
};

// Smith normal form by elementary moves.  Pivot choice: the nonzero entry of
// smallest absolute value in the remaining block, which keeps intermediate
// entries tame at this scale.
inline SmithResult smith_normal_form(const IntMat& input) {
  IntMat S = input;
  IntMat U = IntMat::identity(S.rows);
  IntMat V = IntMat::identity(S.cols);

  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < S.cols; ++c) std::swap(S.at(i, c), S.at(j, c));
    for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < S.rows; ++r) std::swap(S.at(r, i), S.at(r, j));
    for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
  };
  auto row_addmul = [&](int dst, int src, const Int& f) {  // row dst += f * row src
    if (f == 0) return;
    for (int c = 0; c < S.cols; ++c) S.at(dst, c) += f * S.at(src, c);
    for (int c = 0; c < U.cols; ++c) U.at(dst, c) += f * U.at(src, c);
  };
  auto col_addmul = [&](int dst, int src, const Int& f) {
    if (f == 0) return;
    for (int r = 0; r < S.rows; ++r) S.at(r, dst) += f * S.at(r, src);
    for (int r = 0; r < V.rows; ++r) V.at(r, dst) += f * V.at(r, src);
  };
  auto row_negate = [&](int i) {
    for (int c = 0; c < S.cols; ++c) S.at(i, c) = -S.at(i, c);
    for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
  };

  const int steps = std::min(S.rows, S.cols);
  for (int t = 0; t < steps; ++t) {
    // locate smallest-magnitude nonzero pivot in the trailing block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < S.rows; ++i)
      for (int j = t; j < S.cols; ++j) {
        if (S.at(i, j) == 0) continue;
        Int m = ::abs(S.at(i, j));
        if (pi < 0 || m < best) {
          best = m;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    row_swap(t, pi);
    col_swap(t, pj);

    for (bool clean = false; !clean;) {
      clean = true;
      for (int i = t + 1; i < S.rows; ++i) {
        if (S.at(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), S.at(i, t).get_mpz_t(), S.at(t, t).get_mpz_t());
        row_addmul(i, t, -q);
        if (S.at(i, t) != 0) {  // remainder smaller than pivot: promote it
          row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < S.cols; ++j) {
        if (S.at(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), S.at(t, j).get_mpz_t(), S.at(t, t).get_mpz_t());
        col_addmul(j, t, -q);
        if (S.at(t, j) != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility sweep: every entry of the trailing block must be a
      // multiple of the pivot, else fold its row in and restart reduction
      for (int i = t + 1; i < S.rows && clean; ++i)
        for (int j = t + 1; j < S.cols && clean; ++j)
          if (S.at(i, j) % S.at(t, t) != 0) {
            row_addmul(t, i, Int(1));
            clean = false;
          }
    }
    if (S.at(t, t) < 0) row_negate(t);
  }
  return {U, S, V};
}

inline IntVec smith_diagonal(const IntMat& s) {
  IntVec d;
  for (int i = 0; i < std::min(s.rows, s.cols); ++i) d.push_back(s.at(i, i));
  return d;
}

inline bool is_unimodular(const IntMat& m) {
  if (m.rows != m.cols) return false;
  Int d = det_int(m);
  return d == 1 || d == -1;
}

// Basis (as columns) of the full integer kernel {k : m k = 0}.  Derived from
// the Smith form: with U m V = S, the kernel is spanned by the columns of V
// whose Smith diagonal entry vanishes.  V unimodular makes the basis primitive
// and saturated (it generates kernel(m) over Z, not a finite-index sublattice).
inline IntMat kernel_lattice(const IntMat& m) {
  SmithResult snf = smith_normal_form(m);
  std::vector<int> free_cols;
  const int mind = std::min(m.rows, m.cols);
  for (int j = 0; j < m.cols; ++j)
    if (j >= mind || snf.S.at(j, j) == 0) free_cols.push_back(j);
  IntMat basis(m.cols, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k)
    for (int i = 0; i < m.cols; ++i) basis.at(i, static_cast<int>(k)) = snf.V.at(i, free_cols[k]);
  return basis;
}

inline std::string to_string(const IntMat& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < m.cols; ++j) {
      if (j) s += ",";
      s += m.at(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace amp
