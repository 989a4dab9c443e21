#pragma once

#include <map>
#include <string>
#include <vector>

#include "amp/error.hpp"
#include "amp/intmat.hpp"
#include "amp/rational.hpp"

namespace amp {

// One normal-crossing intersection point of the divisor, with the residue of
// the connection (a nonzero scalar, or the invertible commuting product for
// higher-rank data) and the residues of every cohomology class of interest.
// Scalar-case form residues are stored as length-1 vectors so both cases share
// a shape; in the matrix case form_a residues act as row vectors and form_b
// residues as column vectors under the duality bracket.
struct SncPoint {
  std::string id;
  bool matrix_case = false;
  Rat conn_scalar = 0;
  RatMat conn_matrix;
  std::map<std::string, RatVec> residues;
};

// Normalized intersection pairing <w+, w->_ch / (2 pi i)^n as the sum over
// intersection points of <Res(w+) | Res(conn)^{-1} | Res(w-)>.  Staying with
// the normalized value keeps every output inside the field generated by the
// inputs, i.e. exact rationals here.
inline Rat pairing_from_residues(const std::vector<SncPoint>& points,
                                 const std::string& form_a, const std::string& form_b) {
  Rat total = 0;
  for (const SncPoint& p : points) {
    auto ita = p.residues.find(form_a);
    auto itb = p.residues.find(form_b);
    require(ita != p.residues.end() && itb != p.residues.end(), "DimMismatch",
            "every point must carry residues for both forms (zero residues explicit)");
    const RatVec& a = ita->second;
    const RatVec& b = itb->second;
    if (!p.matrix_case) {
      require(a.size() == 1 && b.size() == 1, "DimMismatch",
              "scalar point expects scalar residues");
      require(p.conn_scalar != 0, "SingularResidue",
              "connection residue vanishes at point " + p.id);
      total += a[0] * b[0] / p.conn_scalar;
    } else {
      require(p.conn_matrix.rows == p.conn_matrix.cols, "DimMismatch",
              "connection residue matrix must be square");
      const int m = p.conn_matrix.rows;
      require(static_cast<int>(a.size()) == m && static_cast<int>(b.size()) == m,
              "DimMismatch", "residue vector length must match connection rank");
      RatMat inv;
      try {
        inv = rat_inverse(p.conn_matrix);
      } catch (const Error&) {
        fail("SingularResidue", "connection residue matrix singular at point " + p.id);
      }
      // duality bracket: (row a) * inv * (column b)
      Rat term = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) term += a[i] * inv.at(i, j) * b[j];
      total += term;
    }
  }
  return total;
}

}  // namespace amp
