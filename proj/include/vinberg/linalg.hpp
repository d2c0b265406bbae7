#ifndef VINBERG_LINALG_HPP
#define VINBERG_LINALG_HPP

// Small dense matrices over Scalar. Just enough exact linear algebra for rank
// factorizations, derived reflection data and frame transitions; sizes never
// exceed a few more than kMaxRank, so cubic algorithms with exact pivots are fine.

#include <utility>
#include <vector>

#include "vinberg/algebra.hpp"
#include "vinberg/errors.hpp"

namespace vinberg {

using ScalarVec = std::vector<Scalar>;
using ScalarMat = std::vector<ScalarVec>;  // row major, rectangular

inline ScalarMat zero_mat(int rows, int cols) {
  return ScalarMat(static_cast<size_t>(rows), ScalarVec(static_cast<size_t>(cols), Scalar(0)));
}

inline ScalarMat identity_mat(int n) {
  ScalarMat m = zero_mat(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

inline Scalar dot(const ScalarVec& a, const ScalarVec& b) {
  Scalar s(0);
  for (size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

inline ScalarMat mat_mul(const ScalarMat& a, const ScalarMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ScalarMat out(n, ScalarVec(m, Scalar(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      Scalar s(0);
      for (size_t t = 0; t < k; ++t) s = s + a[i][t] * b[t][j];
      out[i][j] = s;
    }
  return out;
}

inline ScalarVec mat_vec(const ScalarMat& a, const ScalarVec& x) {
  ScalarVec out(a.size(), Scalar(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

// Gaussian elimination with first-nonzero pivoting. Exact entries decide
// nonzeroness by sign; Approx entries compare against literal 0.0, which is
// the best a contaminated matrix supports.
inline bool linalg_nonzero(const Scalar& s) {
  if (s.is_exact()) return !s.is_zero();
  return s.to_double() != 0.0;
}

/** Row echelon in place; returns (rank, det of the leading square if square). */
inline std::pair<int, Scalar> echelon(ScalarMat& a) {
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  Scalar det_acc(1);
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && !linalg_nonzero(a[piv][c])) ++piv;
    if (piv == rows) {
      det_acc = Scalar(0);
      continue;
    }
    if (piv != r) {
      std::swap(a[piv], a[r]);
      det_acc = Scalar(0) - det_acc;
    }
    det_acc = det_acc * a[r][c];
    for (size_t i = r + 1; i < rows; ++i) {
      if (!linalg_nonzero(a[i][c])) continue;
      Scalar f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    ++rank;
    ++r;
  }
  return {rank, det_acc};
}

inline int rank_of(ScalarMat a) { return echelon(a).first; }

inline Scalar det(ScalarMat a) {
  if (a.empty()) return Scalar(1);
  auto [rank, d] = echelon(a);
  if (rank < static_cast<int>(a.size())) return Scalar(0);
  return d;
}

/** Inverse by Gauss-Jordan; throws RankDeficientError on singular input. */
inline ScalarMat inverse(ScalarMat a) {
  size_t n = a.size();
  ScalarMat inv = identity_mat(static_cast<int>(n));
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && !linalg_nonzero(a[piv][c])) ++piv;
    if (piv == n) throw RankDeficientError("singular matrix has no inverse");
    if (piv != c) {
      std::swap(a[piv], a[c]);
      std::swap(inv[piv], inv[c]);
    }
    Scalar f = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] / f;
      inv[c][j] = inv[c][j] / f;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || !linalg_nonzero(a[i][c])) continue;
      Scalar g = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - g * a[c][j];
        inv[i][j] = inv[i][j] - g * inv[c][j];
      }
    }
  }
  return inv;
}

inline ScalarVec solve(const ScalarMat& a, const ScalarVec& b) {
  return mat_vec(inverse(a), b);
}

}  // namespace vinberg

#endif  // VINBERG_LINALG_HPP
