#pragma once
// Deterministic exact linear algebra on Eigen dense matrices.
//
// Reduction always picks the first nonzero entry (scanning rows top to bottom
// within each column, columns left to right) as the pivot, so every result —
// particular solutions, nullspace bases, echelon forms — is reproducible
// across platforms and runs.

#include "scalar.hpp"

#include <Eigen/Core>

#include <vector>

namespace ainf {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <class K>
struct Rref {
  Mat<K> R;                    // reduced row echelon form
  std::vector<int> pivot_col;  // pivot column of row r, for r < rank
  std::vector<int> free_col;   // non-pivot columns, ascending
  int rank = 0;
};

template <class K>
Rref<K> rref(Mat<K> M) {
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  Rref<K> out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!is_zero(M(i, c))) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) M.row(piv).swap(M.row(r));
    K inv = K(1) / M(r, c);
    for (int j = c; j < cols; ++j) M(r, j) = M(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(M(i, c))) continue;
      K f = M(i, c);
      for (int j = c; j < cols; ++j) M(i, j) = M(i, j) - f * M(r, j);
    }
    out.pivot_col.push_back(c);
    ++r;
  }
  out.rank = r;
  {
    std::size_t k = 0;
    for (int c = 0; c < cols; ++c) {
      if (k < out.pivot_col.size() && out.pivot_col[k] == c) {
        ++k;
      } else {
        out.free_col.push_back(c);
      }
    }
  }
  out.R = std::move(M);
  return out;
}

template <class K>
int rank_of(const Mat<K>& M) {
  return rref(M).rank;
}

// Nullspace basis from an echelon form: one vector per free column, with a 1
// in the free slot and back-substituted pivot entries.
template <class K>
std::vector<Vec<K>> nullspace_from_rref(const Rref<K>& E, int cols) {
  std::vector<Vec<K>> basis;
  basis.reserve(E.free_col.size());
  for (int f : E.free_col) {
    Vec<K> x = Vec<K>::Zero(cols);
    x(f) = K(1);
    for (int r = 0; r < E.rank; ++r) x(E.pivot_col[r]) = -E.R(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class K>
std::vector<Vec<K>> nullspace_basis(const Mat<K>& M) {
  return nullspace_from_rref(rref(M), static_cast<int>(M.cols()));
}

// Exact inverse of a square matrix via reduction of [P | I].
template <class K>
Mat<K> inverse_of(const Mat<K>& P) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n) throw std::invalid_argument("inverse_of: not square");
  Mat<K> aug(n, 2 * n);
  aug.leftCols(n) = P;
  aug.rightCols(n) = Mat<K>::Identity(n, n);
  Rref<K> E = rref(std::move(aug));
  // P is invertible exactly when the pivots land in the first n columns
  for (int i = 0; i < n; ++i) {
    if (i >= E.rank || E.pivot_col[i] != i)
      throw std::invalid_argument("inverse_of: singular matrix");
  }
  return E.R.rightCols(n);
}

template <class K>
struct LinearSolution {
  bool consistent = false;
  Vec<K> particular;               // free variables set to zero
  std::vector<Vec<K>> nullspace;   // kernel basis of M
};

// Solve M x = b exactly.  The particular solution is the canonical one with
// every free variable equal to zero.
template <class K>
LinearSolution<K> solve_linear(const Mat<K>& M, const Vec<K>& b) {
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  Mat<K> aug(rows, cols + 1);
  if (cols > 0) aug.leftCols(cols) = M;
  aug.col(cols) = b;
  Rref<K> E = rref(std::move(aug));

  LinearSolution<K> out;
  out.consistent = true;
  for (int c : E.pivot_col) {
    if (c == cols) out.consistent = false;  // pivot in the constants column
  }
  if (out.consistent) {
    out.particular = Vec<K>::Zero(cols);
    for (int r = 0; r < E.rank; ++r) {
      if (E.pivot_col[r] < cols) out.particular(E.pivot_col[r]) = E.R(r, cols);
    }
  }
  // Kernel of M itself: reuse the augmented echelon form, dropping the
  // constants column (it never hosts a pivot when consistent; when it does,
  // recompute from M alone).
  if (out.consistent) {
    std::vector<int> free_cols;
    {
      std::size_t k = 0;
      for (int c = 0; c < cols; ++c) {
        if (k < E.pivot_col.size() && E.pivot_col[k] == c) {
          ++k;
        } else {
          free_cols.push_back(c);
        }
      }
    }
    for (int f : free_cols) {
      Vec<K> x = Vec<K>::Zero(cols);
      x(f) = K(1);
      for (int r = 0; r < E.rank; ++r) {
        if (E.pivot_col[r] < cols) x(E.pivot_col[r]) = -E.R(r, f);
      }
      out.nullspace.push_back(std::move(x));
    }
  } else {
    out.nullspace = nullspace_basis(M);
  }
  return out;
}

}  // namespace ainf
