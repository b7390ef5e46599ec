#pragma once

// Dense exact linear algebra over Q. Matrices are small (at most a few
// dozen rows) so everything is plain Gauss-Jordan elimination.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "okb/rational.hpp"

namespace okb {

/// Row-major matrix; every row has the same length.
using Matrix = std::vector<QVector>;

inline std::size_t cols(const Matrix& m, std::size_t fallback = 0) {
  return m.empty() ? fallback : m.front().size();
}

inline Matrix transpose(const Matrix& m, std::size_t ncols = 0) {
  std::size_t c = cols(m, ncols);
  Matrix t(c, QVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}

inline QVector apply(const Matrix& m, const QVector& x) {
  QVector y(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t inner = b.size();
  std::size_t c = cols(b);
  Matrix r(a.size(), QVector(c));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw Error(ErrorCode::dimension_mismatch, "matrix product shape");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

struct RowEchelon {
  Matrix reduced;                  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

inline RowEchelon rref(Matrix m) {
  RowEchelon out;
  if (m.empty()) return out;
  std::size_t ncols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = col; j < ncols; ++j) m[r][j] -= f * m[row][j];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<QVector> nullspace(const Matrix& m, std::size_t ncols) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational determinant(Matrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

/// Solves a x = b for square nonsingular a; nullopt when singular.
inline std::optional<QVector> solve(const Matrix& a, const QVector& b) {
  std::size_t n = a.size();
  Matrix aug(n, QVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::dimension_mismatch, "solve: matrix not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n] = b[i];
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() != n || e.pivots.back() != n - 1) {
    if (n == 0) return QVector{};
    return std::nullopt;
  }
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced[i][n];
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  std::size_t n = a.size();
  Matrix aug(n, QVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.reduced[i][n + j];
  return inv;
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily
/// in order.
inline std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<std::size_t> chosen;
  Matrix basis;
  for (std::size_t i = 0; i < m.size(); ++i) {
    basis.push_back(m[i]);
    if (rank(basis) == basis.size()) {
      chosen.push_back(i);
    } else {
      basis.pop_back();
    }
  }
  return chosen;
}

}  // namespace okb
