#pragma once

// Double description method: extreme rays of a pointed polyhedral cone
// {x : A x >= 0}. Used in both directions of the polytope conversion
// (facets of a hull, vertices of a half-space intersection).

#include <algorithm>
#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "okb/linalg.hpp"

namespace okb::cone {

namespace detail {

struct Ray {
  QVector dir;
  boost::dynamic_bitset<> zero;  // processed rows the ray saturates
};

inline bool adjacent(const std::vector<Ray>& rays, std::size_t p, std::size_t q, std::size_t dim) {
  boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
  if (common.count() + 2 < dim) return false;
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == p || r == q) continue;
    if (common.is_subset_of(rays[r].zero)) return false;
  }
  return true;
}

}  // namespace detail

/// Extreme rays of {x : row . x >= 0 for every row}, returned as primitive
/// integer vectors in lexicographic order. The cone must be pointed, i.e.
/// the rows must span R^dim; otherwise throws invalid_argument.
inline std::vector<QVector> extreme_rays(const Matrix& rows, std::size_t dim) {
  if (dim == 0) return {};
  std::vector<std::size_t> basis_rows = independent_rows(rows);
  if (basis_rows.size() != dim)
    throw Error(ErrorCode::invalid_argument, "double description: cone is not pointed");

  Matrix b;
  for (auto i : basis_rows) b.push_back(rows[i]);
  Matrix binv = *inverse(b);

  std::size_t m = rows.size();
  std::vector<detail::Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    detail::Ray r;
    r.dir.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) r.dir[i] = binv[i][j];
    r.dir = primitive(r.dir);
    r.zero.resize(m);
    rays.push_back(std::move(r));
  }
  std::vector<bool> processed(m, false);
  auto mark = [&](std::size_t row) {
    processed[row] = true;
    for (auto& r : rays)
      if (dot(rows[row], r.dir) == 0) r.zero.set(row);
  };
  for (auto i : basis_rows) mark(i);

  for (std::size_t row = 0; row < m; ++row) {
    if (processed[row]) continue;
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = dot(rows[row], rays[k].dir);
      if (s[k] > 0) plus.push_back(k);
      if (s[k] < 0) minus.push_back(k);
    }
    if (minus.empty()) {
      mark(row);
      continue;
    }
    std::vector<detail::Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (s[k] >= 0) next.push_back(rays[k]);
    }
    for (auto p : plus) {
      for (auto q : minus) {
        if (!detail::adjacent(rays, p, q, dim)) continue;
        detail::Ray r;
        r.dir = primitive(s[p] * rays[q].dir - s[q] * rays[p].dir);
        r.zero = rays[p].zero & rays[q].zero;
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    processed[row] = true;
    for (auto& r : rays)
      if (dot(rows[row], r.dir) == 0) r.zero.set(row);
  }

  std::vector<QVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.dir));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace okb::cone
