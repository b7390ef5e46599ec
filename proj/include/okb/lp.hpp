#pragma once

// Exact rational linear programming: a dense two-phase simplex with Bland's
// anticycling rule. Problem sizes in this library are tiny (tens of
// variables), so clarity wins over sparse tricks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "okb/linalg.hpp"

namespace okb::lp {

enum class Relation { le, eq, ge };
enum class Status { optimal, infeasible, unbounded };

struct Constraint {
  QVector coeffs;
  Relation rel;
  Rational rhs;
};

/// maximize objective . x subject to the constraints; variables flagged free
/// are unrestricted, all others are >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<bool> free_var;
  std::vector<Constraint> constraints;
  QVector objective;

  explicit Problem(std::size_t n) : num_vars(n), free_var(n, false), objective(n) {}

  void add(QVector coeffs, Relation rel, Rational rhs) {
    if (coeffs.size() != num_vars) throw Error(ErrorCode::dimension_mismatch, "lp constraint length");
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

struct Solution {
  Status status = Status::infeasible;
  QVector x;
  Rational value;
};

namespace detail {

class Tableau {
 public:
  // rows: m constraint rows of length ncols + 1 (last entry = rhs).
  Tableau(Matrix rows, std::vector<std::size_t> basis) : t_(std::move(rows)), basis_(std::move(basis)) {}

  // Maximizes cost . x over the current basis. Returns false if unbounded.
  bool optimize(const QVector& cost, const std::vector<bool>& allowed) {
    std::size_t ncols = cost.size();
    while (true) {
      // reduced costs r_j = c_j - c_B B^{-1} A_j, read off the tableau
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < ncols && !entering; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        Rational r = cost[j];
        for (std::size_t i = 0; i < t_.size(); ++i) r -= cost[basis_[i]] * t_[i][j];
        if (r > 0) entering = j;
      }
      if (!entering) return true;
      std::size_t col = *entering;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][col] <= 0) continue;
        Rational ratio = t_[i].back() / t_[i][col];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, col);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / t_[row][col];
    for (auto& x : t_[row]) x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rational f = t_[i][col];
      for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  QVector values(std::size_t ncols) const {
    QVector x(ncols);
    for (std::size_t i = 0; i < t_.size(); ++i) x[basis_[i]] = t_[i].back();
    return x;
  }

  Matrix& rows() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }

 private:
  Matrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Solution solve(const Problem& p) {
  // Column layout: for each variable its positive part, then a negative part
  // for free variables, then one slack per inequality, then artificials.
  std::vector<std::size_t> pos(p.num_vars), neg(p.num_vars, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < p.num_vars; ++v) {
    pos[v] = ncols++;
    if (p.free_var[v]) neg[v] = ncols++;
  }
  std::vector<std::size_t> slack(p.constraints.size(), SIZE_MAX);
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    if (p.constraints[i].rel != Relation::eq) slack[i] = ncols++;
  std::size_t first_artificial = ncols;
  ncols += p.constraints.size();

  Matrix rows;
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    QVector row(ncols + 1);
    for (std::size_t v = 0; v < p.num_vars; ++v) {
      row[pos[v]] = c.coeffs[v];
      if (neg[v] != SIZE_MAX) row[neg[v]] = -c.coeffs[v];
    }
    if (c.rel == Relation::le) row[slack[i]] = 1;
    if (c.rel == Relation::ge) row[slack[i]] = -1;
    row[ncols] = c.rhs;
    if (row[ncols] < 0)
      for (auto& x : row) x = -x;
    row[first_artificial + i] = 1;
    rows.push_back(std::move(row));
    basis.push_back(first_artificial + i);
  }

  detail::Tableau tab(std::move(rows), std::move(basis));
  std::vector<bool> all(ncols, true);
  QVector phase1(ncols);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) phase1[first_artificial + i] = -1;
  tab.optimize(phase1, all);
  QVector x1 = tab.values(ncols);
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    if (x1[first_artificial + i] != 0) return {Status::infeasible, {}, 0};

  // Drive zero-valued artificials out of the basis where possible.
  for (std::size_t r = 0; r < tab.basis().size(); ++r) {
    if (tab.basis()[r] < first_artificial) continue;
    for (std::size_t j = 0; j < first_artificial; ++j) {
      if (tab.rows()[r][j] != 0) {
        tab.pivot(r, j);
        break;
      }
    }
  }

  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = first_artificial; j < ncols; ++j) allowed[j] = false;
  QVector cost(ncols);
  for (std::size_t v = 0; v < p.num_vars; ++v) {
    cost[pos[v]] = p.objective[v];
    if (neg[v] != SIZE_MAX) cost[neg[v]] = -p.objective[v];
  }
  if (!tab.optimize(cost, allowed)) return {Status::unbounded, {}, 0};

  QVector raw = tab.values(ncols);
  Solution s;
  s.status = Status::optimal;
  s.x.resize(p.num_vars);
  for (std::size_t v = 0; v < p.num_vars; ++v) {
    s.x[v] = raw[pos[v]];
    if (neg[v] != SIZE_MAX) s.x[v] -= raw[neg[v]];
  }
  s.value = dot(p.objective, s.x);
  return s;
}

/// Finds lambda >= 0 with sum_i lambda_i generators[i] = target, if any.
inline std::optional<QVector> nonnegative_combination(const std::vector<QVector>& generators,
                                                      const QVector& target) {
  Problem p(generators.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    QVector row(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) row[i] = generators[i].at(k);
    p.add(std::move(row), Relation::eq, target[k]);
  }
  Solution s = solve(p);
  if (s.status != Status::optimal) return std::nullopt;
  return s.x;
}

}  // namespace okb::lp
