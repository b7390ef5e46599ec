#pragma once

// Exact rational polytopes in double description: a lexicographically
// sorted vertex list together with a facet system (relative to the affine
// hull) and the equalities cutting out the affine hull. All constructors go
// through convex_hull, so two polytopes with the same point set have
// identical representations.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "okb/cone.hpp"
#include "okb/linalg.hpp"
#include "okb/lp.hpp"
#include "okb/rational.hpp"

namespace okb {

/// The set {u : <u, normal> >= bound}. Normals are primitive integer vectors.
struct Halfspace {
  QVector normal;
  Rational bound;

  bool satisfied_by(const QVector& u) const { return dot(u, normal) >= bound; }
  bool saturated_by(const QVector& u) const { return dot(u, normal) == bound; }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend auto operator<=>(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.bound != b.bound) return a.bound < b.bound ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

struct HalfspaceSystem {
  std::size_t ambient_dim = 0;
  std::vector<Halfspace> rows;

  /// Adds a row after normalizing it to a primitive integer normal; exact
  /// duplicates are dropped. A zero normal is rejected.
  void add(const QVector& normal, const Rational& bound) {
    if (normal.size() != ambient_dim) throw Error(ErrorCode::dimension_mismatch, "halfspace normal length");
    if (is_zero(normal)) throw Error(ErrorCode::invalid_argument, "halfspace with zero normal");
    QVector p = primitive(normal);
    // p = normal * scale for a positive scale
    std::size_t i = 0;
    while (normal[i] == 0) ++i;
    Rational scale = p[i] / normal[i];
    Halfspace h{std::move(p), bound * scale};
    if (std::find(rows.begin(), rows.end(), h) == rows.end()) rows.push_back(std::move(h));
  }

  bool contains(const QVector& u) const {
    return std::all_of(rows.begin(), rows.end(), [&](const Halfspace& h) { return h.satisfied_by(u); });
  }
};

/// Euclidean measure of the form coefficient * sqrt(radicand); measures of
/// bodies whose affine hull is not axis-aligned are generally irrational.
struct QuadraticValue {
  Rational coefficient;
  Rational radicand = 1;

  Rational square() const { return coefficient * coefficient * radicand; }

  bool is_rational() const {
    if (coefficient == 0) return true;
    auto perfect = [](const Integer& z) {
      Integer r = boost::multiprecision::sqrt(z);
      return r * r == z;
    };
    return perfect(numer(radicand)) && perfect(denom(radicand));
  }

  Rational rational() const {
    if (!is_rational()) throw Error(ErrorCode::invalid_argument, "measure " + to_string() + " is irrational");
    if (coefficient == 0) return 0;
    return coefficient * Rational(boost::multiprecision::sqrt(numer(radicand)),
                                  boost::multiprecision::sqrt(denom(radicand)));
  }

  std::string to_string() const {
    if (is_rational()) return okb::to_string(rational());
    return okb::to_string(coefficient) + "*sqrt(" + okb::to_string(radicand) + ")";
  }

  friend bool operator==(const QuadraticValue& a, const QuadraticValue& b) { return a.square() == b.square(); }
  friend bool operator<(const QuadraticValue& a, const QuadraticValue& b) { return a.square() < b.square(); }
};

class RationalPolytope;
RationalPolytope convex_hull(std::vector<QVector> points, std::size_t ambient_dim);

class RationalPolytope {
 public:
  RationalPolytope() = default;

  static RationalPolytope empty(std::size_t ambient_dim) {
    RationalPolytope p;
    p.ambient_dim_ = ambient_dim;
    p.halfspaces_.ambient_dim = ambient_dim;
    return p;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  bool is_empty() const { return vertices_.empty(); }
  const std::vector<QVector>& vertices() const { return vertices_; }

  /// Facets relative to the affine hull, followed by each affine-hull
  /// equality written as a pair of opposite half-spaces.
  const HalfspaceSystem& halfspaces() const { return halfspaces_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  /// Hyperplanes {<u, normal> = bound} whose intersection is the affine hull.
  const std::vector<Halfspace>& equalities() const { return equalities_; }
  /// Vertex indices on each facet, parallel to facets().
  const std::vector<std::vector<std::size_t>>& facet_vertices() const { return facet_vertices_; }

  /// Dimension of the affine hull; nullopt for the empty polytope.
  std::optional<std::size_t> dim() const {
    if (is_empty()) return std::nullopt;
    return chart_.size();
  }

  /// Coordinates used as a chart of the affine hull: the projection onto
  /// these coordinates is injective on the polytope.
  const std::vector<std::size_t>& chart() const { return chart_; }

  /// Direction basis of the affine hull in reduced row echelon form; row r
  /// has a 1 at chart()[r].
  const Matrix& directions() const { return directions_; }

  bool contains(const QVector& u) const {
    if (u.size() != ambient_dim_) throw Error(ErrorCode::dimension_mismatch, "point dimension");
    return !is_empty() && halfspaces_.contains(u);
  }

  bool contains(const RationalPolytope& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw Error(ErrorCode::dimension_mismatch, "polytope dimension");
    return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                       [&](const QVector& v) { return contains(v); });
  }

  friend bool operator==(const RationalPolytope& a, const RationalPolytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

 private:
  friend RationalPolytope convex_hull(std::vector<QVector> points, std::size_t ambient_dim);

  std::size_t ambient_dim_ = 0;
  std::vector<QVector> vertices_;
  HalfspaceSystem halfspaces_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equalities_;
  std::vector<std::vector<std::size_t>> facet_vertices_;
  std::vector<std::size_t> chart_;
  Matrix directions_;
};

namespace detail {

struct AffineHull {
  QVector origin;
  Matrix directions;               // rref rows
  std::vector<std::size_t> chart;  // pivot columns
  std::vector<Halfspace> equalities;
};

inline AffineHull affine_hull(const std::vector<QVector>& points, std::size_t n) {
  AffineHull h;
  h.origin = points.front();
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - h.origin);
  RowEchelon e = rref(diffs);
  h.directions = e.reduced;
  h.chart = e.pivots;
  std::vector<QVector> normals = nullspace(h.directions, n);
  RowEchelon ne = rref(normals);
  for (const auto& row : ne.reduced) {
    QVector p = primitive(row);
    h.equalities.push_back({p, dot(p, h.origin)});
  }
  return h;
}

inline QVector restrict_to(const QVector& u, const std::vector<std::size_t>& coords) {
  QVector r;
  r.reserve(coords.size());
  for (auto c : coords) r.push_back(u[c]);
  return r;
}

}  // namespace detail

/// Convex hull of a finite point set. Empty input yields the canonical
/// empty polytope.
inline RationalPolytope convex_hull(std::vector<QVector> points, std::size_t ambient_dim) {
  for (const auto& p : points)
    if (p.size() != ambient_dim)
      throw Error(ErrorCode::dimension_mismatch,
                  "point of length " + std::to_string(p.size()) + " in R^" + std::to_string(ambient_dim));
  RationalPolytope out = RationalPolytope::empty(ambient_dim);
  if (points.empty()) return out;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  detail::AffineHull hull = detail::affine_hull(points, ambient_dim);
  std::size_t d = hull.chart.size();
  out.chart_ = hull.chart;
  out.directions_ = hull.directions;
  out.equalities_ = hull.equalities;

  std::vector<QVector> local;
  local.reserve(points.size());
  for (const auto& p : points) local.push_back(detail::restrict_to(p, hull.chart));

  // Facets of the full-dimensional hull in chart coordinates are the extreme
  // rays of {(c, a) : <a, y> + c >= 0 for all points y}.
  std::vector<Halfspace> local_facets;
  if (d > 0) {
    Matrix rows;
    rows.reserve(local.size());
    for (const auto& y : local) {
      QVector row(d + 1);
      row[0] = 1;
      for (std::size_t i = 0; i < d; ++i) row[i + 1] = y[i];
      rows.push_back(std::move(row));
    }
    for (const auto& ray : cone::extreme_rays(rows, d + 1)) {
      QVector a(ray.begin() + 1, ray.end());
      if (is_zero(a)) continue;  // the trivial inequality 1 >= 0
      local_facets.push_back({a, -ray[0]});
    }
  }

  // Vertices: points whose saturated facets have full rank d.
  for (std::size_t i = 0; i < points.size(); ++i) {
    Matrix tight;
    for (const auto& f : local_facets)
      if (f.saturated_by(local[i])) tight.push_back(f.normal);
    if (rank(tight) == d) out.vertices_.push_back(points[i]);
  }

  for (const auto& f : local_facets) {
    QVector normal(ambient_dim);
    for (std::size_t i = 0; i < d; ++i) normal[hull.chart[i]] = f.normal[i];
    Halfspace h{primitive(normal), 0};
    h.bound = dot(h.normal, out.vertices_.front());
    // the bound is attained on the facet; pick a saturating vertex
    for (const auto& v : out.vertices_) h.bound = std::min(h.bound, dot(h.normal, v));
    out.facets_.push_back(std::move(h));
  }
  std::sort(out.facets_.begin(), out.facets_.end());
  for (const auto& f : out.facets_) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < out.vertices_.size(); ++i)
      if (f.saturated_by(out.vertices_[i])) on.push_back(i);
    out.facet_vertices_.push_back(std::move(on));
  }

  out.halfspaces_.ambient_dim = ambient_dim;
  out.halfspaces_.rows = out.facets_;
  for (const auto& e : out.equalities_) {
    out.halfspaces_.rows.push_back(e);
    QVector neg(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) neg[i] = -e.normal[i];
    out.halfspaces_.rows.push_back({neg, -e.bound});
  }
  return out;
}

/// Intersection of half-spaces. Throws `unbounded` when the region is
/// nonempty but not bounded.
inline RationalPolytope intersect_halfspaces(const HalfspaceSystem& system) {
  std::size_t n = system.ambient_dim;
  for (const auto& h : system.rows)
    if (h.normal.size() != n) throw Error(ErrorCode::dimension_mismatch, "halfspace normal length");
  if (n == 0) {
    bool ok = std::all_of(system.rows.begin(), system.rows.end(), [](const Halfspace& h) { return h.bound <= 0; });
    return ok ? convex_hull({QVector{}}, 0) : RationalPolytope::empty(0);
  }

  Matrix normals;
  for (const auto& h : system.rows) normals.push_back(h.normal);
  if (rank(normals) < n) {
    // Nontrivial lineality space: either empty or unbounded.
    lp::Problem p(n);
    std::fill(p.free_var.begin(), p.free_var.end(), true);
    for (const auto& h : system.rows) p.add(h.normal, lp::Relation::ge, h.bound);
    if (lp::solve(p).status == lp::Status::infeasible) return RationalPolytope::empty(n);
    throw Error(ErrorCode::unbounded, "half-space system has a nontrivial lineality space");
  }

  Matrix rows;
  for (const auto& h : system.rows) {
    QVector row(n + 1);
    row[0] = -h.bound;
    for (std::size_t i = 0; i < n; ++i) row[i + 1] = h.normal[i];
    rows.push_back(std::move(row));
  }
  QVector t(n + 1);
  t[0] = 1;
  rows.push_back(t);

  std::vector<QVector> vertices;
  bool recession = false;
  for (const auto& ray : cone::extreme_rays(rows, n + 1)) {
    if (ray[0] == 0) {
      recession = true;
      continue;
    }
    QVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ray[i + 1] / ray[0];
    vertices.push_back(std::move(v));
  }
  if (vertices.empty()) return RationalPolytope::empty(n);
  if (recession) throw Error(ErrorCode::unbounded, "half-space system has a nonzero recession cone");
  return convex_hull(std::move(vertices), n);
}

inline std::optional<std::size_t> affine_dim(const RationalPolytope& p) { return p.dim(); }

/// Image of the polytope under a linear map (rows of `map` act on points).
inline RationalPolytope project(const RationalPolytope& p, const Matrix& map) {
  for (const auto& row : map)
    if (row.size() != p.ambient_dim())
      throw Error(ErrorCode::dimension_mismatch, "projection matrix column count differs from ambient dimension");
  std::vector<QVector> image;
  for (const auto& v : p.vertices()) image.push_back(apply(map, v));
  return convex_hull(std::move(image), map.size());
}

/// u -> linear u + offset.
inline RationalPolytope affine_image(const RationalPolytope& p, const Matrix& linear, const QVector& offset) {
  if (offset.size() != linear.size()) throw Error(ErrorCode::dimension_mismatch, "affine map offset length");
  for (const auto& row : linear)
    if (row.size() != p.ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "affine map column count");
  std::vector<QVector> image;
  for (const auto& v : p.vertices()) image.push_back(apply(linear, v) + offset);
  return convex_hull(std::move(image), linear.size());
}

inline RationalPolytope scale(const RationalPolytope& p, const Rational& factor) {
  std::vector<QVector> image;
  for (const auto& v : p.vertices()) image.push_back(factor * v);
  return convex_hull(std::move(image), p.ambient_dim());
}

inline RationalPolytope translate(const RationalPolytope& p, const QVector& shift) {
  std::vector<QVector> image;
  for (const auto& v : p.vertices()) image.push_back(v + shift);
  return convex_hull(std::move(image), p.ambient_dim());
}

/// All faces (including the polytope itself, excluding the empty face) as
/// sorted vertex-index sets.
inline std::vector<std::vector<std::size_t>> faces(const RationalPolytope& p) {
  std::set<std::vector<std::size_t>> found;
  if (p.is_empty()) return {};
  std::vector<std::size_t> all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  found.insert(all);
  std::vector<std::vector<std::size_t>> frontier(p.facet_vertices().begin(), p.facet_vertices().end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (auto& f : frontier) {
      if (f.empty() || !found.insert(f).second) continue;
      for (const auto& g : p.facet_vertices()) {
        std::vector<std::size_t> both;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(both));
        if (!both.empty() && both.size() < f.size()) next.push_back(std::move(both));
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

namespace detail {

inline std::size_t affine_rank(const std::vector<QVector>& pts, const std::vector<std::size_t>& idx) {
  Matrix diffs;
  for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(pts[idx[i]] - pts[idx[0]]);
  return rank(diffs);
}

inline void triangulate_face(const std::vector<QVector>& pts, const std::vector<std::vector<std::size_t>>& facets,
                             const std::vector<std::size_t>& face, std::size_t k,
                             std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back({face.front()});
    return;
  }
  std::size_t apex = face.front();
  std::set<std::vector<std::size_t>> subfaces;
  for (const auto& g : facets) {
    std::vector<std::size_t> both;
    std::set_intersection(face.begin(), face.end(), g.begin(), g.end(), std::back_inserter(both));
    if (both.size() < k || std::binary_search(both.begin(), both.end(), apex)) continue;
    if (affine_rank(pts, both) == k - 1) subfaces.insert(std::move(both));
  }
  for (const auto& sub : subfaces) {
    std::vector<std::vector<std::size_t>> pieces;
    triangulate_face(pts, facets, sub, k - 1, pieces);
    for (auto& s : pieces) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace detail

/// Pulling triangulation from the lexicographically smallest vertex,
/// recursively on faces. Each simplex is a list of dim+1 vertex indices.
inline std::vector<std::vector<std::size_t>> triangulate(const RationalPolytope& p) {
  std::vector<std::vector<std::size_t>> out;
  if (p.is_empty()) return out;
  std::vector<QVector> local;
  for (const auto& v : p.vertices()) local.push_back(detail::restrict_to(v, p.chart()));
  std::vector<std::size_t> all(local.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  detail::triangulate_face(local, p.facet_vertices(), all, *p.dim(), out);
  return out;
}

/// d-dimensional volume of the projection onto the chart coordinates.
inline Rational chart_volume(const RationalPolytope& p) {
  if (p.is_empty()) throw Error(ErrorCode::empty_body, "volume of the empty polytope");
  std::size_t d = *p.dim();
  if (d == 0) return 1;
  std::vector<QVector> local;
  for (const auto& v : p.vertices()) local.push_back(detail::restrict_to(v, p.chart()));
  Rational total = 0;
  Integer fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= i;
  for (const auto& s : triangulate(p)) {
    Matrix m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(local[s[i]] - local[s[0]]);
    total += abs(determinant(m));
  }
  return total / Rational(fact);
}

/// Euclidean volume measured inside the affine hull; a point has volume 1.
/// Rational whenever the affine hull is axis-aligned.
inline QuadraticValue volume(const RationalPolytope& p) {
  QuadraticValue v;
  v.coefficient = chart_volume(p);
  if (*p.dim() > 0) {
    // Gram determinant of the direction basis (rows of directions()).
    const Matrix& b = p.directions();
    Matrix gram(b.size(), QVector(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) gram[i][j] = dot(b[i], b[j]);
    v.radicand = determinant(gram);
  }
  return v;
}

/// Integer points of the polytope in lexicographic order.
inline std::vector<IntVector> lattice_points(const RationalPolytope& p) {
  std::vector<IntVector> out;
  if (p.is_empty()) return out;
  std::size_t n = p.ambient_dim();
  if (n == 0) return {IntVector{}};
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil(mn).convert_to<long long>();
    hi[i] = floor(mx).convert_to<long long>();
    if (lo[i] > hi[i]) return out;
  }
  IntVector cur = lo;
  while (true) {
    if (p.contains(to_qvector(cur))) out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < n; ++j) cur[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
  }
}

/// Exact squared Euclidean distance from a point to a nonempty polytope.
inline Rational squared_distance(const QVector& q, const RationalPolytope& p) {
  if (p.is_empty()) throw Error(ErrorCode::empty_body, "distance to the empty polytope");
  if (p.contains(q)) return 0;
  std::optional<Rational> best;
  for (const auto& face : faces(p)) {
    const QVector& base = p.vertices()[face.front()];
    Matrix dirs;
    for (std::size_t i = 1; i < face.size(); ++i) dirs.push_back(p.vertices()[face[i]] - base);
    dirs = rref(dirs).reduced;
    QVector foot = base;
    if (!dirs.empty()) {
      Matrix gram(dirs.size(), QVector(dirs.size()));
      QVector rhs(dirs.size());
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = 0; j < dirs.size(); ++j) gram[i][j] = dot(dirs[i], dirs[j]);
        rhs[i] = dot(dirs[i], q - base);
      }
      QVector c = *solve(gram, rhs);
      for (std::size_t i = 0; i < dirs.size(); ++i) foot = foot + c[i] * dirs[i];
      if (!p.contains(foot)) continue;
    }
    QVector diff = q - foot;
    Rational d2 = dot(diff, diff);
    if (!best || d2 < *best) best = d2;
  }
  return *best;
}

/// Exact squared Hausdorff distance between two nonempty polytopes.
inline Rational hausdorff_squared(const RationalPolytope& a, const RationalPolytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "hausdorff: ambient dimension");
  Rational h = 0;
  for (const auto& v : a.vertices()) h = std::max(h, squared_distance(v, b));
  for (const auto& v : b.vertices()) h = std::max(h, squared_distance(v, a));
  return h;
}

/// Double-description consistency: every vertex satisfies every row, each
/// facet is saturated by an affinely (d-1)-dimensional vertex set, and each
/// vertex is saturated by facets of full rank.
inline bool is_consistent(const RationalPolytope& p) {
  if (p.is_empty()) return p.facets().empty();
  std::size_t d = *p.dim();
  for (const auto& v : p.vertices())
    if (!p.halfspaces().contains(v)) return false;
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    const auto& on = p.facet_vertices()[f];
    if (on.empty() || detail::affine_rank(p.vertices(), on) + 1 != d) return false;
  }
  for (const auto& v : p.vertices()) {
    Matrix tight;
    for (const auto& f : p.facets())
      if (f.saturated_by(v)) tight.push_back(detail::restrict_to(f.normal, p.chart()));
    if (rank(tight) != d) return false;
  }
  return detail::affine_rank(p.vertices(), [&] {
           std::vector<std::size_t> all(p.vertices().size());
           for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
           return all;
         }()) == d;
}

}  // namespace okb
