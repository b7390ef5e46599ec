#pragma once

// Smooth complete toric varieties given by their fans. Every divisor here is
// a torus-invariant Q-divisor sum a_rho D_rho; sections of mD are the lattice
// points of m P_D, and the valuation of the monomial u along the invariant
// flag with rays v_1..v_n is (<u, v_i> + a_i)_i.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "okb/lp.hpp"
#include "okb/polytope.hpp"
#include "okb/semigroup.hpp"

namespace okb::toric {

using okb::operator+;
using okb::operator-;
using okb::operator*;
using okb::to_string;

struct Fan {
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<std::size_t>> max_cones;
};

struct FanReport {
  bool complete = true;
  bool smooth = true;
  bool compatible = true;
  std::vector<std::string> problems;

  bool ok() const { return complete && smooth && compatible && problems.empty(); }
};

/// Torus-invariant Q-divisor; rays without an entry have coefficient 0.
struct TorusDivisor {
  std::map<std::size_t, Rational> coeffs;

  Rational coeff(std::size_t ray) const {
    auto it = coeffs.find(ray);
    return it == coeffs.end() ? Rational(0) : it->second;
  }

  TorusDivisor& set(std::size_t ray, Rational a) {
    coeffs[ray] = std::move(a);
    return *this;
  }
};

inline TorusDivisor operator*(const Rational& s, const TorusDivisor& d) {
  TorusDivisor out;
  for (const auto& [i, a] : d.coeffs) out.coeffs[i] = s * a;
  return out;
}

inline TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b) {
  TorusDivisor out = a;
  for (const auto& [i, c] : b.coeffs) out.coeffs[i] = out.coeff(i) + c;
  return out;
}

/// Y_i is the orbit closure of the cone spanned by the first i rays.
struct InvariantFlag {
  std::vector<std::size_t> ray_order;
};

/// A cone of the fan, identified by its sorted ray indices; V(tau) is the
/// corresponding orbit closure of dimension n - |tau|.
struct OrbitCone {
  std::vector<std::size_t> ray_indices;

  friend bool operator==(const OrbitCone&, const OrbitCone&) = default;
  friend bool operator<(const OrbitCone& a, const OrbitCone& b) {
    if (a.ray_indices.size() != b.ray_indices.size()) return a.ray_indices.size() < b.ray_indices.size();
    return a.ray_indices < b.ray_indices;
  }
};

inline std::string to_string(const OrbitCone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.ray_indices.size(); ++i) s += (i ? "," : "") + std::to_string(c.ray_indices[i]);
  return s + "}";
}

namespace detail {

inline Matrix ray_matrix(const Fan& f, const std::vector<std::size_t>& idx) {
  Matrix m;
  for (auto i : idx) m.push_back(to_qvector(f.rays.at(i)));
  return m;
}

inline std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& s) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(s[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace detail

inline FanReport validate_fan(const Fan& f) {
  FanReport r;
  auto problem = [&](bool& flag, std::string msg) {
    flag = false;
    r.problems.push_back(std::move(msg));
  };
  bool shape = true;
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const auto& v = f.rays[i];
    if (v.size() != f.dim) {
      problem(shape, "ray " + std::to_string(i) + " has wrong length");
      continue;
    }
    Integer g = 0;
    for (auto x : v) g = gcd(g, Integer(x));
    if (g != 1) problem(shape, "ray " + std::to_string(i) + " is not a primitive nonzero vector");
  }
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    auto cone = f.max_cones[c];
    std::sort(cone.begin(), cone.end());
    bool bad = cone.size() != f.dim || std::adjacent_find(cone.begin(), cone.end()) != cone.end() ||
               std::any_of(cone.begin(), cone.end(), [&](std::size_t i) { return i >= f.rays.size(); });
    if (bad) problem(shape, "max cone " + std::to_string(c) + " is not a set of dim ray indices");
  }
  if (!shape) {
    r.smooth = r.compatible = r.complete = false;
    return r;
  }
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    Rational det = determinant(detail::ray_matrix(f, f.max_cones[c]));
    if (abs(det) != 1)
      problem(r.smooth, "max cone " + std::to_string(c) + " is not smooth (det " + to_string(det) + ")");
  }
  if (f.max_cones.empty()) problem(r.complete, "fan has no maximal cones");

  // Two cones must meet in their common face. Cones that are not simplicial
  // of full rank were already reported above.
  auto halfspace_rows = [&](const std::vector<std::size_t>& cone) {
    auto inv = inverse(transpose(detail::ray_matrix(f, cone)));
    return inv ? *inv : Matrix{};
  };
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    for (std::size_t j = i + 1; j < f.max_cones.size(); ++j) {
      Matrix a = halfspace_rows(f.max_cones[i]), b = halfspace_rows(f.max_cones[j]);
      if (a.empty() || b.empty()) continue;
      Matrix rows = a;
      rows.insert(rows.end(), b.begin(), b.end());
      std::vector<QVector> meet = cone::extreme_rays(rows, f.dim);
      std::vector<QVector> shared;
      for (auto x : f.max_cones[i])
        if (std::find(f.max_cones[j].begin(), f.max_cones[j].end(), x) != f.max_cones[j].end())
          shared.push_back(to_qvector(f.rays[x]));
      std::sort(shared.begin(), shared.end());
      if (meet != shared)
        problem(r.compatible,
                "max cones " + std::to_string(i) + " and " + std::to_string(j) + " do not meet in a common face");
    }
  }

  // With compatible simplicial cones, the support is all of R^n exactly when
  // every wall lies in two maximal cones.
  std::map<std::vector<std::size_t>, int> walls;
  for (const auto& cone : f.max_cones) {
    auto sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t drop = 0; drop < sorted.size(); ++drop) {
      auto w = sorted;
      w.erase(w.begin() + static_cast<long>(drop));
      ++walls[w];
    }
  }
  for (const auto& [w, count] : walls) {
    if (count == 1) {
      problem(r.complete, "wall " + to_string(OrbitCone{w}) + " lies in only one maximal cone");
    } else if (count > 2) {
      problem(r.compatible, "wall " + to_string(OrbitCone{w}) + " lies in " + std::to_string(count) + " maximal cones");
    }
  }
  return r;
}

struct BaseLoci {
  std::vector<OrbitCone> stable;       // SB(D)
  std::vector<OrbitCone> restricted;   // B_-(D)
  std::vector<OrbitCone> augmented;    // B_+(D)

  // chamber certificates for the two perturbations
  Rational minus_epsilon, minus_chamber_end;
  Rational plus_epsilon, plus_chamber_end;
  int minus_rounds = 0, plus_rounds = 0;
  bool certified = true;

  /// Rays whose divisors lie in B_-(D).
  std::vector<std::size_t> restricted_divisors() const {
    std::vector<std::size_t> out;
    for (const auto& c : restricted)
      if (c.ray_indices.size() == 1) out.push_back(c.ray_indices[0]);
    return out;
  }
};

struct Certificate {
  bool holds = false;
  std::string reason;
  /// On success: a basis of the direction space of P_D. On failure: a
  /// monomial section vanishing on V(tau), when that is the obstruction.
  std::vector<QVector> witness;
};

/// A validated smooth complete fan with derived data cached.
class ToricVariety {
 public:
  explicit ToricVariety(Fan fan) : fan_(std::move(fan)) {
    FanReport r = validate_fan(fan_);
    if (!r.ok()) {
      std::string msg = "invalid fan:";
      for (const auto& p : r.problems) msg += " " + p + ";";
      throw Error(ErrorCode::invalid_fan, msg);
    }
    std::set<OrbitCone> cones;
    for (auto c : fan_.max_cones) {
      std::sort(c.begin(), c.end());
      for (auto& s : detail::subsets(c)) cones.insert(OrbitCone{s});
    }
    cones_.assign(cones.begin(), cones.end());
    reference_cone_ = fan_.max_cones.front();
    for (std::size_t i = 0; i < fan_.rays.size(); ++i)
      if (std::find(reference_cone_.begin(), reference_cone_.end(), i) == reference_cone_.end())
        class_basis_.push_back(i);
    anticanonical_ = TorusDivisor{};
    for (std::size_t i = 0; i < fan_.rays.size(); ++i) anticanonical_.set(i, 1);
  }

  const Fan& fan() const { return fan_; }
  std::size_t dim() const { return fan_.dim; }
  std::size_t num_rays() const { return fan_.rays.size(); }
  QVector ray(std::size_t i) const { return to_qvector(fan_.rays.at(i)); }

  /// Every cone of the fan, the zero cone first, ordered by size then lex.
  const std::vector<OrbitCone>& cones() const { return cones_; }

  bool is_cone(const OrbitCone& c) const {
    auto s = c.ray_indices;
    std::sort(s.begin(), s.end());
    return std::binary_search(cones_.begin(), cones_.end(), OrbitCone{s});
  }

  /// Some maximal cone containing tau, ordered with tau's rays first.
  std::vector<std::size_t> complete_to_max_cone(const OrbitCone& tau) const {
    for (const auto& c : fan_.max_cones) {
      if (!std::all_of(tau.ray_indices.begin(), tau.ray_indices.end(),
                       [&](std::size_t i) { return std::find(c.begin(), c.end(), i) != c.end(); }))
        continue;
      std::vector<std::size_t> order = tau.ray_indices;
      std::vector<std::size_t> rest;
      for (auto i : c)
        if (std::find(order.begin(), order.end(), i) == order.end()) rest.push_back(i);
      std::sort(rest.begin(), rest.end());
      order.insert(order.end(), rest.begin(), rest.end());
      return order;
    }
    throw Error(ErrorCode::invalid_argument, "rays " + to_string(tau) + " do not span a cone of the fan");
  }

  /// Rays of the fixed reference cone are eliminated; the remaining ray
  /// divisors form a basis of Pic(X).
  const std::vector<std::size_t>& class_basis() const { return class_basis_; }

  /// Coordinates of [D] in the class_basis().
  QVector divisor_class(const TorusDivisor& d) const {
    QVector u = normalizing_character(d, reference_cone_);
    QVector cls;
    for (auto i : class_basis_) cls.push_back(d.coeff(i) + dot(u, ray(i)));
    return cls;
  }

  /// The character u with a_rho + <u, v_rho> = 0 on the given maximal cone.
  QVector normalizing_character(const TorusDivisor& d, const std::vector<std::size_t>& cone) const {
    Matrix m = detail::ray_matrix(fan_, cone);
    QVector rhs;
    for (auto i : cone) rhs.push_back(-d.coeff(i));
    return *okb::solve(m, rhs);
  }

  /// D + div(chi^u).
  TorusDivisor shift_by_character(const TorusDivisor& d, const QVector& u) const {
    TorusDivisor out;
    for (std::size_t i = 0; i < num_rays(); ++i) {
      Rational c = d.coeff(i) + dot(u, ray(i));
      if (c != 0) out.set(i, c);
    }
    return out;
  }

  HalfspaceSystem divisor_halfspaces(const TorusDivisor& d) const {
    check(d);
    HalfspaceSystem s;
    s.ambient_dim = dim();
    for (std::size_t i = 0; i < num_rays(); ++i) s.add(ray(i), -d.coeff(i));
    return s;
  }

  const TorusDivisor& anticanonical() const { return anticanonical_; }

  /// Strictly convex support function: for every maximal cone the local
  /// character satisfies the remaining inequalities strictly (or weakly,
  /// for nefness).
  bool is_ample(const TorusDivisor& d) const { return convexity(d, true); }
  bool is_nef(const TorusDivisor& d) const { return convexity(d, false); }

  /// -K when it is ample, otherwise an integral ample divisor found by LP.
  TorusDivisor ample_divisor() const {
    if (is_ample(anticanonical_)) return anticanonical_;
    lp::Problem p(num_rays());
    for (const auto& cone : fan_.max_cones) {
      // a_rho + <m_sigma(a), v_rho> >= 1 with m_sigma(a) = -(V_sigma)^{-1} a_sigma
      Matrix vinv = *inverse(detail::ray_matrix(fan_, cone));
      for (std::size_t r = 0; r < num_rays(); ++r) {
        if (std::find(cone.begin(), cone.end(), r) != cone.end()) continue;
        QVector row(num_rays());
        row[r] = 1;
        QVector w = okb::apply(transpose(vinv), ray(r));  // <m, v_r> = -sum_k w_k a_{cone[k]}
        for (std::size_t k = 0; k < cone.size(); ++k) row[cone[k]] -= w[k];
        p.add(row, lp::Relation::ge, 1);
      }
    }
    std::fill(p.free_var.begin(), p.free_var.end(), true);
    lp::Solution s = lp::solve(p);
    if (s.status != lp::Status::optimal) throw Error(ErrorCode::invalid_fan, "fan is not projective");
    Integer l = 1;
    for (const auto& x : s.x) l = lcm(l, denom(x));
    TorusDivisor a;
    for (std::size_t r = 0; r < num_rays(); ++r) a.set(r, s.x[r] * Rational(l));
    return a;
  }

 private:
  void check(const TorusDivisor& d) const {
    for (const auto& [i, a] : d.coeffs)
      if (i >= num_rays()) throw Error(ErrorCode::dimension_mismatch, "divisor coefficient for ray " + std::to_string(i));
  }

  bool convexity(const TorusDivisor& d, bool strict) const {
    for (const auto& cone : fan_.max_cones) {
      QVector m = normalizing_character(d, cone);
      for (std::size_t r = 0; r < num_rays(); ++r) {
        if (std::find(cone.begin(), cone.end(), r) != cone.end()) continue;
        Rational slack = dot(m, ray(r)) + d.coeff(r);
        if (slack < 0 || (strict && slack == 0)) return false;
      }
    }
    return true;
  }

  Fan fan_;
  std::vector<OrbitCone> cones_;
  std::vector<std::size_t> reference_cone_;
  std::vector<std::size_t> class_basis_;
  TorusDivisor anticanonical_;
};

/// P_D = {u : <u, v_rho> >= -a_rho}.
inline RationalPolytope divisor_polytope(const ToricVariety& x, const TorusDivisor& d) {
  return intersect_halfspaces(x.divisor_halfspaces(d));
}

/// kappa(D) = dim P_D; nullopt stands for -infinity.
inline std::optional<std::size_t> iitaka_dim(const ToricVariety& x, const TorusDivisor& d) {
  return divisor_polytope(x, d).dim();
}

/// Numerical Iitaka dimension; equal to kappa on smooth complete toric
/// varieties.
inline std::optional<std::size_t> numerical_iitaka_dim(const ToricVariety& x, const TorusDivisor& d) {
  return iitaka_dim(x, d);
}

/// [D] lies in the cone spanned by the ray-divisor classes (exact LP on
/// Pic(X), independent of P_D).
inline bool is_pseudoeffective(const ToricVariety& x, const TorusDivisor& d) {
  std::vector<QVector> gens;
  for (std::size_t i = 0; i < x.num_rays(); ++i) gens.push_back(x.divisor_class(TorusDivisor{}.set(i, 1)));
  return lp::nonnegative_combination(gens, x.divisor_class(d)).has_value();
}

inline bool is_big(const ToricVariety& x, const TorusDivisor& d) {
  auto k = iitaka_dim(x, d);
  return k && *k == x.dim();
}

inline void check_flag(const ToricVariety& x, const InvariantFlag& flag) {
  auto sorted = flag.ray_order;
  std::sort(sorted.begin(), sorted.end());
  bool found = false;
  for (auto c : x.fan().max_cones) {
    std::sort(c.begin(), c.end());
    if (c == sorted) found = true;
  }
  if (flag.ray_order.size() != x.dim() || !found)
    throw Error(ErrorCode::invalid_argument, "flag rays do not form a maximal cone of the fan");
}

inline std::string flag_label(const InvariantFlag& flag) {
  std::string s = "rays(";
  for (std::size_t i = 0; i < flag.ray_order.size(); ++i)
    s += (i ? "," : "") + std::to_string(flag.ray_order[i]);
  return s + ")";
}

/// The flag valuation on monomials: u -> (<u, v_i> + a_i)_i.
inline std::pair<Matrix, QVector> flag_map(const ToricVariety& x, const TorusDivisor& d, const InvariantFlag& flag) {
  Matrix linear;
  QVector offset;
  for (auto i : flag.ray_order) {
    linear.push_back(x.ray(i));
    offset.push_back(d.coeff(i));
  }
  return {linear, offset};
}

/// Valuative or limiting Okounkov body. On toric varieties both equal the
/// image of P_D under the flag valuation; the empty body is returned when
/// kappa = -infinity (valuative) or D is not pseudoeffective (limiting).
inline ConvexBody okounkov_body_toric(const ToricVariety& x, const TorusDivisor& d, const InvariantFlag& flag,
                                      BodyKind kind) {
  if (kind != BodyKind::valuative && kind != BodyKind::limiting)
    throw Error(ErrorCode::invalid_argument, "toric bodies are valuative or limiting");
  check_flag(x, flag);
  ConvexBody b;
  b.kind = kind;
  b.exactness = Exactness::exact_body();
  b.flag_label = flag_label(flag);
  if (kind == BodyKind::limiting && !is_pseudoeffective(x, d)) {
    b.polytope = RationalPolytope::empty(x.dim());
    return b;
  }
  RationalPolytope p = divisor_polytope(x, d);
  if (p.is_empty()) {
    b.polytope = RationalPolytope::empty(x.dim());
    return b;
  }
  auto [linear, offset] = flag_map(x, d, flag);
  b.polytope = affine_image(p, linear, offset);
  return b;
}

/// h^0(X, O(mD)) = number of lattice points of m P_D.
inline std::size_t sections_count(const ToricVariety& x, const TorusDivisor& d, long long m) {
  if (m <= 0) throw Error(ErrorCode::invalid_argument, "multiple must be positive");
  TorusDivisor md = Rational(m) * d;
  for (const auto& [i, a] : md.coeffs)
    if (!is_integer(a)) throw Error(ErrorCode::invalid_argument, "mD is not an integral divisor");
  return lattice_points(divisor_polytope(x, md)).size();
}

namespace detail {

inline bool face_nonempty(const ToricVariety& x, const TorusDivisor& d, const RationalPolytope& p, const OrbitCone& c) {
  return std::any_of(p.vertices().begin(), p.vertices().end(), [&](const QVector& u) {
    return std::all_of(c.ray_indices.begin(), c.ray_indices.end(),
                       [&](std::size_t r) { return dot(u, x.ray(r)) == -d.coeff(r); });
  });
}

// Exact threshold for the face F_sigma(P_{D + s A}) as s varies over
// s >= 0: minimize (direction +1) or maximize (direction -1) the perturbation
// size among s for which the face is nonempty. nullopt: never nonempty.
inline std::optional<Rational> face_threshold(const ToricVariety& x, const TorusDivisor& d, const TorusDivisor& a,
                                              const OrbitCone& c, int direction) {
  std::size_t n = x.dim();
  lp::Problem p(n + 1);  // u (free), s >= 0
  for (std::size_t i = 0; i < n; ++i) p.free_var[i] = true;
  for (std::size_t r = 0; r < x.num_rays(); ++r) {
    QVector row = x.ray(r);
    row.push_back(direction * a.coeff(r));
    bool on_face = std::find(c.ray_indices.begin(), c.ray_indices.end(), r) != c.ray_indices.end();
    p.add(std::move(row), on_face ? lp::Relation::eq : lp::Relation::ge, -d.coeff(r));
  }
  p.objective[n] = direction > 0 ? -1 : 1;
  lp::Solution s = lp::solve(p);
  if (s.status == lp::Status::infeasible) return std::nullopt;
  if (s.status == lp::Status::unbounded) throw Error(ErrorCode::invalid_fan, "face threshold unbounded");
  return s.x[n];
}

}  // namespace detail

/// SB(D): orbit closures V(sigma) with F_sigma(P_D) empty. When P_D is
/// empty every cone, including the zero cone (all of X), is listed.
inline std::vector<OrbitCone> stable_base_locus(const ToricVariety& x, const TorusDivisor& d) {
  RationalPolytope p = divisor_polytope(x, d);
  std::vector<OrbitCone> out;
  for (const auto& c : x.cones())
    if (!detail::face_nonempty(x, d, p, c)) out.push_back(c);
  return out;
}

/// SB, B_- and B_+. The two asymptotic loci come from halving epsilon in
/// SB(D +/- eps A), A ample, until three rounds agree and eps lies below the
/// exact chamber wall computed by LP for every cone (cap: 40 halvings).
inline BaseLoci base_loci(const ToricVariety& x, const TorusDivisor& d) {
  BaseLoci out;
  out.stable = stable_base_locus(x, d);
  TorusDivisor a = x.ample_divisor();

  auto stabilize = [&](int direction, Rational& eps_out, Rational& chamber_out, int& rounds_out) {
    // chamber wall: smallest positive threshold over all cones
    std::optional<Rational> wall;
    for (const auto& c : x.cones()) {
      auto t = detail::face_threshold(x, d, a, c, direction);
      if (t && *t > 0 && (!wall || *t < *wall)) wall = *t;
    }
    Rational eps = 1;
    std::vector<std::vector<OrbitCone>> history;
    for (int round = 0; round <= 40; ++round) {
      history.push_back(stable_base_locus(x, d + Rational(direction) * eps * a));
      std::size_t h = history.size();
      bool agree = h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3];
      bool inside = !wall || eps < *wall;
      if (agree && inside) {
        eps_out = eps;
        chamber_out = wall ? *wall : Rational(-1);
        rounds_out = round;
        return history.back();
      }
      eps /= 2;
    }
    out.certified = false;
    eps_out = eps;
    chamber_out = wall ? *wall : Rational(-1);
    rounds_out = 40;
    return history.back();
  };
  out.restricted = stabilize(+1, out.minus_epsilon, out.minus_chamber_end, out.minus_rounds);
  out.augmented = stabilize(-1, out.plus_epsilon, out.plus_chamber_end, out.plus_rounds);
  return out;
}

namespace detail {

inline bool contains_cone(const std::vector<OrbitCone>& locus, const OrbitCone& tau) {
  auto s = tau.ray_indices;
  std::sort(s.begin(), s.end());
  return std::find(locus.begin(), locus.end(), OrbitCone{s}) != locus.end();
}

/// The face F_tau(P_D) in the lattice coordinates of M_tau: y_j = <u, v_j>
/// for the rays v_j completing tau to a maximal cone.
inline RationalPolytope face_in_orbit_lattice(const ToricVariety& x, const TorusDivisor& d, const OrbitCone& tau) {
  RationalPolytope p = divisor_polytope(x, d);
  std::vector<QVector> on_face;
  for (const auto& u : p.vertices()) {
    bool ok = std::all_of(tau.ray_indices.begin(), tau.ray_indices.end(),
                          [&](std::size_t r) { return dot(u, x.ray(r)) == -d.coeff(r); });
    if (ok) on_face.push_back(u);
  }
  auto order = x.complete_to_max_cone(tau);
  Matrix coords;
  for (std::size_t j = tau.ray_indices.size(); j < order.size(); ++j) coords.push_back(x.ray(order[j]));
  RationalPolytope face = convex_hull(on_face, x.dim());
  return project(face, coords);
}

}  // namespace detail

/// vol_{X|V(tau)}(D) = vol^+_{X|V(tau)}(D) without the (dim V)! factor: the
/// lattice-normalized volume of F_tau(P_D) inside M_tau (0 when the face is
/// not full-dimensional there). For tau = 0 this is vol(P_D).
inline Rational restricted_volume_toric(const ToricVariety& x, const TorusDivisor& d, const OrbitCone& tau) {
  if (!x.is_cone(tau)) throw Error(ErrorCode::invalid_argument, "not a cone of the fan: " + to_string(tau));
  BaseLoci loci = base_loci(x, d);
  if (detail::contains_cone(loci.restricted, tau))
    throw Error(ErrorCode::inside_base_locus, "V" + to_string(tau) + " lies in B_-(D)");
  RationalPolytope face = detail::face_in_orbit_lattice(x, d, tau);
  std::size_t k = x.dim() - tau.ray_indices.size();
  if (face.is_empty() || *face.dim() < k) return 0;
  return chart_volume(face);
}

/// V(tau) is a Nakayama subvariety of D: dim V(tau) = kappa(D) and no
/// section of any multiple of D vanishes on V(tau), i.e. P_D lies in the
/// face F_tau(P_D).
inline Certificate is_nakayama(const ToricVariety& x, const TorusDivisor& d, const OrbitCone& tau) {
  if (!x.is_cone(tau)) throw Error(ErrorCode::invalid_argument, "not a cone of the fan: " + to_string(tau));
  RationalPolytope p = divisor_polytope(x, d);
  if (p.is_empty()) throw Error(ErrorCode::invalid_argument, "kappa(D) = -infinity");
  Certificate c;
  std::size_t dim_v = x.dim() - tau.ray_indices.size();
  if (dim_v != *p.dim()) {
    c.reason = "dim V = " + std::to_string(dim_v) + " but kappa(D) = " + std::to_string(*p.dim());
    return c;
  }
  for (const auto& u : p.vertices()) {
    for (auto r : tau.ray_indices) {
      if (dot(u, x.ray(r)) != -d.coeff(r)) {
        c.reason = "the monomial section at " + to_string(u) + " vanishes along ray " + std::to_string(r);
        c.witness = {u};
        return c;
      }
    }
  }
  c.holds = true;
  c.reason = "P_D lies in the face of V" + to_string(tau);
  c.witness = p.directions();
  return c;
}

/// V(tau) is a positive volume subvariety of D: dim V(tau) = kappa_nu(D),
/// V(tau) not in B_-(D), and vol^+_{X|V(tau)}(D) > 0.
inline Certificate is_positive_volume(const ToricVariety& x, const TorusDivisor& d, const OrbitCone& tau) {
  if (!x.is_cone(tau)) throw Error(ErrorCode::invalid_argument, "not a cone of the fan: " + to_string(tau));
  if (!is_pseudoeffective(x, d)) throw Error(ErrorCode::invalid_argument, "D is not pseudoeffective");
  Certificate c;
  std::size_t dim_v = x.dim() - tau.ray_indices.size();
  std::size_t kappa_nu = *numerical_iitaka_dim(x, d);
  if (dim_v != kappa_nu) {
    c.reason = "dim V = " + std::to_string(dim_v) + " but kappa_nu(D) = " + std::to_string(kappa_nu);
    return c;
  }
  BaseLoci loci = base_loci(x, d);
  if (detail::contains_cone(loci.restricted, tau)) {
    c.reason = "V" + to_string(tau) + " lies in B_-(D)";
    return c;
  }
  RationalPolytope face = detail::face_in_orbit_lattice(x, d, tau);
  if (face.is_empty() || *face.dim() < dim_v) {
    c.reason = "restricted volume is 0";
    return c;
  }
  c.holds = true;
  c.reason = "restricted volume " + to_string(chart_volume(face));
  c.witness = face.directions();
  return c;
}

/// Valuation data {(m, flag image of u) : u in m P_D integral, m <= max_level}.
inline GradedValuationSet monomial_valuations(const ToricVariety& x, const TorusDivisor& d, const InvariantFlag& flag,
                                              long long max_level) {
  check_flag(x, flag);
  GradedValuationSet g;
  g.ambient_dim = x.dim();
  auto [linear, offset] = flag_map(x, d, flag);
  for (long long m = 1; m <= max_level; ++m) {
    TorusDivisor md = Rational(m) * d;
    bool integral = std::all_of(md.coeffs.begin(), md.coeffs.end(), [](const auto& kv) { return is_integer(kv.second); });
    if (!integral) continue;
    for (const auto& u : lattice_points(divisor_polytope(x, md))) {
      QVector nu = okb::apply(linear, to_qvector(u)) + Rational(m) * offset;
      IntVector v;
      for (const auto& c : nu) v.push_back(numer(c).convert_to<long long>());
      g.add(m, std::move(v));
    }
  }
  return g;
}

}  // namespace okb::toric
