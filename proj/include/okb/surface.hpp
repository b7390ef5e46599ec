#pragma once

// Abstract surface models: a lattice N^1(S) with its intersection form, a
// finitely generated effective cone, and the irreducible curves that may
// enter negative parts. Everything reduces to exact linear algebra and LP.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okb/lp.hpp"
#include "okb/polytope.hpp"
#include "okb/semigroup.hpp"

namespace okb::surface {

using okb::operator+;
using okb::operator-;
using okb::operator*;
using okb::to_string;

struct Curve {
  std::string name;
  QVector cls;
};

struct SurfaceModel {
  std::size_t rank = 0;
  Matrix form;
  std::vector<QVector> eff_generators;
  /// Irreducible curves. Those with negative self-intersection are the ones
  /// negative parts are built from; the rest are available as flag curves.
  std::vector<Curve> curves;
  QVector ample_witness;

  Rational pair(const QVector& a, const QVector& b) const {
    if (a.size() != rank || b.size() != rank) throw Error(ErrorCode::dimension_mismatch, "class has wrong rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        if (form[i][j] != 0) s += a[i] * form[i][j] * b[j];
    return s;
  }

  Rational self(const QVector& a) const { return pair(a, a); }

  std::optional<std::size_t> curve_index(const std::string& name) const {
    for (std::size_t i = 0; i < curves.size(); ++i)
      if (curves[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<std::size_t> negative_curves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < curves.size(); ++i)
      if (self(curves[i].cls) < 0) out.push_back(i);
    return out;
  }
};

struct ModelReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Counts of positive, negative and zero entries after a congruence
/// diagonalization of a symmetric matrix.
struct Signature {
  std::size_t positive = 0, negative = 0, zero = 0;
};

inline Signature signature(Matrix a) {
  std::size_t n = a.size();
  Signature s;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        std::swap(a[k], a[j]);
        for (auto& row : a) std::swap(row[k], row[j]);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) {
          ++s.zero;
          continue;
        }
        // replace e_k by e_k + e_j: new diagonal entry 2 a_kj
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      Rational f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      for (std::size_t c = k; c < n; ++c) a[c][r] = a[r][c];
    }
    (a[k][k] > 0 ? s.positive : s.negative)++;
  }
  return s;
}

inline ModelReport validate_model(const SurfaceModel& m) {
  ModelReport r;
  auto length_ok = [&](const QVector& v) { return v.size() == m.rank; };
  bool shape = m.form.size() == m.rank &&
               std::all_of(m.form.begin(), m.form.end(), [&](const QVector& row) { return row.size() == m.rank; });
  if (!shape) {
    r.problems.push_back("form is not a rank x rank matrix");
    return r;
  }
  for (std::size_t i = 0; i < m.rank; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m.form[i][j] != m.form[j][i]) r.problems.push_back("form is not symmetric");
  if (!r.ok()) return r;
  for (const auto& g : m.eff_generators)
    if (!length_ok(g)) r.problems.push_back("effective generator has wrong length");
  for (const auto& c : m.curves)
    if (!length_ok(c.cls)) r.problems.push_back("curve " + c.name + " has wrong length");
  if (!length_ok(m.ample_witness)) r.problems.push_back("ample witness has wrong length");
  if (!r.ok()) return r;

  Signature s = signature(m.form);
  if (s.positive != 1 || s.negative + 1 != m.rank)
    r.problems.push_back("form does not have signature (1, rank-1)");
  if (m.eff_generators.empty()) r.problems.push_back("no effective generators");
  for (std::size_t i = 0; i < m.eff_generators.size(); ++i) {
    const auto& g = m.eff_generators[i];
    if (m.pair(m.ample_witness, g) <= 0)
      r.problems.push_back("ample witness is not positive on generator " + std::to_string(i));
    if (m.self(g) < 0) {
      bool listed = std::any_of(m.curves.begin(), m.curves.end(), [&](const Curve& c) { return c.cls == g; });
      if (!listed) r.problems.push_back("negative generator " + to_string(g) + " missing from curves");
    }
  }
  if (m.rank > 0 && m.self(m.ample_witness) <= 0) r.problems.push_back("ample witness has nonpositive square");
  for (std::size_t i = 0; i < m.curves.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m.curves[i].name == m.curves[j].name) r.problems.push_back("duplicate curve name " + m.curves[i].name);
  return r;
}

inline void require_valid(const SurfaceModel& m) {
  auto r = validate_model(m);
  if (!r.ok()) throw Error(ErrorCode::model_inconsistent, "invalid surface model: " + r.problems.front());
}

inline bool is_pseudoeffective(const SurfaceModel& m, const QVector& d) {
  if (d.size() != m.rank) throw Error(ErrorCode::dimension_mismatch, "class has wrong rank");
  return lp::nonnegative_combination(m.eff_generators, d).has_value();
}

struct ZariskiPair {
  QVector positive;
  /// (curve index, coefficient), sorted by curve index.
  std::vector<std::pair<std::size_t, Rational>> negative_support;

  Rational coefficient(std::size_t curve) const {
    for (const auto& [i, c] : negative_support)
      if (i == curve) return c;
    return 0;
  }

  QVector negative(const SurfaceModel& m) const {
    QVector n(m.rank);
    for (const auto& [i, c] : negative_support) n = n + c * m.curves[i].cls;
    return n;
  }
};

namespace detail {

inline int lex_sign(const Rational& value, const Rational& slope) {
  if (value != 0) return value > 0 ? 1 : -1;
  if (slope != 0) return slope > 0 ? 1 : -1;
  return 0;
}

inline bool negative_definite(const Matrix& g) {
  for (std::size_t k = 1; k <= g.size(); ++k) {
    Matrix minor;
    for (std::size_t i = 0; i < k; ++i) minor.emplace_back(g[i].begin(), g[i].begin() + static_cast<long>(k));
    Rational det = determinant(minor);
    if ((k % 2 == 1 && det >= 0) || (k % 2 == 0 && det <= 0)) return false;
  }
  return true;
}

}  // namespace detail

/// Zariski decomposition of D + sE for all sufficiently small s > 0 (E = 0
/// gives the decomposition of D itself). On that range the support is fixed
/// and N = sum (value_i + s slope_i) C_i.
struct Chamber {
  std::vector<std::size_t> support;
  QVector value, slope;
  QVector positive_value, positive_slope;
};

inline Chamber zariski_chamber(const SurfaceModel& m, const QVector& d, const QVector& e) {
  std::vector<std::size_t> negatives = m.negative_curves();
  Chamber ch;
  while (true) {
    std::size_t k = ch.support.size();
    Matrix gram(k, QVector(k));
    QVector rhs_v(k), rhs_s(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& ci = m.curves[ch.support[i]].cls;
      for (std::size_t j = 0; j < k; ++j) gram[i][j] = m.pair(ci, m.curves[ch.support[j]].cls);
      rhs_v[i] = m.pair(d, ci);
      rhs_s[i] = m.pair(e, ci);
    }
    if (k > 0 && !detail::negative_definite(gram))
      throw Error(ErrorCode::model_inconsistent, "support Gram matrix is not negative definite");
    ch.value = k ? *solve(gram, rhs_v) : QVector{};
    ch.slope = k ? *solve(gram, rhs_s) : QVector{};
    ch.positive_value = d;
    ch.positive_slope = e;
    for (std::size_t i = 0; i < k; ++i) {
      ch.positive_value = ch.positive_value - ch.value[i] * m.curves[ch.support[i]].cls;
      ch.positive_slope = ch.positive_slope - ch.slope[i] * m.curves[ch.support[i]].cls;
    }
    std::vector<std::size_t> grow;
    for (auto c : negatives) {
      if (std::find(ch.support.begin(), ch.support.end(), c) != ch.support.end()) continue;
      const auto& cls = m.curves[c].cls;
      if (detail::lex_sign(m.pair(ch.positive_value, cls), m.pair(ch.positive_slope, cls)) < 0) grow.push_back(c);
    }
    if (grow.empty()) break;
    ch.support.insert(ch.support.end(), grow.begin(), grow.end());
  }

  // sort the support by curve index so the output is order independent
  std::vector<std::size_t> order(ch.support.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ch.support[a] < ch.support[b]; });
  Chamber sorted = ch;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.support[i] = ch.support[order[i]];
    sorted.value[i] = ch.value[order[i]];
    sorted.slope[i] = ch.slope[order[i]];
  }

  for (std::size_t i = 0; i < sorted.support.size(); ++i)
    if (detail::lex_sign(sorted.value[i], sorted.slope[i]) <= 0)
      throw Error(ErrorCode::model_inconsistent, "nonpositive coefficient in the negative part");
  auto nef_against = [&](const QVector& g) {
    return detail::lex_sign(m.pair(sorted.positive_value, g), m.pair(sorted.positive_slope, g)) >= 0;
  };
  for (const auto& c : m.curves)
    if (!nef_against(c.cls)) throw Error(ErrorCode::model_inconsistent, "positive part is negative on " + c.name);
  for (const auto& g : m.eff_generators)
    if (!nef_against(g))
      throw Error(ErrorCode::model_inconsistent, "positive part is negative on generator " + to_string(g) +
                                                     " (curve list incomplete)");
  return sorted;
}

inline ZariskiPair zariski_decompose(const SurfaceModel& m, const QVector& d) {
  if (!is_pseudoeffective(m, d)) throw Error(ErrorCode::not_pseudoeffective, "class " + to_string(d) + " is not pseudoeffective");
  Chamber ch = zariski_chamber(m, d, QVector(m.rank));
  ZariskiPair z;
  z.positive = ch.positive_value;
  for (std::size_t i = 0; i < ch.support.size(); ++i) z.negative_support.emplace_back(ch.support[i], ch.value[i]);
  return z;
}

/// vol(D) = P^2 for pseudoeffective D.
inline Rational volume(const SurfaceModel& m, const QVector& d) {
  auto z = zariski_decompose(m, d);
  return m.self(z.positive);
}

/// ord_E(||D||): the coefficient of E in N.
inline Rational asymptotic_order(const SurfaceModel& m, const QVector& d, std::size_t curve) {
  if (curve >= m.curves.size()) throw Error(ErrorCode::invalid_argument, "curve index out of range");
  return zariski_decompose(m, d).coefficient(curve);
}

/// Curves in the divisorial part of B_-(D): the support of N(D + eps A) for
/// small eps > 0, with A the ample witness.
inline std::vector<std::size_t> restricted_base_curves(const SurfaceModel& m, const QVector& d) {
  if (!is_pseudoeffective(m, d)) throw Error(ErrorCode::not_pseudoeffective, "class " + to_string(d) + " is not pseudoeffective");
  return zariski_chamber(m, d, m.ample_witness).support;
}

/// max{s >= 0 : D - sC pseudoeffective}.
inline Rational mu_threshold(const SurfaceModel& m, const QVector& d, const QVector& c) {
  std::size_t k = m.eff_generators.size();
  lp::Problem p(k + 1);  // s, lambda_1..lambda_k
  for (std::size_t row = 0; row < m.rank; ++row) {
    QVector coeffs(k + 1);
    coeffs[0] = c.at(row);
    for (std::size_t i = 0; i < k; ++i) coeffs[i + 1] = m.eff_generators[i].at(row);
    p.add(std::move(coeffs), lp::Relation::eq, d.at(row));
  }
  p.objective[0] = 1;
  lp::Solution s = lp::solve(p);
  if (s.status == lp::Status::infeasible)
    throw Error(ErrorCode::not_pseudoeffective, "class " + to_string(d) + " is not pseudoeffective");
  if (s.status == lp::Status::unbounded) throw Error(ErrorCode::invalid_argument, "D - sC is effective for all s");
  return s.x[0];
}

struct SurfaceFlag {
  std::size_t curve = 0;
  bool general = true;
  /// Local intersection multiplicity at the flag point of other curves with
  /// the flag curve; only meaningful when !general.
  std::map<std::size_t, long long> incidence;
};

inline void check_flag(const SurfaceModel& m, const SurfaceFlag& f) {
  if (f.curve >= m.curves.size()) throw Error(ErrorCode::invalid_argument, "flag curve index out of range");
  for (const auto& [i, k] : f.incidence) {
    if (i >= m.curves.size() || i == f.curve || k < 0)
      throw Error(ErrorCode::invalid_argument, "bad incidence entry for curve " + std::to_string(i));
    if (k > 0 && m.pair(m.curves[i].cls, m.curves[f.curve].cls) == 0)
      throw Error(ErrorCode::invalid_argument,
                  "curve " + m.curves[i].name + " is disjoint from the flag curve but has positive incidence");
  }
}

inline std::string flag_label(const SurfaceModel& m, const SurfaceFlag& f) {
  std::string s = m.curves[f.curve].name;
  if (f.general) return s + "@general";
  s += "@{";
  bool first = true;
  for (const auto& [i, k] : f.incidence) {
    s += (first ? "" : ",") + m.curves[i].name + ":" + std::to_string(k);
    first = false;
  }
  return s + "}";
}

struct PiecewiseLinearFn {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;

  Rational operator()(const Rational& t) const {
    if (breakpoints.empty() || t < breakpoints.front() || t > breakpoints.back())
      throw Error(ErrorCode::invalid_argument, "argument outside the domain");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      if (t > breakpoints[i + 1]) continue;
      Rational span = breakpoints[i + 1] - breakpoints[i];
      if (span == 0) return values[i];
      return values[i] + (values[i + 1] - values[i]) * (t - breakpoints[i]) / span;
    }
    return values.back();
  }

  friend bool operator==(const PiecewiseLinearFn&, const PiecewiseLinearFn&) = default;
};

struct SurfaceBody {
  ConvexBody body;
  PiecewiseLinearFn alpha, beta;
  Rational a, mu;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline void push_point(PiecewiseLinearFn& f, const Rational& t, const Rational& v) {
  if (!f.breakpoints.empty() && f.breakpoints.back() == t && f.values.back() == v) return;
  f.breakpoints.push_back(t);
  f.values.push_back(v);
}

// Drops interior breakpoints where the function does not bend.
inline PiecewiseLinearFn simplify(const PiecewiseLinearFn& f) {
  PiecewiseLinearFn out;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    if (i > 0 && i + 1 < f.breakpoints.size()) {
      Rational l = (f.values[i] - f.values[i - 1]) * (f.breakpoints[i + 1] - f.breakpoints[i]);
      Rational r = (f.values[i + 1] - f.values[i]) * (f.breakpoints[i] - f.breakpoints[i - 1]);
      if (l == r) continue;
    }
    out.breakpoints.push_back(f.breakpoints[i]);
    out.values.push_back(f.values[i]);
  }
  return out;
}

// sign of the slope change at each interior breakpoint must be `sign` or 0
inline bool bends(const PiecewiseLinearFn& f, int sign) {
  for (std::size_t i = 1; i + 1 < f.breakpoints.size(); ++i) {
    Rational l = (f.values[i] - f.values[i - 1]) / (f.breakpoints[i] - f.breakpoints[i - 1]);
    Rational r = (f.values[i + 1] - f.values[i]) / (f.breakpoints[i + 1] - f.breakpoints[i]);
    if ((r - l) * sign < 0) return false;
  }
  return true;
}

}  // namespace detail

/// Limiting Okounkov body along the flag S > C > x, where C is an
/// irreducible curve of class `c` (index `curve_index` in the model, or none
/// for a general member of its class):
///   { a <= x1 <= mu, alpha(x1) <= x2 <= beta(x1) }
/// computed by walking the chambers of D_t = D - tC on [a, mu].
inline SurfaceBody limiting_body_for_class(const SurfaceModel& m, const QVector& d, const QVector& c,
                                           std::optional<std::size_t> curve_index,
                                           const std::map<std::size_t, long long>& incidence, std::string label) {
  SurfaceBody out;
  out.body.kind = BodyKind::limiting;
  out.body.exactness = Exactness::exact_body();
  out.body.flag_label = std::move(label);
  if (!is_pseudoeffective(m, d)) {
    out.body.polytope = RationalPolytope::empty(2);
    return out;
  }
  auto inc = [&](std::size_t i) {
    auto it = incidence.find(i);
    return it == incidence.end() ? Rational(0) : Rational(it->second);
  };
  auto alpha_of = [&](const std::vector<std::size_t>& support, const QVector& coeffs) {
    Rational s = 0;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] != curve_index) s += coeffs[i] * inc(support[i]);
    return s;
  };
  std::vector<QVector> test_classes = m.eff_generators;
  for (const auto& cv : m.curves) test_classes.push_back(cv.cls);

  ZariskiPair z = zariski_decompose(m, d);
  out.a = curve_index ? z.coefficient(*curve_index) : Rational(0);
  out.mu = mu_threshold(m, d, c);
  if (out.a > out.mu) throw Error(ErrorCode::model_inconsistent, "mult_C N exceeds the pseudoeffective threshold");

  Rational t = out.a;
  if (out.a == out.mu) {
    Chamber ch = zariski_chamber(m, d - t * c, QVector(m.rank));
    Rational al = alpha_of(ch.support, ch.value);
    detail::push_point(out.alpha, t, al);
    detail::push_point(out.beta, t, al + m.pair(c, ch.positive_value));
  }
  for (int guard = 0; t < out.mu; ++guard) {
    if (guard > 10000) throw Error(ErrorCode::model_inconsistent, "chamber walk does not terminate");
    Chamber ch = zariski_chamber(m, d - t * c, Rational(-1) * c);
    Rational a0 = alpha_of(ch.support, ch.value), a1 = alpha_of(ch.support, ch.slope);
    Rational b0 = a0 + m.pair(c, ch.positive_value), b1 = a1 + m.pair(c, ch.positive_slope);

    Rational len = out.mu - t;
    for (std::size_t i = 0; i < ch.support.size(); ++i)
      if (ch.slope[i] < 0) len = std::min(len, Rational(-ch.value[i] / ch.slope[i]));
    for (const auto& g : test_classes) {
      Rational pv = m.pair(ch.positive_value, g), ps = m.pair(ch.positive_slope, g);
      if (ps < 0) len = std::min(len, Rational(-pv / ps));
    }
    if (len <= 0) throw Error(ErrorCode::model_inconsistent, "empty chamber at t = " + to_string(t));
    Rational t1 = t + len;

    if (curve_index) {
      auto it = std::find(ch.support.begin(), ch.support.end(), *curve_index);
      if (it != ch.support.end()) {
        auto k = static_cast<std::size_t>(it - ch.support.begin());
        out.diagnostics.push_back("N_t contains the flag curve on (" + to_string(t) + ", " + to_string(t1) +
                                  "): coefficient " + to_string(ch.value[k]) + " + " + to_string(ch.slope[k]) +
                                  "*(t - " + to_string(t) + "); excluded from alpha");
      }
    }
    if (!out.alpha.values.empty() && out.alpha.breakpoints.back() == t &&
        (out.alpha.values.back() != a0 || out.beta.values.back() != b0))
      out.diagnostics.push_back("alpha/beta jump at t = " + to_string(t));
    detail::push_point(out.alpha, t, a0);
    detail::push_point(out.beta, t, b0);
    detail::push_point(out.alpha, t1, a0 + len * a1);
    detail::push_point(out.beta, t1, b0 + len * b1);
    t = t1;
  }
  out.alpha = detail::simplify(out.alpha);
  out.beta = detail::simplify(out.beta);

  std::vector<QVector> pts;
  for (std::size_t i = 0; i < out.alpha.breakpoints.size(); ++i)
    pts.push_back({out.alpha.breakpoints[i], out.alpha.values[i]});
  for (std::size_t i = 0; i < out.beta.breakpoints.size(); ++i)
    pts.push_back({out.beta.breakpoints[i], out.beta.values[i]});
  for (const auto& p : pts)
    if (out.beta(p[0]) < out.alpha(p[0]))
      throw Error(ErrorCode::model_inconsistent, "beta < alpha at t = " + to_string(p[0]));
  if (!detail::bends(out.alpha, 1)) throw Error(ErrorCode::model_inconsistent, "alpha is not convex");
  if (!detail::bends(out.beta, -1)) throw Error(ErrorCode::model_inconsistent, "beta is not concave");
  out.body.polytope = convex_hull(pts, 2);
  return out;
}

inline SurfaceBody limiting_body_surface(const SurfaceModel& m, const QVector& d, const SurfaceFlag& flag) {
  check_flag(m, flag);
  static const std::map<std::size_t, long long> none;
  return limiting_body_for_class(m, d, m.curves[flag.curve].cls, flag.curve, flag.general ? none : flag.incidence,
                                 flag_label(m, flag));
}

namespace detail {

inline std::optional<std::size_t> support_curve_with_class(const SurfaceModel& m, const ZariskiPair& z,
                                                           const QVector& c) {
  for (const auto& [i, coeff] : z.negative_support)
    if (m.curves[i].cls == c) return i;
  return std::nullopt;
}

}  // namespace detail

/// vol^+_{S|C}(D) = C.D - C.N for a general member C of its class.
inline Rational restricted_vol_plus(const SurfaceModel& m, const QVector& d, const QVector& c) {
  auto z = zariski_decompose(m, d);
  if (auto i = detail::support_curve_with_class(m, z, c))
    throw Error(ErrorCode::inside_base_locus, "flag curve " + m.curves[*i].name + " lies in B_-(D)");
  return m.pair(c, d) - m.pair(c, z.negative(m));
}

/// For each flag class C: (fiber length of the limiting body over x1 = 0)
/// + sum_E ord_E(||D||) (C.E). Equals C.D.
inline QVector jow_probe(const SurfaceModel& m, const QVector& d, const std::vector<QVector>& flags) {
  if (rank(Matrix(flags.begin(), flags.end())) != m.rank)
    throw Error(ErrorCode::invalid_argument, "flag classes do not span N^1");
  auto z = zariski_decompose(m, d);
  QVector probe;
  for (const auto& c : flags) {
    if (auto i = detail::support_curve_with_class(m, z, c))
      throw Error(ErrorCode::inside_base_locus, "flag curve " + m.curves[*i].name + " lies in B_-(D)");
    SurfaceBody b = limiting_body_for_class(m, d, c, std::nullopt, {}, to_string(c));
    Rational fiber = b.beta(b.a) - b.alpha(b.a);
    Rational correction = 0;
    for (const auto& [e, ord] : z.negative_support) correction += ord * m.pair(c, m.curves[e].cls);
    probe.push_back(fiber + correction);
  }
  return probe;
}

}  // namespace okb::surface
