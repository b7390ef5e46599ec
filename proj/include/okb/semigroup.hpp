#pragma once

// Okounkov bodies from raw graded valuation data: the slice at height one
// of the cone over {(nu, m)}, approximated by the hull of nu/m over the
// levels present.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "okb/polytope.hpp"

namespace okb {

enum class BodyKind { valuative, limiting, restricted, raw };

inline const char* to_string(BodyKind k) {
  switch (k) {
    case BodyKind::valuative: return "valuative";
    case BodyKind::limiting: return "limiting";
    case BodyKind::restricted: return "restricted";
    case BodyKind::raw: return "raw";
  }
  return "raw";
}

/// Either an exact closed form, or a hull of data truncated at `level`.
struct Exactness {
  bool exact = true;
  long long level = 0;

  static Exactness exact_body() { return {true, 0}; }
  static Exactness truncated(long long m) { return {false, m}; }

  std::string to_string() const { return exact ? "exact" : "truncated(" + std::to_string(level) + ")"; }
  friend bool operator==(const Exactness&, const Exactness&) = default;
};

struct ConvexBody {
  RationalPolytope polytope;
  BodyKind kind = BodyKind::raw;
  Exactness exactness;
  std::string flag_label;

  friend bool operator==(const ConvexBody& a, const ConvexBody& b) {
    return a.polytope == b.polytope && a.kind == b.kind && a.exactness == b.exactness &&
           a.flag_label == b.flag_label;
  }
};

struct ValuationEntry {
  long long level = 1;
  IntVector vector;

  friend auto operator<=>(const ValuationEntry&, const ValuationEntry&) = default;
};

struct GradedValuationSet {
  std::size_t ambient_dim = 0;
  std::vector<ValuationEntry> entries;

  void add(long long level, IntVector v) {
    if (level <= 0) throw Error(ErrorCode::invalid_argument, "valuation level must be positive");
    if (v.size() != ambient_dim) throw Error(ErrorCode::dimension_mismatch, "valuation vector length");
    for (auto x : v)
      if (x < 0) throw Error(ErrorCode::invalid_argument, "valuation vectors have nonnegative entries");
    entries.push_back({level, std::move(v)});
  }

  long long max_level() const {
    long long m = 0;
    for (const auto& e : entries) m = std::max(m, e.level);
    return m;
  }
};

namespace detail {

inline std::vector<QVector> normalized_points(const GradedValuationSet& g, long long up_to) {
  std::set<QVector> pts;
  for (const auto& e : g.entries) {
    if (e.level > up_to) continue;
    QVector v;
    v.reserve(e.vector.size());
    for (auto x : e.vector) v.emplace_back(x, e.level);
    pts.insert(std::move(v));
  }
  return {pts.begin(), pts.end()};
}

}  // namespace detail

/// Hull of {nu/m}; the body is tagged truncated at the largest level seen.
inline ConvexBody body_from_valuations(const GradedValuationSet& g) {
  for (const auto& e : g.entries) {
    if (e.vector.size() != g.ambient_dim) throw Error(ErrorCode::dimension_mismatch, "valuation vector length");
    if (e.level <= 0) throw Error(ErrorCode::invalid_argument, "valuation level must be positive");
  }
  ConvexBody b;
  b.kind = BodyKind::raw;
  b.exactness = Exactness::truncated(g.max_level());
  b.polytope = convex_hull(detail::normalized_points(g, g.max_level()), g.ambient_dim);
  return b;
}

/// Rescales by 1/m: the body of mD is m times the body of D.
inline ConvexBody scale_body(const ConvexBody& b, long long m) {
  if (m <= 0) throw Error(ErrorCode::invalid_argument, "scale factor must be a positive integer");
  if (b.polytope.is_empty()) throw Error(ErrorCode::empty_body, "scaling the empty body");
  ConvexBody out = b;
  out.polytope = scale(b.polytope, Rational(1, m));
  return out;
}

struct TruncationStep {
  long long level;
  Rational squared_distance;  // squared Hausdorff distance to the full-data body

  QuadraticValue distance() const { return {1, squared_distance}; }
};

/// Upper bound (squared) on the Hausdorff distance between P and the hull of
/// {u/m : u in mP integral, m <= max_level}. With q the common denominator
/// of P's vertices, level q already contains every vertex, so the bound is 0
/// once max_level >= q; below that, (q * diam(P) / max_level)^2.
inline Rational certified_truncation_bound_squared(const RationalPolytope& p, long long max_level) {
  if (p.is_empty()) return 0;
  Integer q = 1;
  for (const auto& v : p.vertices())
    for (const auto& x : v) q = lcm(q, denom(x));
  if (Integer(max_level) >= q) return 0;
  Rational diam2 = 0;
  for (const auto& a : p.vertices())
    for (const auto& b : p.vertices()) diam2 = std::max(diam2, dot(a - b, a - b));
  return Rational(q * q) * diam2 / Rational(Integer(max_level) * max_level);
}

/// For each level present, the Hausdorff distance between the hull of the
/// data at levels <= m and the hull of all data.
inline std::vector<TruncationStep> truncation_report(const GradedValuationSet& g) {
  std::vector<TruncationStep> out;
  if (g.entries.empty()) return out;
  std::set<long long> levels;
  for (const auto& e : g.entries) levels.insert(e.level);
  RationalPolytope full = body_from_valuations(g).polytope;
  for (long long m : levels) {
    RationalPolytope partial = convex_hull(detail::normalized_points(g, m), g.ambient_dim);
    out.push_back({m, hausdorff_squared(partial, full)});
  }
  return out;
}

}  // namespace okb
