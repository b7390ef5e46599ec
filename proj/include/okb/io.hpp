#pragma once

// JSON encodings. Rationals are written as strings ("3", "-1/2") and read
// from strings or integers. Objects use nlohmann's sorted map, so dumps are
// deterministic.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "okb/semigroup.hpp"
#include "okb/surface.hpp"
#include "okb/toric.hpp"

namespace okb::io {

using nlohmann::json;

inline Error parse_error(const std::string& what) { return Error(ErrorCode::parse, what); }

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw parse_error("expected a rational, got " + j.dump());
}

inline long long integer_from(const json& j) {
  if (!j.is_number_integer()) throw parse_error("expected an integer, got " + j.dump());
  return j.get<long long>();
}

inline std::size_t index_from(const json& j) {
  long long v = integer_from(j);
  if (v < 0) throw parse_error("expected a nonnegative index, got " + j.dump());
  return static_cast<std::size_t>(v);
}

inline const json& array_from(const json& j) {
  if (!j.is_array()) throw parse_error("expected an array, got " + j.dump());
  return j;
}

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline QVector qvector_from(const json& j) {
  QVector v;
  for (const auto& x : array_from(j)) v.push_back(rational_from(x));
  return v;
}

inline IntVector intvector_from(const json& j) {
  IntVector v;
  for (const auto& x : array_from(j)) v.push_back(integer_from(x));
  return v;
}

inline std::vector<std::size_t> indices_from(const json& j) {
  std::vector<std::size_t> v;
  for (const auto& x : array_from(j)) v.push_back(index_from(x));
  return v;
}

// ---- polytopes and bodies

inline json to_json(const RationalPolytope& p) {
  json j;
  j["ambient_dim"] = p.ambient_dim();
  j["empty"] = p.is_empty();
  j["vertices"] = json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back(to_json(v));
  j["halfspaces"] = json::array();
  if (!p.is_empty())
    for (const auto& h : p.halfspaces().rows) j["halfspaces"].push_back({{"normal", to_json(h.normal)}, {"bound", to_json(h.bound)}});
  return j;
}

inline RationalPolytope polytope_from(const json& j) {
  std::size_t n = index_from(field(j, "ambient_dim"));
  if (j.contains("empty") && j.at("empty").is_boolean() && j.at("empty").get<bool>()) return RationalPolytope::empty(n);
  if (j.contains("vertices") && !j.at("vertices").empty()) {
    std::vector<QVector> pts;
    for (const auto& v : array_from(j.at("vertices"))) pts.push_back(qvector_from(v));
    return convex_hull(pts, n);
  }
  HalfspaceSystem s;
  s.ambient_dim = n;
  for (const auto& h : array_from(field(j, "halfspaces"))) {
    QVector normal = qvector_from(field(h, "normal"));
    if (normal.size() != n) throw Error(ErrorCode::dimension_mismatch, "halfspace normal length");
    s.add(normal, rational_from(field(h, "bound")));
  }
  return intersect_halfspaces(s);
}

inline BodyKind body_kind_from(const std::string& s) {
  for (auto k : {BodyKind::valuative, BodyKind::limiting, BodyKind::restricted, BodyKind::raw})
    if (s == to_string(k)) return k;
  throw parse_error("unknown body kind " + s);
}

inline Exactness exactness_from(const std::string& s) {
  if (s == "exact") return Exactness::exact_body();
  const std::string pre = "truncated(";
  if (s.rfind(pre, 0) == 0 && s.size() > pre.size() + 1 && s.back() == ')') {
    try {
      return Exactness::truncated(std::stoll(s.substr(pre.size(), s.size() - pre.size() - 1)));
    } catch (const std::exception&) {
    }
  }
  throw parse_error("bad exactness tag " + s);
}

inline json to_json(const ConvexBody& b) {
  return {{"polytope", to_json(b.polytope)},
          {"kind", to_string(b.kind)},
          {"exactness", b.exactness.to_string()},
          {"flag_label", b.flag_label}};
}

inline ConvexBody body_from(const json& j) {
  ConvexBody b;
  b.polytope = polytope_from(field(j, "polytope"));
  b.kind = body_kind_from(field(j, "kind").get<std::string>());
  b.exactness = exactness_from(field(j, "exactness").get<std::string>());
  b.flag_label = field(j, "flag_label").get<std::string>();
  return b;
}

// ---- semigroup data

inline GradedValuationSet valuation_set_from(const json& j) {
  GradedValuationSet g;
  g.ambient_dim = index_from(field(j, "ambient_dim"));
  for (const auto& e : array_from(field(j, "entries"))) g.add(integer_from(field(e, "level")), intvector_from(field(e, "vector")));
  return g;
}

inline json to_json(const GradedValuationSet& g) {
  json entries = json::array();
  for (const auto& e : g.entries) entries.push_back({{"level", e.level}, {"vector", e.vector}});
  return {{"ambient_dim", g.ambient_dim}, {"entries", entries}};
}

// ---- toric

inline toric::Fan fan_from(const json& j) {
  toric::Fan f;
  f.dim = index_from(field(j, "dim"));
  for (const auto& r : array_from(field(j, "rays"))) f.rays.push_back(intvector_from(r));
  for (const auto& c : array_from(field(j, "max_cones"))) f.max_cones.push_back(indices_from(c));
  return f;
}

inline json to_json(const toric::Fan& f) {
  return {{"dim", f.dim}, {"rays", f.rays}, {"max_cones", f.max_cones}};
}

inline toric::TorusDivisor torus_divisor_from(const json& j) {
  toric::TorusDivisor d;
  const json& c = field(j, "coeffs");
  if (c.is_object()) {
    for (const auto& [key, value] : c.items()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        long long v = std::stoll(key, &used);
        if (used != key.size() || v < 0) throw std::invalid_argument(key);
        idx = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw parse_error("divisor key \"" + key + "\" is not a ray index");
      }
      d.set(idx, rational_from(value));
    }
  } else {
    QVector v = qvector_from(c);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) d.set(i, v[i]);
  }
  return d;
}

inline json to_json(const toric::TorusDivisor& d) {
  json c = json::object();
  for (const auto& [i, a] : d.coeffs) c[std::to_string(i)] = to_json(a);
  return {{"coeffs", c}};
}

inline toric::InvariantFlag invariant_flag_from(const json& j) { return {indices_from(field(j, "ray_order"))}; }

inline toric::OrbitCone orbit_cone_from(const json& j) {
  auto idx = indices_from(field(j, "ray_indices"));
  std::sort(idx.begin(), idx.end());
  return {idx};
}

inline json to_json(const toric::OrbitCone& c) { return {{"ray_indices", c.ray_indices}}; }

inline json to_json(const std::vector<toric::OrbitCone>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(c.ray_indices);
  return a;
}

inline json to_json(const toric::Certificate& c) {
  json w = json::array();
  for (const auto& v : c.witness) w.push_back(to_json(v));
  return {{"holds", c.holds}, {"reason", c.reason}, {"witness", w}};
}

// ---- surfaces

inline surface::SurfaceModel model_from(const json& j) {
  surface::SurfaceModel m;
  m.rank = index_from(field(j, "rank"));
  for (const auto& row : array_from(field(j, "form"))) m.form.push_back(qvector_from(row));
  for (const auto& g : array_from(field(j, "eff_generators"))) m.eff_generators.push_back(qvector_from(g));
  for (const auto& c : array_from(field(j, "curves")))
    m.curves.push_back({field(c, "name").get<std::string>(), qvector_from(field(c, "class"))});
  m.ample_witness = qvector_from(field(j, "ample_witness"));
  return m;
}

inline json to_json(const surface::SurfaceModel& m) {
  json form = json::array(), gens = json::array(), curves = json::array();
  for (const auto& row : m.form) form.push_back(to_json(row));
  for (const auto& g : m.eff_generators) gens.push_back(to_json(g));
  for (const auto& c : m.curves) curves.push_back({{"name", c.name}, {"class", to_json(c.cls)}});
  return {{"rank", m.rank}, {"form", form}, {"eff_generators", gens}, {"curves", curves},
          {"ample_witness", to_json(m.ample_witness)}};
}

inline QVector surface_divisor_from(const json& j) { return qvector_from(field(j, "class")); }

inline std::size_t curve_named(const surface::SurfaceModel& m, const json& name) {
  if (!name.is_string()) throw parse_error("curve names are strings");
  auto i = m.curve_index(name.get<std::string>());
  if (!i) throw Error(ErrorCode::invalid_argument, "no curve named " + name.get<std::string>());
  return *i;
}

inline surface::SurfaceFlag surface_flag_from(const json& j, const surface::SurfaceModel& m) {
  surface::SurfaceFlag f;
  f.curve = curve_named(m, field(j, "curve"));
  const json& point = field(j, "point");
  if (point.is_string()) {
    if (point.get<std::string>() != "general") throw parse_error("point must be \"general\" or an incidence table");
    return f;
  }
  f.general = false;
  const json& inc = field(point, "incidence");
  if (!inc.is_object()) throw parse_error("incidence must be an object");
  for (const auto& [name, k] : inc.items()) f.incidence[curve_named(m, json(name))] = integer_from(k);
  return f;
}

inline json to_json(const surface::ZariskiPair& z, const surface::SurfaceModel& m) {
  json support = json::array();
  for (const auto& [i, c] : z.negative_support) support.push_back({{"curve", m.curves[i].name}, {"coefficient", to_json(c)}});
  return {{"positive", to_json(z.positive)}, {"negative", to_json(z.negative(m))}, {"negative_support", support}};
}

inline json to_json(const surface::PiecewiseLinearFn& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) rows.push_back({to_json(f.breakpoints[i]), to_json(f.values[i])});
  return rows;
}

// ---- output document

inline constexpr const char* schema_version = "1.0";

inline json document(const std::string& command, json result, const std::vector<std::string>& diagnostics) {
  return {{"schema_version", schema_version}, {"command", command}, {"result", std::move(result)},
          {"diagnostics", diagnostics}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace okb::io
