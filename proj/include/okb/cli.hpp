#pragma once

// Batch front end shared by tools/okb.cpp and the tests. run_one() is pure
// apart from reading its input files; run() handles output files and the
// --jobs fan-out over several inputs.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "okb/io.hpp"
#include "okb/svg.hpp"
#include "okb/toric_surface.hpp"

namespace okb::cli {

using io::json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> all{"validate",        "toric-body",   "toric-baseloci",
                                            "toric-certify",   "surface-zariski", "surface-body",
                                            "surface-volplus", "semigroup-body",  "xcheck"};
  return all;
}

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> divisor, flag, out, svg;
  std::string kind = "limiting";
  int jobs = 1;
};

struct RunResult {
  int exit_code = 0;
  std::string output;  // the JSON document, empty on error
  std::string svg;
  std::string error;
};

namespace detail {

inline int exit_code_for(const Error& e) { return e.is_input_error() ? 1 : 2; }

inline const std::string& require(const std::optional<std::string>& path, const char* option) {
  if (!path) throw io::parse_error(std::string("missing --") + option);
  return *path;
}

inline json iitaka_json(std::optional<std::size_t> k) { return k ? json(*k) : json("-inf"); }

struct Outcome {
  json result;
  std::vector<std::string> diagnostics;
  std::optional<ConvexBody> drawable;
  int exit_code = 0;
};

inline Outcome validate(const json& j) {
  Outcome o;
  if (j.contains("rays")) {
    auto r = toric::validate_fan(io::fan_from(j));
    o.result = {{"type", "fan"}, {"valid", r.ok()}, {"complete", r.complete}, {"smooth", r.smooth},
                {"compatible", r.compatible}, {"problems", r.problems}};
  } else if (j.contains("form")) {
    auto r = surface::validate_model(io::model_from(j));
    o.result = {{"type", "surface-model"}, {"valid", r.ok()}, {"problems", r.problems}};
  } else if (j.contains("entries")) {
    auto g = io::valuation_set_from(j);
    o.result = {{"type", "valuation-set"}, {"valid", true}, {"entries", g.entries.size()}, {"max_level", g.max_level()}};
  } else if (j.contains("ambient_dim")) {
    auto p = io::polytope_from(j);
    o.result = {{"type", "polytope"}, {"valid", is_consistent(p)}, {"dim", io::json(p.dim() ? json(*p.dim()) : json("-inf"))}};
  } else {
    throw io::parse_error("unrecognised input document");
  }
  return o;
}

inline Outcome toric_body(const RunConfig& c, const json& in) {
  toric::ToricVariety x(io::fan_from(in));
  auto d = io::torus_divisor_from(io::read_file(require(c.divisor, "divisor")));
  auto flag = io::invariant_flag_from(io::read_file(require(c.flag, "flag")));
  if (c.kind != "valuative" && c.kind != "limiting") throw io::parse_error("--kind must be valuative or limiting");
  auto b = toric::okounkov_body_toric(x, d, flag, io::body_kind_from(c.kind));
  Outcome o;
  o.result = {{"body", io::to_json(b)}, {"iitaka_dim", iitaka_json(toric::iitaka_dim(x, d))},
              {"pseudoeffective", toric::is_pseudoeffective(x, d)}};
  if (!b.polytope.is_empty()) o.result["volume"] = volume(b.polytope).to_string();
  o.drawable = b;
  return o;
}

inline Outcome toric_baseloci(const RunConfig& c, const json& in) {
  toric::ToricVariety x(io::fan_from(in));
  auto d = io::torus_divisor_from(io::read_file(require(c.divisor, "divisor")));
  auto loci = toric::base_loci(x, d);
  Outcome o;
  auto chamber = [](const Rational& eps, const Rational& end, int rounds) {
    return json{{"epsilon", io::to_json(eps)}, {"chamber_end", end < 0 ? json("inf") : io::to_json(end)}, {"rounds", rounds}};
  };
  o.result = {{"stable", io::to_json(loci.stable)},
              {"restricted", io::to_json(loci.restricted)},
              {"augmented", io::to_json(loci.augmented)},
              {"restricted_divisors", loci.restricted_divisors()},
              {"certified", loci.certified},
              {"certificate",
               {{"minus", chamber(loci.minus_epsilon, loci.minus_chamber_end, loci.minus_rounds)},
                {"plus", chamber(loci.plus_epsilon, loci.plus_chamber_end, loci.plus_rounds)}}}};
  if (!loci.certified) o.diagnostics.push_back("base loci did not stabilise within 40 halvings");
  return o;
}

inline Outcome toric_certify(const RunConfig& c, const json& in) {
  toric::ToricVariety x(io::fan_from(in));
  auto d = io::torus_divisor_from(io::read_file(require(c.divisor, "divisor")));
  std::vector<toric::OrbitCone> cones;
  if (c.flag) cones.push_back(io::orbit_cone_from(io::read_file(*c.flag)));
  else cones = x.cones();
  auto loci = toric::base_loci(x, d);
  Outcome o;
  o.result = {{"iitaka_dim", iitaka_json(toric::iitaka_dim(x, d))}, {"cones", json::array()}};
  for (const auto& tau : cones) {
    json entry = {{"cone", tau.ray_indices},
                  {"nakayama", io::to_json(toric::is_nakayama(x, d, tau))},
                  {"positive_volume", io::to_json(toric::is_positive_volume(x, d, tau))}};
    if (std::find(loci.restricted.begin(), loci.restricted.end(), tau) == loci.restricted.end())
      entry["restricted_volume"] = io::to_json(toric::restricted_volume_toric(x, d, tau));
    o.result["cones"].push_back(entry);
  }
  return o;
}

inline surface::SurfaceModel valid_model(const json& in) {
  auto m = io::model_from(in);
  surface::require_valid(m);
  return m;
}

inline Outcome surface_zariski(const RunConfig& c, const json& in) {
  auto m = valid_model(in);
  auto d = io::surface_divisor_from(io::read_file(require(c.divisor, "divisor")));
  auto z = surface::zariski_decompose(m, d);
  json b_minus = json::array();
  for (auto i : surface::restricted_base_curves(m, d)) b_minus.push_back(m.curves[i].name);
  Outcome o;
  o.result = {{"zariski", io::to_json(z, m)}, {"volume", io::to_json(m.self(z.positive))}, {"restricted_base_curves", b_minus}};
  return o;
}

inline Outcome surface_body(const RunConfig& c, const json& in) {
  auto m = valid_model(in);
  auto d = io::surface_divisor_from(io::read_file(require(c.divisor, "divisor")));
  auto flag = io::surface_flag_from(io::read_file(require(c.flag, "flag")), m);
  auto b = surface::limiting_body_surface(m, d, flag);
  Outcome o;
  o.result = {{"body", io::to_json(b.body)}, {"alpha", io::to_json(b.alpha)}, {"beta", io::to_json(b.beta)}};
  if (!b.body.polytope.is_empty()) {
    o.result["a"] = io::to_json(b.a);
    o.result["mu"] = io::to_json(b.mu);
  }
  o.diagnostics = b.diagnostics;
  o.drawable = b.body;
  return o;
}

inline Outcome surface_volplus(const RunConfig& c, const json& in) {
  auto m = valid_model(in);
  auto d = io::surface_divisor_from(io::read_file(require(c.divisor, "divisor")));
  auto flag = io::surface_flag_from(io::read_file(require(c.flag, "flag")), m);
  const auto& cls = m.curves[flag.curve].cls;
  Outcome o;
  o.result = {{"curve", m.curves[flag.curve].name},
              {"vol_plus", io::to_json(surface::restricted_vol_plus(m, d, cls))},
              {"mu", io::to_json(surface::mu_threshold(m, d, cls))}};
  return o;
}

inline Outcome semigroup_body(const json& in) {
  auto g = io::valuation_set_from(in);
  auto b = body_from_valuations(g);
  Outcome o;
  json report = json::array();
  for (const auto& step : truncation_report(g))
    report.push_back({{"level", step.level}, {"squared_distance", io::to_json(step.squared_distance)}});
  o.result = {{"body", io::to_json(b)}, {"truncation", report}};
  o.drawable = b;
  return o;
}

inline Outcome xcheck(const RunConfig& c, const json& in) {
  toric::ToricVariety x(io::fan_from(in));
  auto d = io::torus_divisor_from(io::read_file(require(c.divisor, "divisor")));
  auto m = toric::surface_model(x);
  Outcome o;
  json flags = json::array();
  bool equal = true;
  for (const auto& cone : x.fan().max_cones) {
    for (auto order : {std::vector<std::size_t>{cone[0], cone[1]}, std::vector<std::size_t>{cone[1], cone[0]}}) {
      toric::InvariantFlag f{order};
      auto t = toric::okounkov_body_toric(x, d, f, BodyKind::limiting);
      auto s = surface::limiting_body_surface(m, x.divisor_class(d), toric::surface_flag(x, f));
      bool same = t.polytope == s.body.polytope;
      equal = equal && same;
      if (!same) o.diagnostics.push_back("bodies differ for flag " + toric::flag_label(f));
      flags.push_back({{"flag", order}, {"equal", same}, {"toric", io::to_json(t.polytope)}});
    }
  }
  o.result = {{"verdict", equal ? "EQUAL" : "DIFFERENT"}, {"flags", flags}};
  if (!equal) o.exit_code = 2;
  return o;
}

inline Outcome dispatch(const RunConfig& c, const std::string& input) {
  json in = io::read_file(input);
  const auto& cmd = c.command;
  if (cmd == "validate") return validate(in);
  if (cmd == "toric-body") return toric_body(c, in);
  if (cmd == "toric-baseloci") return toric_baseloci(c, in);
  if (cmd == "toric-certify") return toric_certify(c, in);
  if (cmd == "surface-zariski") return surface_zariski(c, in);
  if (cmd == "surface-body") return surface_body(c, in);
  if (cmd == "surface-volplus") return surface_volplus(c, in);
  if (cmd == "semigroup-body") return semigroup_body(in);
  if (cmd == "xcheck") return xcheck(c, in);
  throw io::parse_error("unknown command " + cmd);
}

}  // namespace detail

inline RunResult run_one(const RunConfig& c, const std::string& input, bool want_svg) {
  RunResult r;
  try {
    auto o = detail::dispatch(c, input);
    if (want_svg) {
      if (!o.drawable) throw io::parse_error("--svg is not supported by " + c.command);
      if (o.drawable->polytope.ambient_dim() != 2) throw io::parse_error("--svg needs a body in the plane");
      r.svg = svg::render_svg(*o.drawable);
    }
    r.output = io::dump(io::document(c.command, std::move(o.result), o.diagnostics));
    r.exit_code = o.exit_code;
  } catch (const Error& e) {
    r.exit_code = detail::exit_code_for(e);
    r.error = e.what();
  } catch (const json::exception& e) {
    r.exit_code = 1;
    r.error = std::string("parse: ") + e.what();
  } catch (const std::exception& e) {
    r.exit_code = 2;
    r.error = e.what();
  }
  return r;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw io::parse_error("cannot write " + p.string());
  out << text;
}

}  // namespace detail

/// Runs every input; with several inputs, --out and --svg name directories
/// and each input writes <stem>.json / <stem>.svg there. Returns the largest
/// exit code.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end()) {
    err << "parse: unknown command " << c.command << "\n";
    return 1;
  }
  if (c.inputs.empty()) {
    err << "parse: missing --in\n";
    return 1;
  }
  bool batch = c.inputs.size() > 1;
  if (batch && !c.out) {
    err << "parse: several inputs need --out <directory>\n";
    return 1;
  }
  std::vector<RunResult> results(c.inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < c.inputs.size(); i = next++) results[i] = run_one(c, c.inputs[i], c.svg.has_value());
  };
  std::size_t jobs = std::max(1, std::min<int>(c.jobs, static_cast<int>(c.inputs.size())));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  try {
    if (batch) std::filesystem::create_directories(*c.out);
    if (batch && c.svg) std::filesystem::create_directories(*c.svg);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      code = std::max(code, r.exit_code);
      if (!r.error.empty()) {
        err << c.inputs[i] << ": " << r.error << "\n";
        continue;
      }
      std::string stem = std::filesystem::path(c.inputs[i]).stem().string();
      if (!c.out) out << r.output;
      else detail::write_file(batch ? std::filesystem::path(*c.out) / (stem + ".json") : std::filesystem::path(*c.out), r.output);
      if (c.svg) detail::write_file(batch ? std::filesystem::path(*c.svg) / (stem + ".svg") : std::filesystem::path(*c.svg), r.svg);
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return std::max(code, 1);
  }
  return code;
}

}  // namespace okb::cli
