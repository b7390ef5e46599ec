#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fans.hpp"
#include "models.hpp"
#include "okb/cli.hpp"
#include "test_util.hpp"

using namespace okb;
namespace fx = okb::testing;
using fx::pt;
using fx::q;

namespace {

std::string fixture(const std::string& rel) { return std::string(OKB_FIXTURES_DIR) + "/" + rel; }

cli::RunConfig config(std::string command, std::string in) {
  cli::RunConfig c;
  c.command = std::move(command);
  c.inputs = {fixture(in)};
  return c;
}

io::json result_of(const cli::RunResult& r) { return io::json::parse(r.output).at("result"); }

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("okb_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Json, BodyRoundTrip) {
  toric::ToricVariety x(fx::two_point_blowup());
  std::vector<ConvexBody> bodies;
  bodies.push_back(toric::okounkov_body_toric(x, fx::divisor({0, 0, -1, 1, 2}), {{4, 3}}, BodyKind::limiting));
  bodies.push_back(toric::okounkov_body_toric(x, x.anticanonical(), {{0, 2}}, BodyKind::valuative));
  bodies.push_back(toric::okounkov_body_toric(x, fx::divisor({-1}), {{0, 2}}, BodyKind::valuative));
  GradedValuationSet g;
  g.ambient_dim = 3;
  g.add(2, {1, 0, 3});
  g.add(3, {0, 0, 0});
  bodies.push_back(body_from_valuations(g));
  for (const auto& b : bodies) {
    auto text = io::to_json(b).dump();
    EXPECT_EQ(io::body_from(io::json::parse(text)), b);
  }
}

TEST(Json, InputRoundTrips) {
  auto f = fx::blowup_point_p3();
  auto f2 = io::fan_from(io::to_json(f));
  EXPECT_EQ(f2.rays, f.rays);
  EXPECT_EQ(f2.max_cones, f.max_cones);
  toric::TorusDivisor d;
  d.set(1, q("-3/4")).set(4, 2);
  EXPECT_EQ(io::torus_divisor_from(io::to_json(d)).coeffs, d.coeffs);
  EXPECT_EQ(io::torus_divisor_from(io::json::parse(R"({"coeffs": [0, "1/2", 3]})")).coeffs,
            (std::map<std::size_t, Rational>{{1, q("1/2")}, {2, 3}}));
  auto m = fx::del_pezzo7();
  auto m2 = io::model_from(io::to_json(m));
  EXPECT_EQ(m2.form, m.form);
  EXPECT_EQ(m2.curves.size(), m.curves.size());
  EXPECT_EQ(m2.curves[2].name, "L12");
  GradedValuationSet g;
  g.ambient_dim = 2;
  g.add(1, {0, 1});
  EXPECT_EQ(io::valuation_set_from(io::to_json(g)).entries, g.entries);
}

TEST(Json, SchemaErrorsAreParseErrors) {
  auto code = [](const char* text, auto fn) {
    try {
      fn(io::json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_fan;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code(R"({"dim": 2, "rays": [[1, 0]]})", io::fan_from), ErrorCode::parse);
  EXPECT_EQ(code(R"({"coeffs": {"x": "1"}})", io::torus_divisor_from), ErrorCode::parse);
  EXPECT_EQ(code(R"({"coeffs": {"0": "1/0"}})", io::torus_divisor_from), ErrorCode::parse);
  EXPECT_EQ(code(R"({"coeffs": {"0": 1.5}})", io::torus_divisor_from), ErrorCode::parse);
  EXPECT_EQ(code(R"({"ambient_dim": 2, "entries": [{"level": 1, "vector": [1]}]})", io::valuation_set_from),
            ErrorCode::dimension_mismatch);
  EXPECT_EQ(code(R"({"ray_order": [0, -1]})", io::invariant_flag_from), ErrorCode::parse);
}

TEST(Svg, ShapesAndErrors) {
  ConvexBody tri;
  tri.polytope = convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1})}, 2);
  auto s = svg::render_svg(tri);
  EXPECT_EQ(count(s, "<path"), 1u);
  EXPECT_EQ(count(s, " L "), 2u);
  EXPECT_NE(s.find(" Z\""), std::string::npos);
  EXPECT_NE(s.find("viewBox=\"0 0 400 400\""), std::string::npos);
  EXPECT_NE(s.find("x₁"), std::string::npos);
  EXPECT_NE(s.find("x₂"), std::string::npos);
  EXPECT_EQ(count(s, "class=\"vertex\""), 3u);

  ConvexBody seg;
  seg.polytope = convex_hull({pt({1, 0}), pt({2, 0})}, 2);
  s = svg::render_svg(seg);
  EXPECT_EQ(count(s, " L "), 1u);
  EXPECT_NE(s.find("fill=\"none\""), std::string::npos);
  EXPECT_EQ(s.find(" Z\""), std::string::npos);

  ConvexBody dot;
  dot.polytope = convex_hull({QVector{q("1/2"), 0}}, 2);
  EXPECT_NE(svg::render_svg(dot).find("<circle"), std::string::npos);

  ConvexBody empty;
  empty.polytope = RationalPolytope::empty(2);
  EXPECT_THROW(svg::render_svg(empty), Error);
  ConvexBody solid;
  solid.polytope = convex_hull({pt({0, 0, 0}), pt({1, 0, 0})}, 3);
  EXPECT_THROW(svg::render_svg(solid), Error);
}

TEST(Cli, ToricBodyOnProjectivePlane) {
  auto c = config("toric-body", "toric/projective_plane.json");
  c.divisor = fixture("toric/projective_plane_line.json");
  c.flag = fixture("toric/projective_plane_flag.json");
  auto r = cli::run_one(c, c.inputs[0], false);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  auto res = result_of(r);
  EXPECT_EQ(res["body"]["polytope"]["vertices"].size(), 3u);
  EXPECT_EQ(res["volume"], "1/2");
  EXPECT_EQ(res["iitaka_dim"], 2);
  EXPECT_EQ(io::json::parse(r.output)["schema_version"], io::schema_version);
}

TEST(Cli, SurfaceBodyOnEllipticRuled) {
  auto c = config("surface-body", "surface/elliptic_ruled.json");
  c.divisor = fixture("surface/elliptic_ruled_h.json");
  c.flag = fixture("surface/elliptic_ruled_flag_f.json");
  auto r = cli::run_one(c, c.inputs[0], true);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  auto body = io::body_from(result_of(r)["body"]);
  EXPECT_EQ(body.polytope.vertices(), (std::vector<QVector>{pt({0, 0}), pt({0, 1})}));
  // vertical segment: both path points share their x coordinate
  auto d = r.svg.substr(r.svg.find("d=\"M ") + 5);
  std::istringstream path(d);
  std::string x1, y1, l, x2, y2;
  path >> x1 >> y1 >> l >> x2 >> y2;
  EXPECT_EQ(x1, x2);
  EXPECT_NE(y1, y2);
}

TEST(Cli, Xcheck) {
  for (auto [fan, div] : {std::pair{"toric/two_point_blowup.json", "toric/two_point_blowup_example.json"},
                          std::pair{"toric/projective_plane.json", "toric/projective_plane_line.json"}}) {
    auto c = config("xcheck", fan);
    c.divisor = fixture(div);
    auto r = cli::run_one(c, c.inputs[0], false);
    ASSERT_EQ(r.exit_code, 0) << r.error;
    EXPECT_EQ(result_of(r)["verdict"], "EQUAL");
  }
}

TEST(Cli, OtherCommands) {
  auto c = config("toric-baseloci", "toric/two_point_blowup.json");
  c.divisor = fixture("toric/two_point_blowup_example.json");
  auto r = cli::run_one(c, c.inputs[0], false);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(result_of(r)["restricted_divisors"], io::json::array({4}));

  c = config("surface-zariski", "surface/del_pezzo7.json");
  c.divisor = fixture("surface/del_pezzo7_example.json");
  r = cli::run_one(c, c.inputs[0], false);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(result_of(r)["restricted_base_curves"], io::json::array({"E2"}));
  EXPECT_EQ(result_of(r)["zariski"]["positive"], io::json::array({"1", "-1", "0"}));

  c = config("semigroup-body", "semigroup/projective_line.json");
  r = cli::run_one(c, c.inputs[0], false);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(result_of(r)["body"]["exactness"], "truncated(4)");

  for (auto in : {"toric/p1_cubed.json", "surface/del_pezzo7.json", "semigroup/projective_line.json"}) {
    r = cli::run_one(config("validate", in), fixture(in), false);
    ASSERT_EQ(r.exit_code, 0) << r.error;
    EXPECT_EQ(result_of(r)["valid"], true);
  }
}

TEST(Cli, ExitCodes) {
  // input errors -> 1
  auto c = config("toric-body", "toric/projective_plane.json");
  EXPECT_EQ(cli::run_one(c, c.inputs[0], false).exit_code, 1);  // missing --divisor
  EXPECT_EQ(cli::run_one(c, fixture("does_not_exist.json"), false).exit_code, 1);
  auto dir = scratch("bad_json");
  std::ofstream(dir / "bad.json") << "{\"dim\": 2, \"rays\": [[1, 0]";
  EXPECT_EQ(cli::run_one(config("validate", ""), (dir / "bad.json").string(), false).exit_code, 1);

  // domain errors -> 2
  c = config("surface-volplus", "surface/del_pezzo7.json");
  c.divisor = fixture("surface/del_pezzo7_example.json");
  c.flag = fixture("surface/del_pezzo7_flag_e2.json");
  auto r = cli::run_one(c, c.inputs[0], false);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.error.find("inside-restricted-base-locus"), std::string::npos);

  std::ofstream(dir / "neg.json") << R"({"class": ["-1", "0", "0"]})";
  c = config("surface-zariski", "surface/del_pezzo7.json");
  c.divisor = (dir / "neg.json").string();
  EXPECT_EQ(cli::run_one(c, c.inputs[0], false).exit_code, 2);

  // svg of a 3-dimensional body is a usage error
  c = config("toric-body", "toric/projective_space3.json");
  std::ofstream(dir / "h.json") << R"({"coeffs": {"3": "1"}})";
  std::ofstream(dir / "f.json") << R"({"ray_order": [0, 1, 2]})";
  c.divisor = (dir / "h.json").string();
  c.flag = (dir / "f.json").string();
  EXPECT_EQ(cli::run_one(c, c.inputs[0], false).exit_code, 0);
  EXPECT_EQ(cli::run_one(c, c.inputs[0], true).exit_code, 1);

  cli::RunConfig unknown;
  unknown.command = "frobnicate";
  unknown.inputs = {"x"};
  std::ostringstream out, err;
  EXPECT_EQ(cli::run(unknown, out, err), 1);
}

TEST(Cli, DeterministicAndBatch) {
  std::vector<std::string> fans{"toric/projective_plane.json", "toric/hirzebruch_one.json", "toric/two_point_blowup.json"};
  auto dir = scratch("batch");
  std::ofstream(dir / "d.json") << R"({"coeffs": {"0": "1", "1": "2"}})";
  cli::RunConfig c;
  c.command = "toric-baseloci";
  c.divisor = (dir / "d.json").string();
  for (const auto& f : fans) c.inputs.push_back(fixture(f));
  c.out = (dir / "par").string();
  c.jobs = 3;
  std::ostringstream out, err;
  ASSERT_EQ(cli::run(c, out, err), 0) << err.str();
  c.out = (dir / "seq").string();
  c.jobs = 1;
  ASSERT_EQ(cli::run(c, out, err), 0) << err.str();
  for (const auto& f : fans) {
    auto stem = std::filesystem::path(f).stem().string() + ".json";
    std::ifstream a(dir / "par" / stem), b(dir / "seq" / stem);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str());
    auto single = cli::run_one(c, fixture(f), false);
    EXPECT_EQ(single.output, sa.str());
  }
}
