#include <gtest/gtest.h>

#include <random>

#include "fans.hpp"
#include "okb/toric.hpp"
#include "test_util.hpp"

using namespace okb;
using namespace okb::toric;
namespace fx = okb::testing;
using okb::testing::divisor;
using okb::testing::pt;
using okb::testing::q;

namespace {

std::vector<Fan> all_fans() {
  return {fx::projective_plane(), fx::hirzebruch_one(), fx::two_point_blowup(),
          fx::projective_space3(), fx::p1_cubed(),       fx::p2_times_p1(),
          fx::blowup_point_p3()};
}

TorusDivisor random_divisor(std::mt19937& rng, std::size_t rays, int lo, int hi) {
  std::uniform_int_distribution<int> c(lo, hi);
  TorusDivisor d;
  for (std::size_t i = 0; i < rays; ++i) d.set(i, c(rng));
  return d;
}

InvariantFlag first_flag(const ToricVariety& x) { return {x.fan().max_cones.front()}; }

bool subset(const std::vector<OrbitCone>& a, const std::vector<OrbitCone>& b) {
  return std::all_of(a.begin(), a.end(), [&](const OrbitCone& c) { return std::find(b.begin(), b.end(), c) != b.end(); });
}

}  // namespace

TEST(Fan, FixturesValidate) {
  for (const auto& f : all_fans()) {
    auto r = validate_fan(f);
    EXPECT_TRUE(r.ok()) << (r.problems.empty() ? "" : r.problems.front());
    EXPECT_NO_THROW((void)ToricVariety(f));
  }
}

TEST(Fan, DetectsDefects) {
  auto missing = fx::projective_plane();
  missing.max_cones.pop_back();
  auto r = validate_fan(missing);
  EXPECT_FALSE(r.complete);
  EXPECT_THROW((void)ToricVariety(missing), Error);

  Fan weighted{2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}}};
  EXPECT_FALSE(validate_fan(weighted).smooth);

  // two cones overlapping in their interiors
  Fan overlap{2, {{1, 0}, {0, 1}, {1, 1}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 3}, {3, 0}}};
  auto ro = validate_fan(overlap);
  EXPECT_FALSE(ro.compatible);

  Fan bad_ray{2, {{2, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}};
  EXPECT_FALSE(validate_fan(bad_ray).ok());
  try {
    (void)ToricVariety(bad_ray);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_fan);
  }
}

TEST(Fan, ConesIncludeZeroCone) {
  ToricVariety p2(fx::projective_plane());
  ASSERT_EQ(p2.cones().size(), 7u);
  EXPECT_TRUE(p2.cones().front().ray_indices.empty());
  EXPECT_TRUE(p2.is_cone(OrbitCone{{1, 0}}));
  EXPECT_FALSE(p2.is_cone(OrbitCone{{0, 1, 2}}));
}

TEST(ToricBody, ProjectivePlaneSimplex) {
  ToricVariety p2(fx::projective_plane());
  auto d = divisor({0, 0, 1});
  EXPECT_EQ(divisor_polytope(p2, d).vertices(), (std::vector<QVector>{pt({0, 0}), pt({0, 1}), pt({1, 0})}));
  auto b = okounkov_body_toric(p2, d, {{0, 1}}, BodyKind::valuative);
  EXPECT_EQ(b.polytope.vertices(), (std::vector<QVector>{pt({0, 0}), pt({0, 1}), pt({1, 0})}));
  EXPECT_EQ(b.exactness, Exactness::exact_body());
  EXPECT_EQ(b.flag_label, "rays(0,1)");
  EXPECT_EQ(volume(b.polytope).rational(), q("1/2"));
}

TEST(ToricBody, TwoPointBlowupSegment) {
  ToricVariety x(fx::two_point_blowup());
  auto d = divisor({0, 0, -1, 1, 2});
  auto b = okounkov_body_toric(x, d, {{4, 3}}, BodyKind::limiting);
  EXPECT_EQ(b.polytope.vertices(), (std::vector<QVector>{pt({1, 0}), pt({2, 0})}));
  EXPECT_EQ(iitaka_dim(x, d), 1u);
  EXPECT_EQ(okounkov_body_toric(x, d, {{4, 3}}, BodyKind::valuative).polytope, b.polytope);
  auto loci = base_loci(x, d);
  EXPECT_EQ(loci.restricted_divisors(), (std::vector<std::size_t>{4}));
  EXPECT_TRUE(loci.certified);
}

TEST(ToricBody, FlagMustBeMaximalCone) {
  ToricVariety p2(fx::projective_plane());
  EXPECT_THROW(okounkov_body_toric(p2, divisor({0, 0, 1}), {{0}}, BodyKind::valuative), Error);
  ToricVariety x(fx::two_point_blowup());
  EXPECT_THROW(okounkov_body_toric(x, divisor({1}), {{0, 1}}, BodyKind::valuative), Error);
  EXPECT_THROW(okounkov_body_toric(p2, divisor({1}), {{0, 1}}, BodyKind::raw), Error);
}

TEST(ToricBody, EmptyWhenNotEffective) {
  ToricVariety p2(fx::projective_plane());
  auto d = divisor({-1, 0, 0});
  EXPECT_FALSE(is_pseudoeffective(p2, d));
  EXPECT_FALSE(iitaka_dim(p2, d).has_value());
  EXPECT_TRUE(okounkov_body_toric(p2, d, {{0, 1}}, BodyKind::valuative).polytope.is_empty());
  EXPECT_TRUE(okounkov_body_toric(p2, d, {{0, 1}}, BodyKind::limiting).polytope.is_empty());
}

TEST(ToricBody, SectionsCount) {
  ToricVariety p2(fx::projective_plane());
  auto h = divisor({0, 0, 1});
  EXPECT_EQ(sections_count(p2, h, 2), 6u);
  for (long long m = 1; m <= 6; ++m)
    EXPECT_EQ(sections_count(p2, h, m), static_cast<std::size_t>((m + 1) * (m + 2) / 2));
  TorusDivisor half;
  half.set(2, q("1/2"));
  EXPECT_THROW(sections_count(p2, half, 1), Error);
  EXPECT_EQ(sections_count(p2, half, 2), 3u);
  EXPECT_THROW(sections_count(p2, h, 0), Error);
}

TEST(ToricBody, RestrictedVolumes) {
  ToricVariety p2(fx::projective_plane());
  auto h = divisor({0, 0, 1});
  EXPECT_EQ(restricted_volume_toric(p2, h, OrbitCone{{0}}), 1);
  EXPECT_EQ(restricted_volume_toric(p2, h, OrbitCone{}), q("1/2"));
  EXPECT_EQ(restricted_volume_toric(p2, h, OrbitCone{{0, 1}}), 1);
  ToricVariety x(fx::two_point_blowup());
  auto d = divisor({0, 0, -1, 1, 2});
  EXPECT_EQ(restricted_volume_toric(x, d, OrbitCone{{2}}), 1);
  try {
    restricted_volume_toric(x, d, OrbitCone{{4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inside_base_locus);
  }
}

TEST(ToricBody, VolumeMatchesSectionGrowth) {
  // vol(P_D) = lim h^0(mD) / m^n; compare against the leading coefficient
  // read off from three values of the Ehrhart polynomial in dimension 2.
  std::mt19937 rng(11);
  for (auto f : {fx::hirzebruch_one(), fx::two_point_blowup()}) {
    ToricVariety x(f);
    for (int trial = 0; trial < 6; ++trial) {
      auto d = random_divisor(rng, x.num_rays(), 0, 3);
      auto p = divisor_polytope(x, d);
      if (!p.dim() || *p.dim() < 2) continue;
      Rational h1 = sections_count(x, d, 1), h2 = sections_count(x, d, 2), h3 = sections_count(x, d, 3);
      Rational leading = (h3 - 2 * h2 + h1) / 2;
      EXPECT_EQ(leading, chart_volume(p));
    }
  }
}

TEST(ToricProperties, BodyVolumeEqualsPolytopeVolume) {
  std::mt19937 rng(5);
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    for (int trial = 0; trial < 4; ++trial) {
      auto d = random_divisor(rng, x.num_rays(), -1, 3);
      auto p = divisor_polytope(x, d);
      for (const auto& cone : f.max_cones) {
        auto b = okounkov_body_toric(x, d, {cone}, BodyKind::valuative);
        if (p.is_empty()) {
          EXPECT_TRUE(b.polytope.is_empty());
          continue;
        }
        EXPECT_EQ(b.polytope.dim(), p.dim());
        if (*p.dim() == x.dim()) EXPECT_EQ(chart_volume(b.polytope), chart_volume(p));
      }
    }
  }
}

TEST(ToricProperties, Homogeneity) {
  std::mt19937 rng(6);
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    auto d = random_divisor(rng, x.num_rays(), 0, 2);
    for (long long m : {2, 3}) {
      auto b = okounkov_body_toric(x, Rational(m) * d, first_flag(x), BodyKind::limiting);
      auto expected = okounkov_body_toric(x, d, first_flag(x), BodyKind::limiting);
      EXPECT_EQ(scale_body(b, m), expected);
    }
  }
}

TEST(ToricProperties, LinearEquivalenceInvariance) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    auto d = random_divisor(rng, x.num_rays(), 0, 2);
    QVector u;
    for (std::size_t i = 0; i < x.dim(); ++i) u.emplace_back(c(rng));
    auto shifted = x.shift_by_character(d, u);
    EXPECT_EQ(x.divisor_class(shifted), x.divisor_class(d));
    for (const auto& cone : f.max_cones)
      EXPECT_EQ(okounkov_body_toric(x, shifted, {cone}, BodyKind::valuative).polytope,
                okounkov_body_toric(x, d, {cone}, BodyKind::valuative).polytope);
  }
}

TEST(ToricProperties, PseudoeffectiveIffPolytopeNonempty) {
  std::mt19937 rng(8);
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    for (int trial = 0; trial < 12; ++trial) {
      auto d = random_divisor(rng, x.num_rays(), -3, 3);
      EXPECT_EQ(is_pseudoeffective(x, d), !divisor_polytope(x, d).is_empty());
    }
  }
}

TEST(ToricProperties, SemigroupOracleReproducesBody) {
  std::mt19937 rng(9);
  for (auto f : {fx::projective_plane(), fx::hirzebruch_one(), fx::two_point_blowup(),
                 fx::p1_cubed()}) {
    ToricVariety x(f);
    for (int trial = 0; trial < 3; ++trial) {
      auto d = random_divisor(rng, x.num_rays(), 0, 2);
      auto body = okounkov_body_toric(x, d, first_flag(x), BodyKind::valuative);
      auto raw = body_from_valuations(monomial_valuations(x, d, first_flag(x), 1));
      EXPECT_EQ(raw.polytope, body.polytope);
      EXPECT_EQ(raw.exactness, Exactness::truncated(1));
    }
  }
}

TEST(ToricProperties, RationalDivisorNeedsDenominatorLevel) {
  ToricVariety p2(fx::projective_plane());
  TorusDivisor d;
  d.set(2, q("2/3"));
  auto body = okounkov_body_toric(p2, d, {{0, 1}}, BodyKind::valuative);
  auto raw = body_from_valuations(monomial_valuations(p2, d, {{0, 1}}, 3));
  EXPECT_EQ(raw.polytope, body.polytope);
  EXPECT_EQ(raw.exactness, Exactness::truncated(3));
}

TEST(BaseLoci, AmpleDivisorsHaveEmptyLoci) {
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    auto a = x.ample_divisor();
    EXPECT_TRUE(x.is_ample(a));
    auto loci = base_loci(x, a);
    EXPECT_TRUE(loci.stable.empty());
    EXPECT_TRUE(loci.restricted.empty());
    EXPECT_TRUE(loci.augmented.empty());
  }
}

TEST(BaseLoci, AnticanonicalOfHirzebruchIsAmple) {
  ToricVariety f1(fx::hirzebruch_one());
  EXPECT_TRUE(f1.is_ample(f1.anticanonical()));
  // the fiber class is nef but not ample
  auto fiber = divisor({1});
  EXPECT_TRUE(f1.is_nef(fiber));
  EXPECT_FALSE(f1.is_ample(fiber));
  auto loci = base_loci(f1, fiber);
  EXPECT_TRUE(loci.stable.empty());
  EXPECT_TRUE(loci.restricted.empty());
  EXPECT_EQ(loci.augmented.front(), OrbitCone{});  // not big: B_+ = X
}

TEST(BaseLoci, ZeroAndNonEffective) {
  ToricVariety p2(fx::projective_plane());
  auto zero = base_loci(p2, TorusDivisor{});
  EXPECT_TRUE(zero.stable.empty());
  EXPECT_TRUE(zero.restricted.empty());
  EXPECT_EQ(zero.augmented.size(), p2.cones().size());
  auto neg = base_loci(p2, divisor({-1}));
  EXPECT_EQ(neg.restricted.size(), p2.cones().size());
}

TEST(BaseLoci, ExceptionalCurveIsFixed) {
  // H + E on the blow-up of P^2 at one point: E is in every base locus.
  ToricVariety f1(fx::hirzebruch_one());
  // rays: 0 = (1,0), 1 = (0,1) = E, 2 = (-1,1), 3 = (0,-1)
  auto d = divisor({0, 2, 0, 0});
  auto loci = base_loci(f1, d);
  EXPECT_TRUE(std::find(loci.stable.begin(), loci.stable.end(), OrbitCone{{1}}) != loci.stable.end());
  EXPECT_EQ(loci.restricted_divisors(), (std::vector<std::size_t>{1}));
}

TEST(BaseLoci, Containments) {
  std::mt19937 rng(10);
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    for (int trial = 0; trial < 5; ++trial) {
      auto d = random_divisor(rng, x.num_rays(), -1, 2);
      auto loci = base_loci(x, d);
      EXPECT_TRUE(loci.certified);
      EXPECT_TRUE(subset(loci.restricted, loci.stable));
      EXPECT_TRUE(subset(loci.stable, loci.augmented));
      // loci are closed: faces of the orbit closure's cone come with it
      for (const auto& c : loci.restricted)
        for (const auto& other : x.cones())
          if (std::includes(other.ray_indices.begin(), other.ray_indices.end(), c.ray_indices.begin(),
                            c.ray_indices.end()))
            EXPECT_TRUE(std::find(loci.restricted.begin(), loci.restricted.end(), other) != loci.restricted.end());
    }
  }
}

TEST(Certificates, Nakayama) {
  ToricVariety p2(fx::projective_plane());
  EXPECT_TRUE(is_nakayama(p2, divisor({0, 0, 1}), OrbitCone{}).holds);
  EXPECT_FALSE(is_nakayama(p2, divisor({0, 0, 1}), OrbitCone{{0}}).holds);
  EXPECT_THROW(is_nakayama(p2, divisor({-1}), OrbitCone{}), Error);

  ToricVariety x(fx::two_point_blowup());
  auto d = divisor({0, 0, -1, 1, 2});
  auto yes = is_nakayama(x, d, OrbitCone{{2}});
  EXPECT_TRUE(yes.holds);
  EXPECT_EQ(yes.witness.size(), 1u);
  auto no = is_nakayama(x, d, OrbitCone{{0}});
  EXPECT_FALSE(no.holds);
  ASSERT_EQ(no.witness.size(), 1u);
  EXPECT_NE(dot(no.witness[0], x.ray(0)), 0);
}

TEST(Certificates, PositiveVolume) {
  ToricVariety x(fx::two_point_blowup());
  auto d = divisor({0, 0, -1, 1, 2});
  EXPECT_TRUE(is_positive_volume(x, d, OrbitCone{{2}}).holds);
  EXPECT_TRUE(is_positive_volume(x, d, OrbitCone{{3}}).holds);
  EXPECT_FALSE(is_positive_volume(x, d, OrbitCone{{4}}).holds);
  EXPECT_FALSE(is_positive_volume(x, d, OrbitCone{}).holds);
  EXPECT_THROW(is_positive_volume(x, divisor({-1}), OrbitCone{}), Error);
}

TEST(Certificates, NakayamaImpliesPositiveVolume) {
  std::mt19937 rng(12);
  for (const auto& f : all_fans()) {
    ToricVariety x(f);
    for (int trial = 0; trial < 4; ++trial) {
      auto d = random_divisor(rng, x.num_rays(), -1, 2);
      if (divisor_polytope(x, d).is_empty()) continue;
      for (const auto& tau : x.cones()) {
        if (!is_nakayama(x, d, tau).holds) continue;
        EXPECT_TRUE(is_positive_volume(x, d, tau).holds) << to_string(tau);
        // the body is the restricted body: restricted volume = volume of P_D in M_tau
        Rational rv = restricted_volume_toric(x, d, tau);
        EXPECT_GT(rv, 0);
      }
    }
  }
}

TEST(BaseLoci, AmpleDivisorOnNonFanoSurface) {
  Fan f3{2, {{1, 0}, {0, 1}, {-1, 3}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  ToricVariety x(f3);
  EXPECT_FALSE(x.is_ample(x.anticanonical()));
  auto a = x.ample_divisor();
  EXPECT_TRUE(x.is_ample(a));
  for (const auto& [i, c] : a.coeffs) EXPECT_TRUE(is_integer(c));
  EXPECT_TRUE(base_loci(x, a).augmented.empty());
}
