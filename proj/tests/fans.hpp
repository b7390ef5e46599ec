#pragma once

#include "okb/toric.hpp"

namespace okb::testing {

inline toric::Fan projective_plane() { return {2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}}; }

inline toric::Fan hirzebruch_one() {
  return {2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
}

// P^2 blown up at two torus-fixed points; rays 2 and 4 are the exceptional
// curves.
inline toric::Fan two_point_blowup() {
  return {2, {{1, 0}, {0, 1}, {1, 1}, {-1, -1}, {0, -1}}, {{0, 2}, {2, 1}, {1, 3}, {3, 4}, {4, 0}}};
}

inline toric::Fan projective_space3() {
  return {3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
}

inline toric::Fan p1_cubed() {
  toric::Fan f{3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {}};
  for (std::size_t a : {0, 1})
    for (std::size_t b : {2, 3})
      for (std::size_t c : {4, 5}) f.max_cones.push_back({a, b, c});
  return f;
}

inline toric::Fan p2_times_p1() {
  toric::Fan f{3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {}};
  for (auto pair : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {2, 0}})
    for (std::size_t c : {3, 4}) f.max_cones.push_back({pair.first, pair.second, c});
  return f;
}

// P^3 blown up at the fixed point of cone {0,1,2}; ray 4 is the exceptional
// divisor.
inline toric::Fan blowup_point_p3() {
  return {3,
          {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 1}},
          {{0, 1, 4}, {1, 2, 4}, {0, 2, 4}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}}};
}

inline toric::TorusDivisor divisor(std::initializer_list<long long> coeffs) {
  toric::TorusDivisor d;
  std::size_t i = 0;
  for (auto c : coeffs) {
    if (c != 0) d.set(i, c);
    ++i;
  }
  return d;
}

}  // namespace okb::testing
