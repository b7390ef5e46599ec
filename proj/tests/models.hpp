#pragma once

#include "okb/surface.hpp"

namespace okb::testing {

// Blow-up of P^2 at two points; basis L, E1, E2. "L" is a general line.
inline surface::SurfaceModel del_pezzo7() {
  surface::SurfaceModel m;
  m.rank = 3;
  m.form = {{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  m.eff_generators = {{0, 1, 0}, {0, 0, 1}, {1, -1, -1}};
  m.curves = {{"E1", {0, 1, 0}}, {"E2", {0, 0, 1}}, {"L12", {1, -1, -1}}, {"L", {1, 0, 0}}};
  m.ample_witness = {3, -1, -1};
  return m;
}

// Ruled surface over an elliptic curve from the nontrivial extension of O_C
// by itself; basis H (the section, H^2 = 0) and F (a fiber).
inline surface::SurfaceModel elliptic_ruled() {
  surface::SurfaceModel m;
  m.rank = 2;
  m.form = {{0, 1}, {1, 0}};
  m.eff_generators = {{1, 0}, {0, 1}};
  m.curves = {{"H", {1, 0}}, {"F", {0, 1}}};
  m.ample_witness = {1, 1};
  return m;
}

inline surface::SurfaceModel projective_plane_model() {
  surface::SurfaceModel m;
  m.rank = 1;
  m.form = {{1}};
  m.eff_generators = {{1}};
  m.curves = {{"L", {1}}};
  m.ample_witness = {1};
  return m;
}

}  // namespace okb::testing
