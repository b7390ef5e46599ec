#pragma once

// A smooth complete toric surface seen as an abstract surface model: the
// basis of N^1 is the class basis of the toric variety, curves are the
// invariant curves D_i (named "D<i>"), and intersection numbers come from
// the fan: adjacent rays meet once, D_i^2 = -b_i where v_prev + v_next =
// b_i v_i.

#include <string>

#include "okb/surface.hpp"
#include "okb/toric.hpp"

namespace okb::toric {

inline Rational intersection_number(const ToricVariety& x, std::size_t i, std::size_t j) {
  if (x.dim() != 2) throw Error(ErrorCode::invalid_argument, "intersection numbers need a surface");
  std::vector<std::size_t> neighbours;
  for (const auto& c : x.fan().max_cones) {
    if (c[0] == i) neighbours.push_back(c[1]);
    if (c[1] == i) neighbours.push_back(c[0]);
  }
  if (i != j) return std::find(neighbours.begin(), neighbours.end(), j) != neighbours.end() ? 1 : 0;
  QVector sum = x.ray(neighbours.at(0)) + x.ray(neighbours.at(1));
  QVector v = x.ray(i);
  std::size_t k = v[0] != 0 ? 0 : 1;
  return -(sum[k] / v[k]);
}

inline surface::SurfaceModel surface_model(const ToricVariety& x) {
  if (x.dim() != 2) throw Error(ErrorCode::invalid_argument, "surface_model needs a toric surface");
  const auto& basis = x.class_basis();
  surface::SurfaceModel m;
  m.rank = basis.size();
  m.form.assign(m.rank, QVector(m.rank));
  for (std::size_t p = 0; p < m.rank; ++p)
    for (std::size_t q = 0; q < m.rank; ++q) m.form[p][q] = intersection_number(x, basis[p], basis[q]);
  for (std::size_t i = 0; i < x.num_rays(); ++i) {
    QVector cls = x.divisor_class(TorusDivisor{}.set(i, 1));
    m.curves.push_back({"D" + std::to_string(i), cls});
    if (std::find(m.eff_generators.begin(), m.eff_generators.end(), cls) == m.eff_generators.end())
      m.eff_generators.push_back(cls);
  }
  m.ample_witness = x.divisor_class(x.ample_divisor());
  return m;
}

/// Flag D_{r1} > D_{r1} cap D_{r2}; D_{r2} meets D_{r1} transversally there.
inline surface::SurfaceFlag surface_flag(const ToricVariety& x, const InvariantFlag& f) {
  check_flag(x, f);
  if (x.dim() != 2) throw Error(ErrorCode::invalid_argument, "surface flags need a toric surface");
  surface::SurfaceFlag s;
  s.curve = f.ray_order[0];
  s.general = false;
  s.incidence[f.ray_order[1]] = 1;
  return s;
}

}  // namespace okb::toric
