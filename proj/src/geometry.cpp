#include "bornscat/geometry.hpp"

#include <cmath>

#include "bornscat/errors.hpp"

namespace bornscat {

Direction unit(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("degenerate direction");
  return Direction{v * (1.0 / n)};
}

Mat3 transverse_projector(const Direction& n) {
  Mat3 p = Mat3::identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(i, j) -= n[i] * n[j];
  return p;
}

PolarizationBasis polarization_basis(const Direction& s) {
  Vec3 ref{1.0, 0.0, 0.0};
  if (std::abs(dot(ref, s.v)) > 1.0 - 1e-9) ref = Vec3{0.0, 1.0, 0.0};
  const Vec3 raw = ref - dot(ref, s.v) * s.v;
  const Vec3 e1 = raw * (1.0 / norm(raw));
  const Vec3 e2 = cross(s.v, e1);
  return PolarizationBasis{e1, e2, s};
}

std::pair<PolarizationBasis, PolarizationBasis> appendix_basis(double phi) {
  const Direction s1{Vec3{0.0, 0.0, 1.0}};
  const Direction s2{Vec3{0.0, std::sin(phi), std::cos(phi)}};
  PolarizationBasis b1{Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, s1};
  PolarizationBasis b2{Vec3{1.0, 0.0, 0.0}, Vec3{0.0, std::cos(phi), -std::sin(phi)}, s2};
  return {b1, b2};
}

GeometryScenario scenario_params(const Direction& s, const Direction& n, const Vec3& a) {
  const double la = norm(a);
  if (!(la > 0.0)) throw ValidationError("scenario_params: zero scatterer axis");
  const Vec3 ahat = a * (1.0 / la);
  GeometryScenario g;
  g.sigma = dot(s.v, ahat);
  g.nu = dot(n.v, ahat);
  g.chi = 0.5 * (g.sigma - g.nu);
  return g;
}

GeometryScenario scenario_params(const Direction& s, const Direction& n, const Direction& q,
                                 const Vec3& a) {
  GeometryScenario g = scenario_params(s, n, a);
  g.kappa = dot(q.v, a * (1.0 / norm(a)));
  return g;
}

Direction direction_with_projection(double projection, double azimuth, int axis) {
  if (std::abs(projection) > 1.0)
    throw ValidationError("direction_with_projection: |projection| > 1");
  const double rho = std::sqrt(std::max(0.0, 1.0 - projection * projection));
  Vec3 v;
  const int u = (axis + 1) % 3;
  const int w = (axis + 2) % 3;
  v[axis] = projection;
  v[u] = rho * std::cos(azimuth);
  v[w] = rho * std::sin(azimuth);
  return Direction{v};
}

} // namespace bornscat
