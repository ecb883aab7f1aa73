#pragma once
#include <utility>

#include "bornscat/linalg.hpp"

namespace bornscat {

/// Unit observation/propagation direction. Constructed via unit(); inputs are
/// renormalized, so the stored vector satisfies |v| = 1 to 1e-12.
struct Direction {
  Vec3 v{0.0, 0.0, 1.0};

  double operator[](int i) const { return v[i]; }
};

/// Normalizes v to a Direction. Throws ValidationError("degenerate direction")
/// on a zero vector.
Direction unit(const Vec3& v);

/// Transverse projector delta_ik - n_i n_k. Idempotent, annihilates n, trace 2.
Mat3 transverse_projector(const Direction& n);

/// Orthonormal transverse polarization pair attached to a carrier direction:
/// e1.e2 = 0, e_a.carrier = 0, e1 x e2 = carrier.
struct PolarizationBasis {
  Vec3 e1;
  Vec3 e2;
  Direction carrier;
};

/// Gram-Schmidt basis against the fixed x axis (falls back to the y axis when
/// the carrier is parallel to x). For carriers in the y-z plane this
/// reproduces the e1 = (1,0,0), e2 = s x e1 convention used throughout.
PolarizationBasis polarization_basis(const Direction& s);

/// Fixed two-beam frame: s1 = (0,0,1), s2 tilted by phi towards the y axis in
/// the y-z plane, with e1(s1) = e1(s2) = (1,0,0), e2(s1) = (0,1,0) and
/// e2(s2) = (0, cos phi, -sin phi).
std::pair<PolarizationBasis, PolarizationBasis> appendix_basis(double phi);

/// Scalar geometry of a scan configuration: projections of the source,
/// observation and (optionally) second-branch directions on the scatterer
/// axis, plus the resolution parameter chi = (sigma - nu) / 2.
struct GeometryScenario {
  double sigma = 0.0; ///< s.a/|a|
  double nu = 0.0;    ///< n.a/|a|
  double kappa = 0.0; ///< q.a/|a| (0 when no second branch)
  double chi = 0.0;
};

GeometryScenario scenario_params(const Direction& s, const Direction& n, const Vec3& a);
GeometryScenario scenario_params(const Direction& s, const Direction& n, const Direction& q,
                                 const Vec3& a);

/// Unit vector with given axis projection and azimuth around that axis;
/// axis must be one of the coordinate axes' index (0, 1, 2).
Direction direction_with_projection(double projection, double azimuth, int axis = 2);

} // namespace bornscat
