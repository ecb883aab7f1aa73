#pragma once
#include <vector>

#include "bornscat/correlators.hpp"

namespace bornscat {

/// Product angular rule: Gauss-Legendre in cos(theta) times a uniform
/// azimuth grid. Frequency integration is consumed analytically by the
/// on-shell delta, so n_freq is carried for completeness only.
struct QuadratureSpec {
  int n_theta = 512;
  int n_phi = 1024;
  int n_freq = 1;
};

/// Realized full-sphere rule; weights sum to 4 pi.
struct SphereRule {
  std::vector<Vec3> nodes;
  std::vector<double> weights;

  static SphereRule build(int n_theta, int n_phi);
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Direct solid-angle quadrature of the un-factorized scattered amplitude,
/// |amp|^2 at the measured component. The angular envelope is normalized on
/// the rule itself, so this converges to the closed-form phi1 (scattered
/// only) as the angular width shrinks. Doubles the rule once as a
/// convergence check and fails when the relative change exceeds 1e-3.
double phi1_bruteforce(const OnePhotonState& state, const Detector& det,
                       const ScattererModel& model, const QuadratureSpec& spec);

/// Double solid-angle quadrature of the un-factorized pair amplitude. The
/// product-Gaussian envelope makes the double Riemann sum factor exactly
/// into per-sphere sums contracted over the polarization indices, which is
/// how it is evaluated; the literal double loop gives the identical value.
double phi2_bruteforce(const TwoPhotonState& state, const Detector& det1, const Detector& det2,
                       const ScattererModel& model, const QuadratureSpec& spec);

} // namespace bornscat
