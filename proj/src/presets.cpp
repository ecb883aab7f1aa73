#include "bornscat/presets.hpp"

#include <cmath>

#include "bornscat/errors.hpp"

namespace bornscat {

namespace {

// Shared scenario constants. Azimuths are generic values keeping every
// direction pair non-collinear and the polarization prefactors away from
// zero; axis projections realize the constraint sets exactly in double
// arithmetic (dependent projections are derived, not retyped).
constexpr double kRatio21 = 0.75; ///< omega2 / omega1
constexpr double kDist = 1.0e6;
constexpr double kAzQ1 = 0.4, kAzS1 = 2.2, kAzN1 = 1.1;
constexpr double kAzQ2 = 4.0, kAzS2 = 5.3, kAzN2 = 3.6;

const Direction kZPlus = unit(Vec3{0.0, 0.0, 1.0});
const Direction kZMinus = unit(Vec3{0.0, 0.0, -1.0});

ScattererModel two_point_on_z(const Mat3& lambda, double a) {
  return TwoPointCenters(lambda, Vec3{0.0, 0.0, a});
}

} // namespace

Mat3 preset_lambda_aniso() {
  Mat3 m;
  m(0, 0) = 1.0;
  m(0, 1) = m(1, 0) = 0.35;
  m(1, 1) = 0.7;
  m(2, 2) = 0.5;
  return m * 0.01;
}

Mat3 preset_lambda_iso(double scale) { return Mat3::identity() * scale; }

OnePhotonScenario one_photon_backscatter_scenario(double a, double omega, const Mat3& lambda,
                                                  double angular_width) {
  OnePhotonScenario sc{
      make_one_photon(omega, kZPlus, Pol2{1.0, 0.0}, angular_width, 0.01 * omega),
      Detector(kZMinus, kDist, 1, omega), two_point_on_z(lambda, a)};
  return sc;
}

CoherentScenario coherent_backscatter_scenario(double a, double omega, double lambda_scale) {
  return {make_coherent(omega, kZPlus, Pol2{1.0, 0.0}, Complex{1.0, 0.0}, 0.01, 0.01 * omega),
          Detector(kZMinus, 100.0, 0, omega),
          two_point_on_z(preset_lambda_iso(lambda_scale), a)};
}

TwoPhotonScenario two_photon_chi_scenario(double a, double omega1, double chi,
                                          double angular_width, double lambda_scale) {
  if (!(std::abs(chi) > 0.5) || !(std::abs(chi) < 1.0))
    throw ValidationError("two_photon_chi_scenario: chi must satisfy 1/2 < |chi| < 1");
  const double omega2 = kRatio21 * omega1;
  const double sigma1 = 0.95;
  const double nu1 = sigma1 - 2.0 * chi;
  const double sigma2 = 0.65;
  const double nu2 = sigma2 - chi / kRatio21;
  const Direction s1 = direction_with_projection(sigma1, kAzS1);
  const Direction n1 = direction_with_projection(nu1, kAzN1);
  const Direction s2 = direction_with_projection(sigma2, kAzS2);
  const Direction n2 = direction_with_projection(nu2, kAzN2);
  PolMatrix c{};
  c[0][0] = 1.0;
  TwoPhotonScenario sc{
      make_two_photon(make_envelope(omega1, s1, angular_width, 0.01 * omega1),
                      make_envelope(omega2, s2, angular_width, 0.01 * omega2), c),
      Detector(n1, kDist, 0, omega1), Detector(n2, kDist, 0, omega2),
      two_point_on_z(preset_lambda_iso(lambda_scale), a), chi};
  return sc;
}

TwoLaserScenario two_laser_scenario(double a, double omega1, double chi, double lambda_scale) {
  if (!(std::abs(chi) > 0.5) || !(std::abs(chi) < 1.0))
    throw ValidationError("two_laser_scenario: chi must satisfy 1/2 < |chi| < 1");
  const double omega2 = kRatio21 * omega1;
  const double sigma1 = 0.95;
  const double nu1 = sigma1 - 2.0 * chi;
  const double sigma2 = 0.65;
  const double nu2 = sigma2 - chi / kRatio21;
  LaserMode m1{make_envelope(omega1, direction_with_projection(sigma1, kAzS1), 0.01, 0.01 * omega1),
               Pol2{1.0, 0.0}};
  LaserMode m2{make_envelope(omega2, direction_with_projection(sigma2, kAzS2), 0.01, 0.01 * omega2),
               Pol2{1.0, 0.0}};
  return {make_two_mode_coherent(m1, m2, 1.0, PhaseMode::Random),
          Detector(direction_with_projection(nu1, kAzN1), kDist, 0, omega1),
          Detector(direction_with_projection(nu2, kAzN2), kDist, 0, omega2),
          two_point_on_z(preset_lambda_iso(lambda_scale), a), chi};
}

EntangledScenario entangled_chi_scenario(double a, double omega1, double chi,
                                         double angular_width, double lambda_scale) {
  if (!(std::abs(chi) > 0.5) || !(std::abs(chi) < 1.0))
    throw ValidationError("entangled_chi_scenario: chi must satisfy 1/2 < |chi| < 1");
  const double omega2 = kRatio21 * omega1;
  const double kappa1 = 0.95;
  const double sigma1 = kappa1;
  const double nu1 = kappa1 - 2.0 * chi;
  const double sigma2 = 0.85;
  const double kappa2 = sigma2 - chi / kRatio21;
  const double nu2 = 0.5 * (kappa2 + sigma2) - chi / kRatio21;
  PolMatrix c{};
  c[0][0] = 1.0;
  EntangledScenario sc{
      make_entangled_biphoton(direction_with_projection(kappa1, kAzQ1),
                              direction_with_projection(kappa2, kAzQ2),
                              direction_with_projection(sigma1, kAzS1),
                              direction_with_projection(sigma2, kAzS2), omega1, omega2, c,
                              angular_width, 0.01 * omega1),
      Detector(direction_with_projection(nu1, kAzN1), kDist, 0, omega1),
      Detector(direction_with_projection(nu2, kAzN2), kDist, 0, omega2),
      two_point_on_z(preset_lambda_iso(lambda_scale), a), chi};
  return sc;
}

// ---------------------------------------------------------------------------
// scan presets
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kScanPresets = {
    "one-photon-backscatter", "coherent-backscatter", "two-photon-chi09", "two-laser",
    "entangled-chi09"};

double scan_value(const std::string& name, double x) {
  // x is a * omega (a * omega1 for the pair scenarios); the carrier is fixed
  // per preset and the separation varies.
  if (name == "one-photon-backscatter") {
    const double omega = 1.0;
    const OnePhotonScenario sc =
        one_photon_backscatter_scenario(x / omega, omega, preset_lambda_aniso());
    return phi1(sc.state, sc.detector, sc.model, true).value;
  }
  if (name == "coherent-backscatter") {
    const double omega = 10.0;
    const CoherentScenario sc = coherent_backscatter_scenario(x / omega, omega, 0.1);
    return coherent_phi1(sc.state, sc.detector, sc.model);
  }
  if (name == "two-photon-chi09") {
    const double omega1 = 1.0;
    const TwoPhotonScenario sc = two_photon_chi_scenario(x / omega1, omega1);
    return phi2(sc.state, sc.det1, sc.det2, sc.model);
  }
  if (name == "two-laser") {
    const double omega1 = 1.0;
    const TwoLaserScenario sc = two_laser_scenario(x / omega1, omega1);
    return two_laser_phi2(sc.state, sc.det1, sc.det2, sc.model);
  }
  if (name == "entangled-chi09") {
    const double omega1 = 1.0;
    const EntangledScenario sc = entangled_chi_scenario(x / omega1, omega1);
    return entangled_phi2(sc.state, sc.det1, sc.det2, sc.model);
  }
  throw ValidationError("unknown scan preset: " + name);
}

SignalMetadata scan_metadata(const std::string& name) {
  SignalMetadata m;
  m.x_label = "a_omega";
  if (name == "one-photon-backscatter") {
    m.state_kind = "one_photon";
    m.geometry = "backscatter eliminated-component";
  } else if (name == "coherent-backscatter") {
    m.state_kind = "coherent";
    m.geometry = "backscatter full field";
  } else if (name == "two-photon-chi09") {
    m.state_kind = "two_photon";
    m.geometry = "chi constraint set";
    m.chi = 0.9;
  } else if (name == "two-laser") {
    m.state_kind = "two_mode_coherent";
    m.geometry = "chi constraint set";
    m.chi = 0.9;
  } else if (name == "entangled-chi09") {
    m.state_kind = "entangled_biphoton";
    m.geometry = "chi constraint set, two branches";
    m.chi = 0.9;
  }
  return m;
}

} // namespace

const std::vector<std::string>& scan_preset_names() { return kScanPresets; }

bool is_scan_preset(const std::string& name) {
  for (const auto& p : kScanPresets)
    if (p == name) return true;
  return false;
}

GridSpec default_scan_grid(const std::string& name) {
  if (!is_scan_preset(name)) throw ValidationError("unknown scan preset: " + name);
  return GridSpec{0.0, 4.0 * M_PI, 2000};
}

Signal1D run_scan_preset(const std::string& name, const GridSpec& grid, int threads) {
  if (!is_scan_preset(name)) throw ValidationError("unknown scan preset: " + name);
  Signal1D s = scan([&](double x) { return scan_value(name, x); },
                    grid_halfopen(grid.lo, grid.hi, grid.n), threads);
  s.meta = scan_metadata(name);
  return s;
}

// ---------------------------------------------------------------------------
// fit presets
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kFitPresets = {"fit-one-photon", "fit-coherent", "fit-two-photon",
                                              "fit-two-laser", "fit-entangled"};

double fit_model_value(const std::string& scenario, double a, double omega) {
  if (scenario == "one-photon-backscatter") {
    const OnePhotonScenario sc = one_photon_backscatter_scenario(a, omega, preset_lambda_aniso());
    return phi1(sc.state, sc.detector, sc.model, true).value;
  }
  if (scenario == "coherent-backscatter") {
    const CoherentScenario sc = coherent_backscatter_scenario(a, omega, 0.1);
    return coherent_phi1(sc.state, sc.detector, sc.model);
  }
  if (scenario == "two-photon-chi09") {
    const TwoPhotonScenario sc = two_photon_chi_scenario(a, omega);
    return phi2(sc.state, sc.det1, sc.det2, sc.model);
  }
  if (scenario == "two-laser") {
    const TwoLaserScenario sc = two_laser_scenario(a, omega);
    return two_laser_phi2(sc.state, sc.det1, sc.det2, sc.model);
  }
  if (scenario == "entangled-chi09") {
    const EntangledScenario sc = entangled_chi_scenario(a, omega);
    return entangled_phi2(sc.state, sc.det1, sc.det2, sc.model);
  }
  throw ValidationError("unknown fit scenario: " + scenario);
}

} // namespace

const std::vector<std::string>& fit_preset_names() { return kFitPresets; }

bool is_fit_preset(const std::string& name) {
  for (const auto& p : kFitPresets)
    if (p == name) return true;
  return false;
}

FitPresetInfo fit_preset_info(const std::string& name) {
  FitPresetInfo info;
  info.a_true = 1.3;
  if (name == "fit-one-photon") {
    info.scenario = "one-photon-backscatter";
    info.grid = {5.0, 7.5, 300};
    info.bounds_lo = 1.1;
    info.bounds_hi = 1.5;
    info.chi_eff = 1.0;
  } else if (name == "fit-coherent") {
    info.scenario = "coherent-backscatter";
    info.grid = {10.0, 10.2, 400};
    info.bounds_lo = 1.15;
    info.bounds_hi = 1.45;
    info.chi_eff = 0.5; // dominant oscillation is cos(2 a omega)
  } else if (name == "fit-two-photon") {
    info.scenario = "two-photon-chi09";
    info.grid = {9.375, 9.425, 200};
    info.bounds_lo = 0.8;
    info.bounds_hi = 1.8;
    info.chi_eff = 0.9;
    info.default_prior = DomainPrior{0.9, 3}; // a_true * omega_ref sits in D_3
  } else if (name == "fit-two-laser") {
    info.scenario = "two-laser";
    info.grid = {5.0, 8.0, 300};
    info.bounds_lo = 1.1;
    info.bounds_hi = 1.5;
    info.chi_eff = 0.9;
  } else if (name == "fit-entangled") {
    info.scenario = "entangled-chi09";
    info.grid = {3.6, 6.4, 300};
    info.bounds_lo = 1.0;
    info.bounds_hi = 1.6;
    info.chi_eff = 0.9;
  } else {
    throw ValidationError("unknown fit preset: " + name);
  }
  return info;
}

Signal1D generate_fit_scan(const std::string& name, double noise_sigma, std::uint64_t seed) {
  const FitPresetInfo info = fit_preset_info(name);
  Signal1D s = scan([&](double omega) { return fit_model_value(info.scenario, info.a_true, omega); },
                    grid_halfopen(info.grid.lo, info.grid.hi, info.grid.n));
  s.meta = scan_metadata(info.scenario);
  s.meta.x_label = "omega";
  if (noise_sigma > 0.0) s = add_multiplicative_noise(s, noise_sigma, seed);
  return s;
}

FitProblem make_fit_problem(const std::string& name, Signal1D observed, bool use_prior) {
  const FitPresetInfo info = fit_preset_info(name);
  FitProblem p;
  p.observed = std::move(observed);
  p.model = [scenario = info.scenario](double a, double omega) {
    return fit_model_value(scenario, a, omega);
  };
  p.a_lo = info.bounds_lo;
  p.a_hi = info.bounds_hi;
  p.chi_eff = info.chi_eff;
  if (use_prior) {
    if (!info.default_prior)
      throw ValidationError("fit preset '" + name + "' has no default prior domain");
    p.prior = info.default_prior;
  }
  return p;
}

} // namespace bornscat
