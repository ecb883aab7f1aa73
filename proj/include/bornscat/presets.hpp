#pragma once
#include <optional>
#include <string>
#include <vector>

#include "bornscat/correlators.hpp"
#include "bornscat/inverse.hpp"

namespace bornscat {

/// Frozen coupling tensors used by the bundled scenarios.
Mat3 preset_lambda_aniso();           ///< generic symmetric tensor with off-diagonal xy coupling
Mat3 preset_lambda_iso(double scale); ///< scale * identity

/// Back-scattering one-photon scenario: beam along +z, detector at -z
/// measuring the polarization-eliminated y component, two point centers on
/// the z axis at +/- a/... separation parameter a.
struct OnePhotonScenario {
  OnePhotonState state;
  Detector detector;
  ScattererModel model;
};
OnePhotonScenario one_photon_backscatter_scenario(double a, double omega, const Mat3& lambda,
                                                  double angular_width = 0.01);

/// Same geometry for a coherent beam, measuring the un-eliminated x
/// component at moderate distance so the incident/scattered cross term is
/// visible.
struct CoherentScenario {
  CoherentState state;
  Detector detector;
  ScattererModel model;
};
CoherentScenario coherent_backscatter_scenario(double a, double omega, double lambda_scale);

/// Off-axis two-photon scenario realizing sigma1 - nu1 = 2 chi and
/// omega2 (sigma2 - nu2) = omega1 chi with omega2 = 0.75 omega1.
struct TwoPhotonScenario {
  TwoPhotonState state;
  Detector det1;
  Detector det2;
  ScattererModel model;
  double chi;
};
TwoPhotonScenario two_photon_chi_scenario(double a, double omega1, double chi = 0.9,
                                          double angular_width = 0.01,
                                          double lambda_scale = 0.01);

/// The same geometry driven by two independent laser modes.
struct TwoLaserScenario {
  TwoModeCoherentState state;
  Detector det1;
  Detector det2;
  ScattererModel model;
  double chi;
};
TwoLaserScenario two_laser_scenario(double a, double omega1, double chi = 0.9,
                                    double lambda_scale = 0.01);

/// Two-branch entangled scenario satisfying the kappa/sigma/nu constraint
/// set for the given chi.
struct EntangledScenario {
  EntangledBiphotonState state;
  Detector det1;
  Detector det2;
  ScattererModel model;
  double chi;
};
EntangledScenario entangled_chi_scenario(double a, double omega1, double chi = 0.9,
                                         double angular_width = 0.01,
                                         double lambda_scale = 0.01);

// --- scan presets (x = a * omega at fixed carrier) ------------------------

struct GridSpec {
  double lo = 0.0;
  double hi = 4.0 * M_PI;
  int n = 2000;
};

const std::vector<std::string>& scan_preset_names();
bool is_scan_preset(const std::string& name);
GridSpec default_scan_grid(const std::string& name);
Signal1D run_scan_preset(const std::string& name, const GridSpec& grid, int threads = 1);

// --- fit presets (x = scan frequency at hidden separation) ----------------

struct FitPresetInfo {
  std::string scenario;    ///< underlying scan scenario name
  double a_true = 1.3;     ///< separation used by synthetic generation
  GridSpec grid;           ///< frequency grid
  double bounds_lo = 1.0;
  double bounds_hi = 1.6;
  double chi_eff = 1.0;
  std::optional<DomainPrior> default_prior;
};

const std::vector<std::string>& fit_preset_names();
bool is_fit_preset(const std::string& name);
FitPresetInfo fit_preset_info(const std::string& name);

/// Synthetic frequency scan of the preset's forward model at its pinned
/// separation, optionally with multiplicative noise.
Signal1D generate_fit_scan(const std::string& name, double noise_sigma, std::uint64_t seed);

/// Fit problem for observed data of the given preset; use_prior applies the
/// preset's default prior domain when it has one.
FitProblem make_fit_problem(const std::string& name, Signal1D observed, bool use_prior);

} // namespace bornscat
