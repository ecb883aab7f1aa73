#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bornscat/analysis.hpp"

namespace bornscat {

/// Prior window on the scan variable: restricts the separation search to the
/// values whose a * omega_ref falls inside D_n(chi).
struct DomainPrior {
  double chi = 0.9;
  int n = 0;
};

/// Least-squares recovery of the separation parameter from a scanned
/// correlator. The forward family maps (a, x) to the model value on the
/// observed grid; the overall scale is solved in closed form per candidate.
struct FitProblem {
  Signal1D observed;                            ///< x = scan frequency grid
  std::function<double(double, double)> model;  ///< model(a, x)
  double a_lo = 0.0;
  double a_hi = 1.0;
  std::optional<DomainPrior> prior;
  double chi_eff = 1.0; ///< coefficient of the dominant cos^2(2 chi_eff a x) factor
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double a = 0.0;
  double residual_rms = 0.0;
};

struct FitResult {
  double a_hat = 0.0;
  double scale_hat = 0.0;
  double residual_rms = 0.0;
  Bracket bracket;
  int iterations = 0;
  bool ambiguous = false;
  std::vector<Bracket> candidates; ///< near-minimal brackets, best first
};

struct FitOptions {
  int coarse_nodes = 256; ///< >= 200 per the search contract
  int threads = 1;
};

/// Coarse grid search plus golden-section refinement; deterministic.
/// Throws NumericalError("unidentifiable ...") when the objective is flat
/// over the search interval; near-degenerate distinct minima set the
/// ambiguous flag and are returned as candidate brackets.
FitResult fit(const FitProblem& problem, const FitOptions& options = {});

/// Periodicity aliases {a + k pi / (2 omega_ref chi_eff)} of the dominant
/// oscillation that intersect the bounds; omega_ref is the observed-grid
/// midpoint.
std::vector<double> identifiability_aliases(const FitProblem& problem, double a_ref);

/// Multiplicative Gaussian intensity noise, photocount-like; seeded.
Signal1D add_multiplicative_noise(const Signal1D& s, double sigma, std::uint64_t seed);

std::string fit_report_json(const FitResult& r);

} // namespace bornscat
