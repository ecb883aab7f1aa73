#pragma once
#include <functional>
#include <string>
#include <vector>

#include "bornscat/linalg.hpp"

namespace bornscat {

struct SignalMetadata {
  std::string state_kind;
  std::string geometry;
  std::string x_label = "a_omega";
  double chi = 0.0; ///< 0 when not applicable
};

/// Scanned correlator: strictly increasing x, nonnegative y.
struct Signal1D {
  std::vector<double> x;
  std::vector<double> y;
  SignalMetadata meta;
};

/// Validates the Signal1D invariants; throws ValidationError on violation.
void validate_signal(const Signal1D& s);

/// (max - min) / (max + min); 0 for an identically-zero signal. Negative
/// samples indicate an upstream bug and are rejected.
double visibility(const Signal1D& s);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double eps = 0.0) const { return x >= lo - eps && x <= hi + eps; }
  double length() const { return hi - lo; }
};

/// Resolution-enhancing window D_n = (1/chi) [pi/4 + pi n, 3 pi/4 + pi n].
Interval domain_Dn(double chi, int n);

enum class DomainClass { InsideDn, OutsideDn, NotApplicable };

/// InsideDn when the window fits inside one D_n, OutsideDn when it meets
/// none, NotApplicable otherwise (or when chi is not provided).
DomainClass classify_window(const Interval& window, double chi);

/// Refined local extremum: position by 3-point quadratic interpolation,
/// plateaus resolved to their midpoint.
struct Extremum {
  double x = 0.0;
  double y = 0.0;
  bool is_max = false;
};

std::vector<Extremum> find_extrema(const Signal1D& s);

/// Mean and spread of |x_max - x_min| over adjacent extrema pairs whose
/// endpoints lie in the window.
struct SpacingStats {
  double mean = 0.0;
  double spread = 0.0; ///< (max - min) / mean over the pairs
  int pairs = 0;
  bool high_spread = false; ///< spread beyond 10%
};

SpacingStats extrema_spacing(const Signal1D& s, const Interval& window);

struct ResolutionReport {
  double visibility = 0.0;
  double extrema_spacing = 0.0;
  double spacing_spread = 0.0;
  DomainClass domain = DomainClass::NotApplicable;
  double chi = 0.0;
};

ResolutionReport analyze(const Signal1D& s, const Interval& window, double chi);

/// Evaluates f over the grid, optionally with several worker threads; the
/// result is independent of the thread count. Evaluation errors are
/// rethrown annotated with the offending x.
Signal1D scan(const std::function<double(double)>& f, const std::vector<double>& grid,
              int threads = 1);

/// Half-open uniform grid: lo + i (hi - lo) / n for i = 0..n-1.
std::vector<double> grid_halfopen(double lo, double hi, int n);

/// Two-column CSV with a units comment header, and a JSON document carrying
/// the metadata; both round-trip.
void write_signal_csv(const Signal1D& s, const std::string& path);
Signal1D read_signal_csv(const std::string& path);
void write_signal_json(const Signal1D& s, const std::string& path);
Signal1D read_signal_json(const std::string& path);

std::string resolution_report_json(const ResolutionReport& r);

} // namespace bornscat
