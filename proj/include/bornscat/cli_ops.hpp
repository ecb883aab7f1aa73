#pragma once
#include <map>
#include <optional>
#include <set>
#include <string>

#include "bornscat/presets.hpp"

namespace bornscat {

/// Plain-text key=value configuration with per-key line numbers for
/// diagnostics. '#' starts a comment; keys may not repeat; every key must be
/// consumed by the command that loads the file.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;
  std::string require_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double require_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);

  /// Fails with line diagnostics when unconsumed keys remain.
  void finish() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string origin_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> consumed_;

  const Entry& lookup(const std::string& key);
};

/// Exit codes shared by the command layer: 0 success, 2 validation,
/// 3 numerical failure, 4 ambiguous fit.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitAmbiguous = 4,
};

/// Writes the three resolution curves (x, cos^2(2xc)cos^2(xc), cos^2(2xc),
/// cos^2(2xc)cos^2(xc)cos^2(xc/2)) as CSV; chi must lie in (1/2, 1).
void cmd_fig1(double chi, const GridSpec& grid, const std::string& out_path);

/// Command-line overrides taking precedence over config-file values.
struct CliOverrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

/// Runs a preset or explicit scan described by the config and writes the
/// signal; with a fit_preset key it emits that preset's synthetic frequency
/// scan instead.
void cmd_scan(const std::string& config_path, const CliOverrides& overrides = {});

/// Fits the data file against the configured preset family and writes the
/// JSON report; returns kExitAmbiguous when rival minima survive.
int cmd_fit(const std::string& config_path, const std::string& data_path,
            const CliOverrides& overrides = {});

/// Closed-form vs quadrature convergence sweep; writes/prints the error
/// table and fails on non-monotone or non-convergent errors.
void cmd_oracle(const std::string& config_path);

/// Visibility / extrema-spacing / domain report for a signal file.
void cmd_visibility(const std::string& data_path, std::optional<double> window_lo,
                    std::optional<double> window_hi, std::optional<double> chi,
                    const std::string& out_path);

} // namespace bornscat
