#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bornscat/cli_ops.hpp"
#include "bornscat/errors.hpp"

namespace {

int dispatch(int argc, char** argv) {
  CLI::App app{"bornscat: far-field spectral correlations of quantum light scattered by weak "
               "dielectrics, with visibility/resolution analysis and parameter recovery"};
  app.require_subcommand(1);

  // fig1
  auto* fig1 = app.add_subcommand("fig1", "emit the three resolution curves as CSV");
  double chi = 0.9;
  bornscat::GridSpec fig1_grid{0.0, 4.0 * M_PI, 10000};
  std::string fig1_out = "fig1.csv";
  fig1->add_option("--chi", chi, "geometry parameter, 1/2 < |chi| < 1");
  fig1->add_option("--grid-min", fig1_grid.lo, "scan start (a*omega)");
  fig1->add_option("--grid-max", fig1_grid.hi, "scan end (a*omega, excluded)");
  fig1->add_option("--grid-points", fig1_grid.n, "number of points");
  fig1->add_option("--out", fig1_out, "output CSV path");

  // scan
  auto* scan = app.add_subcommand("scan", "run a correlator scan described by a config file");
  std::string scan_config;
  bornscat::CliOverrides scan_over;
  scan->add_option("--config", scan_config, "key=value config file")->required();
  scan->add_option("--out", scan_over.out, "output path (overrides the config)");
  scan->add_option("--format", scan_over.format, "csv|json (overrides the config)");
  scan->add_option("--seed", scan_over.seed, "seed for synthetic noise (overrides the config)");
  scan->add_option("--threads", scan_over.threads, "worker threads (overrides the config)");

  // fit
  auto* fit = app.add_subcommand("fit", "recover the separation parameter from a signal file");
  std::string fit_config, fit_data;
  bornscat::CliOverrides fit_over;
  fit->add_option("--config", fit_config, "key=value config file")->required();
  fit->add_option("--data", fit_data, "observed signal (csv or json)")->required();
  fit->add_option("--out", fit_over.out, "report path (overrides the config)");
  fit->add_option("--threads", fit_over.threads, "worker threads (overrides the config)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "closed-form vs quadrature convergence sweep");
  std::string oracle_config;
  oracle->add_option("--config", oracle_config, "key=value config file")->required();

  // visibility
  auto* vis = app.add_subcommand("visibility", "visibility / extrema-spacing report for a signal");
  std::string vis_data, vis_out;
  std::optional<double> window_lo, window_hi, vis_chi;
  vis->add_option("--data", vis_data, "signal file (csv or json)")->required();
  vis->add_option("--window-lo", window_lo, "analysis window start (default: full range)");
  vis->add_option("--window-hi", window_hi, "analysis window end");
  vis->add_option("--chi", vis_chi, "chi for domain classification (default: signal metadata)");
  vis->add_option("--out", vis_out, "also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return bornscat::kExitValidation;
  }

  if (fig1->parsed()) {
    bornscat::cmd_fig1(chi, fig1_grid, fig1_out);
    return bornscat::kExitOk;
  }
  if (scan->parsed()) {
    bornscat::cmd_scan(scan_config, scan_over);
    return bornscat::kExitOk;
  }
  if (fit->parsed()) return bornscat::cmd_fit(fit_config, fit_data, fit_over);
  if (oracle->parsed()) {
    bornscat::cmd_oracle(oracle_config);
    return bornscat::kExitOk;
  }
  if (vis->parsed()) {
    bornscat::cmd_visibility(vis_data, window_lo, window_hi, vis_chi, vis_out);
    return bornscat::kExitOk;
  }
  return bornscat::kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const bornscat::ValidationError& e) {
    std::cerr << "error (validation): " << e.what() << std::endl;
    return bornscat::kExitValidation;
  } catch (const bornscat::NumericalError& e) {
    std::cerr << "error (numerical): " << e.what() << std::endl;
    return bornscat::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return bornscat::kExitNumerical;
  }
}
