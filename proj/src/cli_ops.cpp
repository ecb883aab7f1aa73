#include "bornscat/cli_ops.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bornscat/errors.hpp"
#include "bornscat/oracle.hpp"
#include "json.hpp"

namespace bornscat {

// ---------------------------------------------------------------------------
// ConfigFile
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << origin << ":" << lineno << ": expected 'key = value', got '" << line << "'";
      throw ValidationError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << origin << ":" << lineno << ": empty key";
      throw ValidationError(os.str());
    }
    if (cfg.entries_.count(key)) {
      std::ostringstream os;
      os << origin << ":" << lineno << ": duplicate key '" << key << "'";
      throw ValidationError(os.str());
    }
    cfg.entries_[key] = Entry{value, lineno};
  }
  return cfg;
}

bool ConfigFile::has(const std::string& key) const { return entries_.count(key) > 0; }

const ConfigFile::Entry& ConfigFile::lookup(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw ValidationError(origin_ + ": missing required key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string ConfigFile::require_string(const std::string& key) { return lookup(key).value; }

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) {
  if (!has(key)) return fallback;
  return lookup(key).value;
}

double ConfigFile::require_double(const std::string& key) {
  const Entry& e = lookup(key);
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0') {
    std::ostringstream os;
    os << origin_ << ":" << e.line << ": key '" << key << "' is not a number: '" << e.value << "'";
    throw ValidationError(os.str());
  }
  return v;
}

double ConfigFile::get_double(const std::string& key, double fallback) {
  if (!has(key)) return fallback;
  return require_double(key);
}

int ConfigFile::get_int(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  const double v = require_double(key);
  if (v != std::floor(v)) throw ValidationError(origin_ + ": key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::uint64_t ConfigFile::get_u64(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) return fallback;
  const double v = require_double(key);
  if (v < 0 || v != std::floor(v))
    throw ValidationError(origin_ + ": key '" + key + "' must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const Entry& e = lookup(key);
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  std::ostringstream os;
  os << origin_ << ":" << e.line << ": key '" << key << "' must be true/false";
  throw ValidationError(os.str());
}

void ConfigFile::finish() const {
  std::ostringstream os;
  bool bad = false;
  for (const auto& [key, entry] : entries_) {
    if (consumed_.count(key)) continue;
    if (bad) os << "; ";
    os << origin_ << ":" << entry.line << ": unknown key '" << key << "'";
    bad = true;
  }
  if (bad) throw ValidationError(os.str());
}

// ---------------------------------------------------------------------------
// fig1
// ---------------------------------------------------------------------------

void cmd_fig1(double chi, const GridSpec& grid, const std::string& out_path) {
  if (!(std::abs(chi) > 0.5) || !(std::abs(chi) < 1.0))
    throw ValidationError("fig1: chi must satisfy 1/2 < |chi| < 1 (constraint of the chi geometry)");
  const std::vector<double> xs = grid_halfopen(grid.lo, grid.hi, grid.n);
  std::ostringstream body;
  body << "# units: natural (c = hbar = epsilon0 = 1); x = a*omega\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "# chi: %.17g\n", chi);
  body << buf << "x,red,black,green\n";
  for (double x : xs) {
    const double c2 = std::cos(2.0 * chi * x) * std::cos(2.0 * chi * x);
    const double c1 = std::cos(chi * x) * std::cos(chi * x);
    const double ch = std::cos(0.5 * chi * x) * std::cos(0.5 * chi * x);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, c2 * c1, c2, c2 * c1 * ch);
    body << buf;
  }
  std::ofstream out(out_path);
  if (!out) throw ValidationError("fig1: cannot open output file: " + out_path);
  out << body.str();
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

namespace {

Vec3 parse_vec3(const std::string& text, const std::string& what) {
  Vec3 v;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &v.v[0], &v.v[1], &v.v[2]) != 3)
    throw ValidationError(what + ": expected 'x,y,z', got '" + text + "'");
  return v;
}

int parse_component(const std::string& text, const std::string& what) {
  if (text == "x" || text == "0") return 0;
  if (text == "y" || text == "1") return 1;
  if (text == "z" || text == "2") return 2;
  throw ValidationError(what + ": expected x|y|z, got '" + text + "'");
}

Mat3 parse_lambda(const std::string& text) {
  if (text.rfind("iso:", 0) == 0) {
    const double s = std::strtod(text.c_str() + 4, nullptr);
    return preset_lambda_iso(s);
  }
  if (text.rfind("full:", 0) == 0) {
    double l11, l12, l13, l22, l23, l33;
    if (std::sscanf(text.c_str() + 5, "%lf,%lf,%lf,%lf,%lf,%lf", &l11, &l12, &l13, &l22, &l23,
                    &l33) != 6)
      throw ValidationError("model_lambda: full form needs l11,l12,l13,l22,l23,l33");
    Mat3 m;
    m(0, 0) = l11;
    m(0, 1) = m(1, 0) = l12;
    m(0, 2) = m(2, 0) = l13;
    m(1, 1) = l22;
    m(1, 2) = m(2, 1) = l23;
    m(2, 2) = l33;
    return m;
  }
  throw ValidationError("model_lambda: expected iso:<scale> or full:<6 components>");
}

Detector parse_detector(ConfigFile& cfg, const std::string& prefix) {
  const Direction n = unit(parse_vec3(cfg.require_string(prefix + "_direction"),
                                      prefix + "_direction"));
  const double dist = cfg.get_double(prefix + "_distance", 1.0e6);
  const int comp = parse_component(cfg.require_string(prefix + "_component"),
                                   prefix + "_component");
  const double freq = cfg.require_double(prefix + "_frequency");
  return Detector(n, dist, comp, freq);
}

void write_signal(const Signal1D& s, const std::string& path, const std::string& format) {
  if (format == "csv")
    write_signal_csv(s, path);
  else if (format == "json")
    write_signal_json(s, path);
  else
    throw ValidationError("format must be csv or json, got '" + format + "'");
}

Signal1D read_signal_any(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return read_signal_json(path);
  return read_signal_csv(path);
}

/// Explicit (state, model, geometry) scan: either over a*omega with the
/// model rebuilt per point, or over the detection frequency with a fixed
/// model (the carrier tracks the scanned frequency).
Signal1D run_explicit_scan(ConfigFile& cfg, const GridSpec& grid, int threads) {
  const std::string state_path = cfg.require_string("state_file");
  std::ifstream in(state_path);
  if (!in) throw ValidationError("cannot open state file: " + state_path);
  std::stringstream ss;
  ss << in.rdbuf();
  const AnyState state = state_from_json(ss.str());

  const std::string scan_variable = cfg.get_string("scan_variable", "a_omega");
  const std::string model_kind = cfg.get_string("model", "two_point");
  const bool include_incident = cfg.get_bool("include_incident", false);
  const Detector det1 = parse_detector(cfg, "detector1");
  const bool pair_state = state.kind == AnyState::Kind::TwoPhoton ||
                          state.kind == AnyState::Kind::EntangledBiphoton ||
                          state.kind == AnyState::Kind::TwoModeCoherent;
  std::optional<Detector> det2;
  if (pair_state) det2 = parse_detector(cfg, "detector2");

  std::function<ScattererModel(double)> model_at;
  std::function<Detector(double)> det1_at = [det1](double) { return det1; };
  std::function<OnePhotonState(double)> one_photon_at;
  std::function<CoherentState(double)> coherent_at;

  if (scan_variable == "a_omega") {
    // Separation/radius rebuilt per point: a = x / omega at detector 1.
    const Mat3 lambda = parse_lambda(cfg.get_string("model_lambda", "iso:0.01"));
    Vec3 axis{0.0, 0.0, 1.0};
    if (cfg.has("model_axis"))
      axis = unit(parse_vec3(cfg.require_string("model_axis"), "model_axis")).v;
    const double omega_scale = std::abs(det1.frequency);
    model_at = [=](double x) -> ScattererModel {
      const double a = x / omega_scale;
      if (model_kind == "two_point") return TwoPointCenters(lambda, axis * a);
      if (model_kind == "sphere") {
        if (!(a > 0.0)) throw ValidationError("sphere scan requires a positive scan coordinate");
        return Sphere(lambda, a);
      }
      throw ValidationError("model must be two_point or sphere for a_omega scans, got '" +
                            model_kind + "'");
    };
    if (state.kind == AnyState::Kind::OnePhoton)
      one_photon_at = [st = state.one_photon](double) { return st; };
    if (state.kind == AnyState::Kind::Coherent)
      coherent_at = [st = state.coherent](double) { return st; };
  } else if (scan_variable == "omega") {
    if (pair_state)
      throw ValidationError("scan_variable = omega supports one-detector states only");
    ScattererModel fixed = [&]() -> ScattererModel {
      if (model_kind == "grid") {
        const std::string path = cfg.require_string("model_grid_file");
        if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
          return load_grid_csv(path);
        return load_grid_binary(path);
      }
      const Mat3 lambda = parse_lambda(cfg.get_string("model_lambda", "iso:0.01"));
      if (model_kind == "two_point") {
        Vec3 axis{0.0, 0.0, 1.0};
        if (cfg.has("model_axis"))
          axis = unit(parse_vec3(cfg.require_string("model_axis"), "model_axis")).v;
        return TwoPointCenters(lambda, axis * cfg.require_double("model_separation"));
      }
      if (model_kind == "sphere") return Sphere(lambda, cfg.require_double("model_radius"));
      throw ValidationError("model must be two_point, sphere or grid, got '" + model_kind + "'");
    }();
    model_at = [fixed](double) { return fixed; };
    det1_at = [det1](double x) {
      return Detector(det1.direction, det1.distance, det1.component, x);
    };
    // the source is tuned along with the detection frequency
    if (state.kind == AnyState::Kind::OnePhoton)
      one_photon_at = [st = state.one_photon](double x) {
        OnePhotonState s = st;
        s.envelope.carrier_frequency = x;
        return s;
      };
    else if (state.kind == AnyState::Kind::Coherent)
      coherent_at = [st = state.coherent](double x) {
        CoherentState s = st;
        s.envelope.carrier_frequency = x;
        return s;
      };
  } else {
    throw ValidationError("scan_variable must be a_omega or omega, got '" + scan_variable + "'");
  }

  auto value_at = [&](double x) -> double {
    const ScattererModel model = model_at(x);
    const Detector d1 = det1_at(x);
    switch (state.kind) {
      case AnyState::Kind::OnePhoton:
        return phi1(one_photon_at(x), d1, model, include_incident).value;
      case AnyState::Kind::Coherent:
        return coherent_phi1(coherent_at(x), d1, model);
      case AnyState::Kind::TwoPhoton:
        return phi2(state.two_photon, d1, *det2, model);
      case AnyState::Kind::EntangledBiphoton:
        return entangled_phi2(state.entangled, d1, *det2, model);
      case AnyState::Kind::TwoModeCoherent:
        return two_laser_phi2(state.two_mode, d1, *det2, model);
    }
    throw ValidationError("unsupported state kind");
  };

  Signal1D s = scan(value_at, grid_halfopen(grid.lo, grid.hi, grid.n), threads);
  s.meta.x_label = scan_variable;
  s.meta.geometry = "explicit";
  switch (state.kind) {
    case AnyState::Kind::OnePhoton: s.meta.state_kind = "one_photon"; break;
    case AnyState::Kind::Coherent: s.meta.state_kind = "coherent"; break;
    case AnyState::Kind::TwoPhoton: s.meta.state_kind = "two_photon"; break;
    case AnyState::Kind::EntangledBiphoton: s.meta.state_kind = "entangled_biphoton"; break;
    case AnyState::Kind::TwoModeCoherent: s.meta.state_kind = "two_mode_coherent"; break;
  }
  return s;
}

} // namespace

void cmd_scan(const std::string& config_path, const CliOverrides& overrides) {
  ConfigFile cfg = ConfigFile::parse_file(config_path);
  std::string out_path = cfg.get_string("out", "");
  if (overrides.out) out_path = *overrides.out;
  if (out_path.empty()) throw ValidationError(config_path + ": missing required key 'out'");
  std::string format = cfg.get_string("format", "csv");
  if (overrides.format) format = *overrides.format;
  int threads = cfg.get_int("threads", 1);
  if (overrides.threads) threads = *overrides.threads;
  if (threads < 1) throw ValidationError("threads must be >= 1");
  std::uint64_t seed = cfg.get_u64("seed", 1);
  if (overrides.seed) seed = *overrides.seed;

  Signal1D signal;
  if (cfg.has("fit_preset")) {
    const std::string name = cfg.require_string("fit_preset");
    if (!is_fit_preset(name)) throw ValidationError("unknown fit preset: " + name);
    const double noise = cfg.get_double("noise", 0.0);
    cfg.finish();
    signal = generate_fit_scan(name, noise, seed);
  } else if (cfg.has("preset")) {
    const std::string name = cfg.require_string("preset");
    if (!is_scan_preset(name)) throw ValidationError("unknown scan preset: " + name);
    GridSpec grid = default_scan_grid(name);
    grid.lo = cfg.get_double("grid_min", grid.lo);
    grid.hi = cfg.get_double("grid_max", grid.hi);
    grid.n = cfg.get_int("grid_points", grid.n);
    if (!(grid.hi > grid.lo)) throw ValidationError("grid bounds must be ordered");
    if (grid.n < 2) throw ValidationError("grid_points must be >= 2");
    cfg.finish();
    signal = run_scan_preset(name, grid, threads);
  } else {
    GridSpec grid{0.0, 4.0 * M_PI, 2000};
    grid.lo = cfg.get_double("grid_min", grid.lo);
    grid.hi = cfg.get_double("grid_max", grid.hi);
    grid.n = cfg.get_int("grid_points", grid.n);
    if (!(grid.hi > grid.lo)) throw ValidationError("grid bounds must be ordered");
    if (grid.n < 2) throw ValidationError("grid_points must be >= 2");
    signal = run_explicit_scan(cfg, grid, threads);
    cfg.finish();
  }
  write_signal(signal, out_path, format);
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const std::string& config_path, const std::string& data_path,
            const CliOverrides& overrides) {
  ConfigFile cfg = ConfigFile::parse_file(config_path);
  const std::string name = cfg.require_string("fit_preset");
  if (!is_fit_preset(name)) throw ValidationError("unknown fit preset: " + name);
  std::string out_path = cfg.get_string("out", "");
  if (overrides.out) out_path = *overrides.out;
  if (out_path.empty()) throw ValidationError(config_path + ": missing required key 'out'");
  const std::string prior_key = cfg.get_string("prior_domain", "none");
  const double bounds_lo = cfg.get_double("bounds_lo", 0.0);
  const double bounds_hi = cfg.get_double("bounds_hi", 0.0);
  int threads = cfg.get_int("threads", 1);
  if (overrides.threads) threads = *overrides.threads;
  const double prior_chi = cfg.get_double("prior_chi", 0.9);
  cfg.finish();

  const Signal1D observed = read_signal_any(data_path);
  FitProblem problem = make_fit_problem(name, observed, false);
  if (bounds_lo > 0.0) problem.a_lo = bounds_lo;
  if (bounds_hi > 0.0) problem.a_hi = bounds_hi;
  if (prior_key == "default") {
    problem.prior = fit_preset_info(name).default_prior;
    if (!problem.prior)
      throw ValidationError("fit preset '" + name + "' has no default prior domain");
  } else if (prior_key.rfind("n:", 0) == 0) {
    problem.prior = DomainPrior{prior_chi, std::atoi(prior_key.c_str() + 2)};
  } else if (prior_key != "none") {
    throw ValidationError("prior_domain must be none|default|n:<int>, got '" + prior_key + "'");
  }

  FitOptions options;
  options.threads = threads;
  const FitResult result = fit(problem, options);

  nlohmann::json j = nlohmann::json::parse(fit_report_json(result));
  j["fit_preset"] = name;
  j["aliases"] = identifiability_aliases(problem, result.a_hat);
  std::ofstream out(out_path);
  if (!out) throw ValidationError("fit: cannot open output file: " + out_path);
  out << j.dump(2) << "\n";
  return result.ambiguous ? kExitAmbiguous : kExitOk;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

void cmd_oracle(const std::string& config_path) {
  ConfigFile cfg = ConfigFile::parse_file(config_path);
  const double a_omega = cfg.get_double("a_omega", 3.0);
  const std::string widths_text = cfg.get_string("widths", "0.04,0.02,0.01");
  QuadratureSpec spec1;
  spec1.n_theta = cfg.get_int("n_theta", 1024);
  spec1.n_phi = cfg.get_int("n_phi", 64);
  QuadratureSpec spec2;
  spec2.n_theta = cfg.get_int("n_theta_pair", 512);
  spec2.n_phi = cfg.get_int("n_phi_pair", 1024);
  const double pair_width = cfg.get_double("pair_width", 0.02);
  const bool run_pair = cfg.get_bool("run_pair", true);
  const std::string out_path = cfg.get_string("out", "");
  cfg.finish();
  if (spec1.n_theta < 8 || spec1.n_phi < 8 || spec2.n_theta < 8 || spec2.n_phi < 8)
    throw ValidationError("oracle: quadrature node counts must be >= 8");

  std::vector<double> widths;
  {
    std::istringstream ws(widths_text);
    std::string tok;
    while (std::getline(ws, tok, ',')) {
      const double w = std::strtod(tok.c_str(), nullptr);
      if (!(w > 0.0)) throw ValidationError("oracle: widths must be positive");
      widths.push_back(w);
    }
    if (widths.empty()) throw ValidationError("oracle: no widths given");
  }

  auto rel_err = [](double approx, double exact) {
    if (exact == 0.0 && approx == 0.0) return 0.0;
    return std::abs(approx - exact) / std::max(std::abs(exact), 1e-300);
  };

  const double omega = 1.0;
  nlohmann::json rows = nlohmann::json::array();
  double prev = -1.0;
  bool monotone = true;
  for (double w : widths) {
    const OnePhotonScenario sc =
        one_photon_backscatter_scenario(a_omega / omega, omega, preset_lambda_aniso(), w);
    const double closed = phi1(sc.state, sc.detector, sc.model, false).value;
    const double brute = phi1_bruteforce(sc.state, sc.detector, sc.model, spec1);
    const double err = rel_err(brute, closed);
    rows.push_back({{"width", w}, {"bruteforce", brute}, {"closed_form", closed},
                    {"rel_err", err}});
    if (prev >= 0.0 && err > prev) monotone = false;
    prev = err;
  }

  nlohmann::json j{{"a_omega", a_omega}, {"phi1_sweep", rows}, {"phi1_monotone", monotone}};
  if (run_pair) {
    const TwoPhotonScenario sc = two_photon_chi_scenario(a_omega / omega, omega, 0.9, pair_width);
    const double closed = phi2(sc.state, sc.det1, sc.det2, sc.model);
    const double brute = phi2_bruteforce(sc.state, sc.det1, sc.det2, sc.model, spec2);
    j["phi2"] = {{"width", pair_width}, {"bruteforce", brute}, {"closed_form", closed},
                 {"rel_err", rel_err(brute, closed)}};
  }

  const std::string text = j.dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ValidationError("oracle: cannot open output file: " + out_path);
    out << text << "\n";
  }
  std::cout << text << std::endl;
  if (!monotone)
    throw NumericalError("oracle: width sweep error is not monotone decreasing");
}

// ---------------------------------------------------------------------------
// visibility
// ---------------------------------------------------------------------------

void cmd_visibility(const std::string& data_path, std::optional<double> window_lo,
                    std::optional<double> window_hi, std::optional<double> chi,
                    const std::string& out_path) {
  const Signal1D s = read_signal_any(data_path);
  Interval window{s.x.front(), s.x.back()};
  if (window_lo) window.lo = *window_lo;
  if (window_hi) window.hi = *window_hi;
  if (!(window.hi > window.lo)) throw ValidationError("visibility: window must be ordered");
  const double chi_val = chi ? *chi : s.meta.chi;
  const ResolutionReport report = analyze(s, window, chi_val);
  const std::string text = resolution_report_json(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ValidationError("visibility: cannot open output file: " + out_path);
    out << text << "\n";
  }
  std::cout << text << std::endl;
}

} // namespace bornscat
