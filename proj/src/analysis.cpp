#include "bornscat/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "bornscat/errors.hpp"
#include "json.hpp"

namespace bornscat {

void validate_signal(const Signal1D& s) {
  if (s.x.size() != s.y.size()) throw ValidationError("signal: x/y size mismatch");
  if (s.x.empty()) throw ValidationError("signal: empty");
  for (std::size_t i = 1; i < s.x.size(); ++i)
    if (!(s.x[i] > s.x[i - 1])) throw ValidationError("signal: x grid must be strictly increasing");
  for (double v : s.y)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError("signal: y values must be finite and nonnegative");
}

double visibility(const Signal1D& s) {
  if (s.y.empty()) throw ValidationError("visibility: empty signal");
  double lo = s.y.front(), hi = s.y.front();
  for (double v : s.y) {
    if (v < 0.0) throw ValidationError("visibility: negative signal value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

Interval domain_Dn(double chi, int n) {
  if (chi == 0.0) throw ValidationError("domain_Dn: chi must be nonzero");
  const double lo = (M_PI / 4.0 + M_PI * n) / chi;
  const double hi = (3.0 * M_PI / 4.0 + M_PI * n) / chi;
  return {std::min(lo, hi), std::max(lo, hi)};
}

DomainClass classify_window(const Interval& window, double chi) {
  if (chi == 0.0 || !std::isfinite(chi)) return DomainClass::NotApplicable;
  const double period = M_PI / std::abs(chi);
  const int n_lo = static_cast<int>(std::floor(window.lo / period)) - 2;
  const int n_hi = static_cast<int>(std::ceil(window.hi / period)) + 2;
  bool overlaps = false;
  for (int n = n_lo; n <= n_hi; ++n) {
    const Interval d = domain_Dn(chi, n);
    if (window.lo >= d.lo - 1e-12 && window.hi <= d.hi + 1e-12) return DomainClass::InsideDn;
    if (window.hi > d.lo && window.lo < d.hi) overlaps = true;
  }
  return overlaps ? DomainClass::NotApplicable : DomainClass::OutsideDn;
}

namespace {

/// Parabola vertex through three samples; falls back to the middle point for
/// a degenerate (flat) triple.
Extremum refine_quadratic(const Signal1D& s, std::size_t i, bool is_max) {
  const double x0 = s.x[i - 1], x1 = s.x[i], x2 = s.x[i + 1];
  const double y0 = s.y[i - 1], y1 = s.y[i], y2 = s.y[i + 1];
  const double d10 = (y1 - y0) / (x1 - x0);
  const double d21 = (y2 - y1) / (x2 - x1);
  const double curv = (d21 - d10) / (x2 - x0);
  if (curv == 0.0) return {x1, y1, is_max};
  const double xv = 0.5 * (x0 + x1 - d10 / curv);
  if (!(xv > x0) || !(xv < x2)) return {x1, y1, is_max};
  // Evaluate the interpolating parabola at its vertex.
  const double yv = y0 + d10 * (xv - x0) + curv * (xv - x0) * (xv - x1);
  return {xv, yv, is_max};
}

} // namespace

std::vector<Extremum> find_extrema(const Signal1D& s) {
  validate_signal(s);
  std::vector<Extremum> out;
  const std::size_t n = s.x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    // Plateau run [i, j] of exactly equal values.
    std::size_t j = i;
    while (j + 1 < n && s.y[j + 1] == s.y[i]) ++j;
    if (j + 1 >= n) break;
    const double left = s.y[i - 1];
    const double right = s.y[j + 1];
    const double v = s.y[i];
    if (left < v && right < v) {
      if (i == j)
        out.push_back(refine_quadratic(s, i, true));
      else
        out.push_back({0.5 * (s.x[i] + s.x[j]), v, true}); // plateau midpoint
    } else if (left > v && right > v) {
      if (i == j)
        out.push_back(refine_quadratic(s, i, false));
      else
        out.push_back({0.5 * (s.x[i] + s.x[j]), v, false});
    }
    i = j + 1;
  }
  return out;
}

SpacingStats extrema_spacing(const Signal1D& s, const Interval& window) {
  const std::vector<Extremum> all = find_extrema(s);
  // Inclusion tolerance of half a grid step lets extrema refined onto the
  // window boundary count as inside.
  double step = 0.0;
  if (s.x.size() > 1) step = (s.x.back() - s.x.front()) / static_cast<double>(s.x.size() - 1);
  const double eps = 0.5 * step;
  std::vector<Extremum> in;
  for (const Extremum& e : all)
    if (window.contains(e.x, eps)) in.push_back(e);
  bool has_max = false, has_min = false;
  for (const Extremum& e : in) (e.is_max ? has_max : has_min) = true;
  if (!has_max || !has_min)
    throw ValidationError("extrema_spacing: window must contain at least one maximum and one minimum");
  std::vector<double> spacings;
  for (std::size_t k = 0; k + 1 < in.size(); ++k)
    if (in[k].is_max != in[k + 1].is_max) spacings.push_back(in[k + 1].x - in[k].x);
  if (spacings.empty())
    throw ValidationError("extrema_spacing: no adjacent max/min pair inside the window");
  SpacingStats st;
  st.pairs = static_cast<int>(spacings.size());
  double lo = spacings.front(), hi = spacings.front(), sum = 0.0;
  for (double v : spacings) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  st.mean = sum / static_cast<double>(spacings.size());
  st.spread = st.mean > 0.0 ? (hi - lo) / st.mean : 0.0;
  st.high_spread = st.spread > 0.10;
  return st;
}

ResolutionReport analyze(const Signal1D& s, const Interval& window, double chi) {
  ResolutionReport r;
  r.visibility = visibility(s);
  const SpacingStats st = extrema_spacing(s, window);
  r.extrema_spacing = st.mean;
  r.spacing_spread = st.spread;
  r.chi = chi;
  r.domain = classify_window(window, chi);
  return r;
}

Signal1D scan(const std::function<double(double)>& f, const std::vector<double>& grid,
              int threads) {
  if (grid.empty()) throw ValidationError("scan: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ValidationError("scan: grid must be strictly increasing");
  Signal1D out;
  out.x = grid;
  out.y.assign(grid.size(), 0.0);
  threads = std::max(1, threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      try {
        out.y[i] = f(grid[i]);
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "scan failed at x=" << grid[i] << ": " << e.what();
        throw NumericalError(os.str());
      }
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::string first_error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      try {
        out.y[i] = f(grid[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) {
          std::ostringstream os;
          os << "scan failed at x=" << grid[i] << ": " << e.what();
          first_error = os.str();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw NumericalError(first_error);
  return out;
}

std::vector<double> grid_halfopen(double lo, double hi, int n) {
  if (n <= 0) throw ValidationError("grid: need a positive point count");
  if (!(hi > lo)) throw ValidationError("grid: bounds must be ordered");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = (hi - lo) / n;
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
  return g;
}

void write_signal_csv(const Signal1D& s, const std::string& path) {
  validate_signal(s);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open signal file for writing: " + path);
  out << "# units: natural (c = hbar = epsilon0 = 1); y up to a fixed per-state constant\n";
  auto or_dash = [](const std::string& v) { return v.empty() ? std::string("-") : v; };
  out << "# x_label: " << or_dash(s.meta.x_label) << "; state: " << or_dash(s.meta.state_kind)
      << "; geometry: " << or_dash(s.meta.geometry) << "; chi: ";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", s.meta.chi);
  out << buf << "\n";
  out << "x,y\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    char line[80];
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", s.x[i], s.y[i]);
    out << line;
  }
}

Signal1D read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open signal file: " + path);
  Signal1D s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      char label[64] = {0}, state[64] = {0}, geom[128] = {0};
      double chi = 0.0;
      if (std::sscanf(line.c_str(), "# x_label: %63[^;]; state: %63[^;]; geometry: %127[^;]; chi: %lf",
                      label, state, geom, &chi) == 4) {
        auto undash = [](const char* v) { return std::string(v) == "-" ? std::string{} : std::string(v); };
        s.meta.x_label = undash(label);
        s.meta.state_kind = undash(state);
        s.meta.geometry = undash(geom);
        s.meta.chi = chi;
      }
      continue;
    }
    if (line == "x,y") continue;
    double x, y;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) != 2)
      throw ValidationError("malformed signal row: " + line);
    s.x.push_back(x);
    s.y.push_back(y);
  }
  validate_signal(s);
  return s;
}

void write_signal_json(const Signal1D& s, const std::string& path) {
  validate_signal(s);
  nlohmann::json j{{"metadata",
                    {{"state_kind", s.meta.state_kind},
                     {"geometry", s.meta.geometry},
                     {"x_label", s.meta.x_label},
                     {"chi", s.meta.chi},
                     {"units", "natural (c=hbar=epsilon0=1)"}}},
                   {"x", s.x},
                   {"y", s.y}};
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open signal file for writing: " + path);
  out << j.dump(2) << "\n";
}

Signal1D read_signal_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open signal file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("signal JSON parse error: ") + e.what());
  }
  Signal1D s;
  try {
    s.x = j.at("x").get<std::vector<double>>();
    s.y = j.at("y").get<std::vector<double>>();
    if (j.contains("metadata")) {
      const auto& m = j["metadata"];
      s.meta.state_kind = m.value("state_kind", std::string{});
      s.meta.geometry = m.value("geometry", std::string{});
      s.meta.x_label = m.value("x_label", std::string{"a_omega"});
      s.meta.chi = m.value("chi", 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("signal JSON schema error: ") + e.what());
  }
  validate_signal(s);
  return s;
}

std::string resolution_report_json(const ResolutionReport& r) {
  const char* domain = r.domain == DomainClass::InsideDn
                           ? "inside-D_n"
                           : (r.domain == DomainClass::OutsideDn ? "outside-D_n" : "not-applicable");
  nlohmann::json j{{"visibility", r.visibility},
                   {"extrema_spacing", r.extrema_spacing},
                   {"spacing_spread", r.spacing_spread},
                   {"domain", domain},
                   {"chi", r.chi}};
  return j.dump(2);
}

} // namespace bornscat
