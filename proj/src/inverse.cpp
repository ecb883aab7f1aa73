#include "bornscat/inverse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "bornscat/errors.hpp"
#include "json.hpp"

namespace bornscat {

namespace {

/// Candidates within this fraction of the coarse objective's dynamic range
/// above the best residual count as rival minima.
constexpr double kAmbiguityBand = 0.05;

struct Objective {
  const FitProblem& p;

  /// Residual sum of squares at a, with the scale solved in closed form
  /// (linear least squares for fixed a).
  double operator()(double a, double* scale_out = nullptr) const {
    double sfy = 0.0, sff = 0.0;
    const std::size_t n = p.observed.x.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = p.model(a, p.observed.x[i]);
      sfy += f[i] * p.observed.y[i];
      sff += f[i] * f[i];
    }
    const double scale = sff > 0.0 ? sfy / sff : 0.0;
    if (scale_out) *scale_out = scale;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = p.observed.y[i] - scale * f[i];
      rss += r * r;
    }
    return rss;
  }
};

double golden_minimize(const Objective& obj, double lo, double hi, int& iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = obj(c), fd = obj(d);
  iterations = 0;
  while (b - a > 1e-12 * (std::abs(a) + std::abs(b)) + 1e-15 && iterations < 200) {
    if (fc <= fd) { // ties keep the left bracket for determinism
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = obj(d);
    }
    ++iterations;
  }
  return 0.5 * (a + b);
}

} // namespace

FitResult fit(const FitProblem& problem, const FitOptions& options) {
  validate_signal(problem.observed);
  if (!problem.model) throw ValidationError("fit: missing forward model");
  if (!(problem.a_lo > 0.0) || !(problem.a_hi > problem.a_lo))
    throw ValidationError("fit: bounds must be positive and ordered");
  double lo = problem.a_lo;
  double hi = problem.a_hi;
  if (problem.prior) {
    const double omega_ref = 0.5 * (problem.observed.x.front() + problem.observed.x.back());
    const Interval d = domain_Dn(problem.prior->chi, problem.prior->n);
    lo = std::max(lo, d.lo / omega_ref);
    hi = std::min(hi, d.hi / omega_ref);
    if (!(hi > lo)) throw ValidationError("fit: prior domain excludes the whole search interval");
  }
  const int nodes = std::max(200, options.coarse_nodes);
  const Objective obj{problem};

  std::vector<double> a_grid(static_cast<std::size_t>(nodes));
  std::vector<double> rss(static_cast<std::size_t>(nodes), 0.0);
  const double step = (hi - lo) / (nodes - 1);
  for (int i = 0; i < nodes; ++i) a_grid[static_cast<std::size_t>(i)] = lo + step * i;

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    for (int i = 0; i < nodes; ++i)
      rss[static_cast<std::size_t>(i)] = obj(a_grid[static_cast<std::size_t>(i)]);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= nodes) return;
        rss[static_cast<std::size_t>(i)] = obj(a_grid[static_cast<std::size_t>(i)]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double power = 0.0;
  for (double v : problem.observed.y) power += v * v;
  double rss_lo = rss[0], rss_hi = rss[0];
  std::size_t best = 0;
  for (std::size_t i = 0; i < rss.size(); ++i) {
    rss_lo = std::min(rss_lo, rss[i]);
    rss_hi = std::max(rss_hi, rss[i]);
    if (rss[i] < rss[best]) best = i;
  }
  if (rss_hi - rss_lo <= 1e-9 * power)
    throw NumericalError("unidentifiable: objective is flat over the search interval");

  auto bracket_of = [&](std::size_t node) {
    Bracket br;
    br.lo = node == 0 ? a_grid[node] : a_grid[node - 1];
    br.hi = node + 1 < a_grid.size() ? a_grid[node + 1] : a_grid[node];
    return br;
  };

  FitResult result;
  result.bracket = bracket_of(best);
  result.a_hat = golden_minimize(obj, result.bracket.lo, result.bracket.hi, result.iterations);
  double scale = 0.0;
  const double best_rss = obj(result.a_hat, &scale);
  result.scale_hat = scale;
  result.residual_rms = std::sqrt(best_rss / static_cast<double>(problem.observed.y.size()));
  result.bracket.a = result.a_hat;
  result.bracket.residual_rms = result.residual_rms;
  result.candidates.push_back(result.bracket);

  // Rival local minima of the coarse objective within the ambiguity band.
  // Minima closer than a quarter of the periodicity alias spacing belong to
  // the best minimum's basin and are not rivals.
  const std::size_t n_obs = problem.observed.y.size();
  const double worst_rms = std::sqrt(rss_hi / static_cast<double>(n_obs));
  const double band =
      result.residual_rms + kAmbiguityBand * (worst_rms - result.residual_rms);
  const double omega_ref = 0.5 * (problem.observed.x.front() + problem.observed.x.back());
  const double alias_spacing =
      M_PI / (2.0 * std::abs(omega_ref) * std::max(std::abs(problem.chi_eff), 1e-12));
  const double min_separation = std::max(2.0 * step, 0.25 * alias_spacing);
  for (std::size_t i = 1; i + 1 < rss.size(); ++i) {
    if (i == best) continue;
    if (!(rss[i] <= rss[i - 1] && rss[i] <= rss[i + 1])) continue;
    Bracket br = bracket_of(i);
    if (std::abs(a_grid[i] - result.a_hat) < min_separation) continue;
    int iters = 0;
    br.a = golden_minimize(obj, br.lo, br.hi, iters);
    br.residual_rms = std::sqrt(obj(br.a) / static_cast<double>(n_obs));
    if (br.residual_rms <= band) {
      result.candidates.push_back(br);
      result.ambiguous = true;
    }
  }
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const Bracket& a, const Bracket& b) { return a.residual_rms < b.residual_rms; });
  return result;
}

std::vector<double> identifiability_aliases(const FitProblem& problem, double a_ref) {
  validate_signal(problem.observed);
  if (!(problem.chi_eff != 0.0)) throw ValidationError("identifiability: chi_eff must be nonzero");
  const double omega_ref = 0.5 * (problem.observed.x.front() + problem.observed.x.back());
  const double spacing = M_PI / (2.0 * omega_ref * std::abs(problem.chi_eff));
  std::vector<double> aliases;
  const int k_lo = static_cast<int>(std::ceil((problem.a_lo - a_ref) / spacing - 1e-12));
  const int k_hi = static_cast<int>(std::floor((problem.a_hi - a_ref) / spacing + 1e-12));
  for (int k = k_lo; k <= k_hi; ++k) aliases.push_back(a_ref + k * spacing);
  return aliases;
}

Signal1D add_multiplicative_noise(const Signal1D& s, double sigma, std::uint64_t seed) {
  validate_signal(s);
  if (!(sigma >= 0.0)) throw ValidationError("noise level must be nonnegative");
  Signal1D out = s;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (double& v : out.y) v = std::max(0.0, v * (1.0 + sigma * g(rng)));
  return out;
}

std::string fit_report_json(const FitResult& r) {
  nlohmann::json cands = nlohmann::json::array();
  for (const Bracket& b : r.candidates)
    cands.push_back({{"lo", b.lo}, {"hi", b.hi}, {"a", b.a}, {"residual_rms", b.residual_rms}});
  nlohmann::json j{{"a_hat", r.a_hat},
                   {"scale_hat", r.scale_hat},
                   {"residual_rms", r.residual_rms},
                   {"bracket", {{"lo", r.bracket.lo}, {"hi", r.bracket.hi}}},
                   {"iterations", r.iterations},
                   {"ambiguous", r.ambiguous},
                   {"candidates", cands}};
  return j.dump(2);
}

} // namespace bornscat
