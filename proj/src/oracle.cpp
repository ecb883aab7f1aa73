#include "bornscat/oracle.hpp"

#include <cmath>
#include <sstream>

#include "bornscat/errors.hpp"

namespace bornscat {

namespace {

void require_node_counts(const QuadratureSpec& spec) {
  if (spec.n_theta < 8 || spec.n_phi < 8)
    throw ValidationError("quadrature node counts must be >= 8");
  if (spec.n_freq < 1) throw ValidationError("quadrature frequency node count must be >= 1");
}

/// Angle between unit vectors, stable near zero.
double angle_between(const Vec3& a, const Vec3& b) {
  return 2.0 * std::asin(0.5 * norm(a - b));
}

double relative_change(double coarse, double fine) {
  const double scale = std::max(std::abs(fine), std::abs(coarse));
  if (scale == 0.0) return 0.0;
  return std::abs(fine - coarse) / scale;
}

[[noreturn]] void fail_convergence(const char* what, double coarse, double fine,
                                   const QuadratureSpec& spec) {
  std::ostringstream os;
  os << what << ": quadrature not converged (n_theta=" << spec.n_theta << ", n_phi=" << spec.n_phi
     << ": " << coarse << " -> doubled: " << fine << ", relative change "
     << relative_change(coarse, fine) << " > 1e-3)";
  throw NumericalError(os.str());
}

/// Per-polarization-index envelope-weighted sphere sums
///   V_alpha = (1/Z) sum_m w C(m) eps[w(m - n)] e_alpha(m),  Z = sum_m w C(m).
struct BeamIntegrals {
  CVec3 v[2];
};

BeamIntegrals beam_integrals(const SphereRule& rule, const SpectralEnvelope& env,
                             const Detector& det, const ScattererModel& model) {
  const double w = std::abs(det.frequency);
  const double inv2s2 = 0.5 / (env.angular_width * env.angular_width);
  BeamIntegrals acc;
  double z = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Vec3& m = rule.nodes[k];
    const double th = angle_between(m, env.carrier_direction.v);
    const double c = std::exp(-th * th * inv2s2);
    if (c < 1e-200) continue;
    const double wc = rule.weights[k] * c;
    z += wc;
    const PolarizationBasis basis = polarization_basis(Direction{m});
    const CMat3 eps = susceptibility_ft(model, (m - det.direction.v) * w);
    acc.v[0] += (eps * CVec3(basis.e1)) * wc;
    acc.v[1] += (eps * CVec3(basis.e2)) * wc;
  }
  if (z <= 0.0) throw NumericalError("beam integrals: envelope mass not captured by the rule");
  acc.v[0] = acc.v[0] * (1.0 / z);
  acc.v[1] = acc.v[1] * (1.0 / z);
  return acc;
}

double phi1_eval(const SphereRule& rule, const OnePhotonState& st, const Detector& det,
                 const ScattererModel& model) {
  const double w = std::abs(det.frequency);
  const double f = st.envelope.frequency_factor(w);
  if (f == 0.0) return 0.0;
  const BeamIntegrals bi = beam_integrals(rule, st.envelope, det, model);
  const CVec3 driven = bi.v[0] * st.pol[0] + bi.v[1] * st.pol[1];
  const Complex pref = -std::pow(w, 4.5) * green(w, det.distance) * f;
  const CVec3 amp = transverse_projector(det.direction) * driven * pref;
  return std::norm(amp[det.component]);
}

double phi2_eval(const SphereRule& rule, const TwoPhotonState& st, const Detector& d1,
                 const Detector& d2, const ScattererModel& model) {
  const double w1 = std::abs(d1.frequency);
  const double w2 = std::abs(d2.frequency);
  // Product terms of the (symmetric) pair envelope: one assignment for split
  // carriers, the averaged pair for degenerate ones.
  struct Term {
    const SpectralEnvelope* a;
    const SpectralEnvelope* b;
    double weight;
  };
  std::vector<Term> terms;
  if (st.degenerate) {
    terms.push_back({&st.env1, &st.env2, 0.5});
    terms.push_back({&st.env2, &st.env1, 0.5});
  } else {
    terms.push_back({&st.env1, &st.env2, 1.0});
    terms.push_back({&st.env2, &st.env1, 1.0});
  }
  const Mat3 p1 = transverse_projector(d1.direction);
  const Mat3 p2 = transverse_projector(d2.direction);
  Complex amp = 0.0;
  for (const Term& t : terms) {
    const double f = t.a->frequency_factor(w1) * t.b->frequency_factor(w2);
    if (f == 0.0) continue;
    const BeamIntegrals ba = beam_integrals(rule, *t.a, d1, model);
    const BeamIntegrals bb = beam_integrals(rule, *t.b, d2, model);
    Complex contraction = 0.0;
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        contraction += st.pol[al][be] * (p1 * ba.v[al])[d1.component] *
                       (p2 * bb.v[be])[d2.component];
    const Complex pref = 2.0 * t.weight * f * (-std::pow(w1, 4.5) * green(w1, d1.distance)) *
                         (-std::pow(w2, 4.5) * green(w2, d2.distance));
    amp += pref * contraction;
  }
  return std::norm(amp);
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be positive");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const std::size_t a = static_cast<std::size_t>(i);
    const std::size_t b = static_cast<std::size_t>(n - 1 - i);
    nodes[a] = -x;
    nodes[b] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[a] = w;
    weights[b] = w;
  }
}

SphereRule SphereRule::build(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw ValidationError("SphereRule: node counts must be positive");
  std::vector<double> ct, wt;
  gauss_legendre(n_theta, ct, wt);
  SphereRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
  rule.weights.reserve(rule.nodes.capacity());
  const double wphi = 2.0 * M_PI / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = ct[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      rule.nodes.push_back(Vec3{s * std::cos(phi), s * std::sin(phi), c});
      rule.weights.push_back(wt[static_cast<std::size_t>(i)] * wphi);
    }
  }
  return rule;
}

double phi1_bruteforce(const OnePhotonState& state, const Detector& det,
                       const ScattererModel& model, const QuadratureSpec& spec) {
  require_node_counts(spec);
  const double coarse = phi1_eval(SphereRule::build(spec.n_theta, spec.n_phi), state, det, model);
  const double fine =
      phi1_eval(SphereRule::build(2 * spec.n_theta, 2 * spec.n_phi), state, det, model);
  if (relative_change(coarse, fine) > 1e-3) fail_convergence("phi1_bruteforce", coarse, fine, spec);
  return fine;
}

double phi2_bruteforce(const TwoPhotonState& state, const Detector& det1, const Detector& det2,
                       const ScattererModel& model, const QuadratureSpec& spec) {
  require_node_counts(spec);
  const double coarse =
      phi2_eval(SphereRule::build(spec.n_theta, spec.n_phi), state, det1, det2, model);
  const double fine =
      phi2_eval(SphereRule::build(2 * spec.n_theta, 2 * spec.n_phi), state, det1, det2, model);
  if (relative_change(coarse, fine) > 1e-3) fail_convergence("phi2_bruteforce", coarse, fine, spec);
  return fine;
}

} // namespace bornscat
