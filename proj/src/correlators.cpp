#include "bornscat/correlators.hpp"

#include <cmath>
#include <random>

#include "bornscat/errors.hpp"

namespace bornscat {

namespace {

constexpr Complex kI{0.0, 1.0};

double pow_5_2(double w) { return std::pow(w, 2.5); }
double pow_9_2(double w) { return std::pow(w, 4.5); }

/// True when n lies within the (3 x angular width) cone around +/- s.
bool on_beam_axis(const Direction& n, const Direction& s, double angular_width) {
  const double tau = std::max(3.0 * angular_width, 1e-9);
  return std::abs(dot(n.v, s.v)) >= std::cos(tau);
}

CVec3 conj_if_negative(const CVec3& v, double omega) { return omega < 0.0 ? conj(v) : v; }

/// Unit-scale scattered amplitude for a beam (envelope + polarization): the
/// common building block of the one-photon, coherent and two-laser paths.
CVec3 beam_scattered_vector(const SpectralEnvelope& env, const Pol2& pol, const Detector& det,
                            const ScattererModel& model) {
  const double w = std::abs(det.frequency);
  const double f = env.frequency_factor(w);
  if (f == 0.0) return {};
  const CVec3 p = polarization_vector(pol, polarization_basis(env.carrier_direction));
  const Vec3 q = (env.carrier_direction.v - det.direction.v) * w;
  const CVec3 driven = susceptibility_ft(model, q) * p;
  const Mat3 proj = transverse_projector(det.direction);
  const Complex pref = -pow_9_2(w) * green(w, det.distance) * f;
  return conj_if_negative(proj * driven * pref, det.frequency);
}

} // namespace

Complex green(double omega, double r) {
  if (!(r > 0.0)) throw ValidationError("green: requires r > 0");
  return -std::exp(kI * (std::abs(omega) * r)) / (4.0 * M_PI * r);
}

Detector::Detector(const Direction& n, double distance_, int component_, double frequency_)
    : direction(n), distance(distance_), component(component_), frequency(frequency_) {
  if (!(distance > 0.0)) throw ValidationError("detector distance must be positive");
  if (component < 0 || component > 2)
    throw ValidationError("detector component must be 0, 1 or 2");
  if (frequency == 0.0) throw ValidationError("detector frequency must be nonzero");
}

FieldAmplitude one_photon_incident_amp(const OnePhotonState& state, const Detector& det) {
  const double w = std::abs(det.frequency);
  const double f = state.envelope.frequency_factor(w);
  FieldAmplitude amp{FieldAmplitude::Kind::Incident, {}, det.frequency};
  if (f == 0.0) return amp;
  const CVec3 p =
      polarization_vector(state.pol, polarization_basis(state.envelope.carrier_direction));
  const double phase = w * dot(det.position(), state.envelope.carrier_direction.v);
  amp.vector = conj_if_negative(p * (pow_5_2(w) * f * std::exp(kI * phase)), det.frequency);
  return amp;
}

FieldAmplitude one_photon_scattered_amp(const OnePhotonState& state, const Detector& det,
                                        const ScattererModel& model) {
  return {FieldAmplitude::Kind::Scattered,
          beam_scattered_vector(state.envelope, state.pol, det, model), det.frequency};
}

Phi1Result phi1(const OnePhotonState& state, const Detector& det, const ScattererModel& model,
                bool include_incident) {
  Complex amp = one_photon_scattered_amp(state, det, model).vector[det.component];
  Phi1Result result;
  if (include_incident) {
    amp += one_photon_incident_amp(state, det).vector[det.component];
    result.born_inconsistent =
        !eliminated_component_exists(state, det.component) &&
        on_beam_axis(det.direction, state.envelope.carrier_direction, state.envelope.angular_width);
  }
  result.value = std::norm(amp);
  return result;
}

double coherent_phi1(const CoherentState& state, const Detector& det,
                     const ScattererModel& model) {
  const OnePhotonState unit_state{state.envelope, state.pol};
  const Complex inc = one_photon_incident_amp(unit_state, det).vector[det.component];
  const Complex sc = beam_scattered_vector(state.envelope, state.pol, det, model)[det.component];
  return std::norm(state.amplitude) * std::norm(inc + sc);
}

CMat3 theta_tensor(const PolMatrix& c, const PolarizationBasis& b1, const PolarizationBasis& b2) {
  const Vec3* e1[2] = {&b1.e1, &b1.e2};
  const Vec3* e2[2] = {&b2.e1, &b2.e2};
  CMat3 theta;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex s = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += c[a][b] * (*e1[a])[i] * (*e2[b])[j];
      theta(i, j) = s;
    }
  return theta;
}

namespace {

/// One photon-to-detector assignment of the pair amplitude. `theta` carries
/// the index attached to detector 1 first.
struct PairAssignment {
  const SpectralEnvelope* to_det1;
  const SpectralEnvelope* to_det2;
  CMat3 theta;
};

/// Scattered-scattered amplitude for one assignment, zero outside the
/// frequency gates. Prefactor 2 from the two field contractions.
Complex assignment_ss(const PairAssignment& as, const Detector& d1, const Detector& d2,
                      const ScattererModel& model) {
  const double w1 = std::abs(d1.frequency);
  const double w2 = std::abs(d2.frequency);
  const double f = as.to_det1->frequency_factor(w1) * as.to_det2->frequency_factor(w2);
  if (f == 0.0) return 0.0;
  const Complex pref = 2.0 * f * (-pow_9_2(w1) * green(w1, d1.distance)) *
                       (-pow_9_2(w2) * green(w2, d2.distance));
  const CMat3 f1 = susceptibility_ft(model, (as.to_det1->carrier_direction.v - d1.direction.v) * w1);
  const CMat3 f2 = susceptibility_ft(model, (as.to_det2->carrier_direction.v - d2.direction.v) * w2);
  const CMat3 m = transverse_projector(d1.direction) * f1 * as.theta * f2 *
                  transverse_projector(d2.direction);
  return pref * m(d1.component, d2.component);
}

Complex assignment_in_in(const PairAssignment& as, const Detector& d1, const Detector& d2) {
  const double w1 = std::abs(d1.frequency);
  const double w2 = std::abs(d2.frequency);
  const double f = as.to_det1->frequency_factor(w1) * as.to_det2->frequency_factor(w2);
  if (f == 0.0) return 0.0;
  const double ph1 = w1 * dot(d1.position(), as.to_det1->carrier_direction.v);
  const double ph2 = w2 * dot(d2.position(), as.to_det2->carrier_direction.v);
  const Complex pref = 2.0 * f * pow_5_2(w1) * pow_5_2(w2) * std::exp(kI * (ph1 + ph2));
  return pref * as.theta(d1.component, d2.component);
}

Complex assignment_s_in(const PairAssignment& as, const Detector& d1, const Detector& d2,
                        const ScattererModel& model) {
  const double w1 = std::abs(d1.frequency);
  const double w2 = std::abs(d2.frequency);
  const double f = as.to_det1->frequency_factor(w1) * as.to_det2->frequency_factor(w2);
  if (f == 0.0) return 0.0;
  const double ph2 = w2 * dot(d2.position(), as.to_det2->carrier_direction.v);
  const Complex pref = 2.0 * f * (-pow_9_2(w1) * green(w1, d1.distance)) * pow_5_2(w2) *
                       std::exp(kI * ph2);
  const CMat3 f1 = susceptibility_ft(model, (as.to_det1->carrier_direction.v - d1.direction.v) * w1);
  const CMat3 m = transverse_projector(d1.direction) * f1 * as.theta;
  return pref * m(d1.component, d2.component);
}

Complex assignment_in_s(const PairAssignment& as, const Detector& d1, const Detector& d2,
                        const ScattererModel& model) {
  const double w1 = std::abs(d1.frequency);
  const double w2 = std::abs(d2.frequency);
  const double f = as.to_det1->frequency_factor(w1) * as.to_det2->frequency_factor(w2);
  if (f == 0.0) return 0.0;
  const double ph1 = w1 * dot(d1.position(), as.to_det1->carrier_direction.v);
  const Complex pref = 2.0 * f * pow_5_2(w1) * std::exp(kI * ph1) *
                       (-pow_9_2(w2) * green(w2, d2.distance));
  const CMat3 f2 = susceptibility_ft(model, (as.to_det2->carrier_direction.v - d2.direction.v) * w2);
  const CMat3 m = as.theta * f2 * transverse_projector(d2.direction);
  return pref * m(d1.component, d2.component);
}

/// Both assignments with the degeneracy weight: for equal carriers the two
/// assignments are averaged (symmetrized sum divided by 2); otherwise the
/// frequency gates select the matching one.
template <typename Term>
Complex pair_amplitude(const TwoPhotonState& st, Term&& term) {
  const PolarizationBasis b1 = polarization_basis(st.env1.carrier_direction);
  const PolarizationBasis b2 = polarization_basis(st.env2.carrier_direction);
  const CMat3 th12 = theta_tensor(st.pol, b1, b2);
  const PairAssignment direct{&st.env1, &st.env2, th12};
  const PairAssignment swapped{&st.env2, &st.env1, transpose(th12)};
  const double weight = st.degenerate ? 0.5 : 1.0;
  return weight * (term(direct) + term(swapped));
}

} // namespace

Complex two_photon_scattered_amp(const TwoPhotonState& state, const Detector& det1,
                                 const Detector& det2, const ScattererModel& model) {
  return pair_amplitude(state, [&](const PairAssignment& as) {
    return assignment_ss(as, det1, det2, model);
  });
}

TwoPhotonAmplitudes two_photon_amplitude_terms(const TwoPhotonState& state, const Detector& det1,
                                               const Detector& det2, const ScattererModel& model) {
  TwoPhotonAmplitudes amps;
  amps.s_s = pair_amplitude(state, [&](const PairAssignment& as) {
    return assignment_ss(as, det1, det2, model);
  });
  amps.in_in = pair_amplitude(state, [&](const PairAssignment& as) {
    return assignment_in_in(as, det1, det2);
  });
  amps.s_in = pair_amplitude(state, [&](const PairAssignment& as) {
    return assignment_s_in(as, det1, det2, model);
  });
  amps.in_s = pair_amplitude(state, [&](const PairAssignment& as) {
    return assignment_in_s(as, det1, det2, model);
  });
  return amps;
}

double phi2(const TwoPhotonState& state, const Detector& det1, const Detector& det2,
            const ScattererModel& model) {
  return std::norm(two_photon_scattered_amp(state, det1, det2, model));
}

double entangled_phi2(const EntangledBiphotonState& state, const Detector& det1,
                      const Detector& det2, const ScattererModel& model) {
  if (std::abs(state.omega1 - state.omega2) <= 1e-12 * std::max(state.omega1, state.omega2))
    throw ValidationError("entangled_phi2: carrier frequencies must differ");
  const double w1 = std::abs(det1.frequency);
  const double w2 = std::abs(det2.frequency);
  const SpectralEnvelope probe1{state.omega1, state.s1, state.angular_width,
                                state.frequency_width};
  const SpectralEnvelope probe2{state.omega2, state.s2, state.angular_width,
                                state.frequency_width};
  const double f = probe1.frequency_factor(w1) * probe2.frequency_factor(w2);
  if (f == 0.0) return 0.0;
  // Common polarization tensor on the (s1, s2) branch; the (q1, q2) branch
  // shares it for the constraint geometries used here.
  const CMat3 theta = theta_tensor(state.pol, polarization_basis(state.s1),
                                   polarization_basis(state.s2));
  const Mat3 p1 = transverse_projector(det1.direction);
  const Mat3 p2 = transverse_projector(det2.direction);
  const CMat3 branch_a = p1 * susceptibility_ft(model, (state.q1.v - det1.direction.v) * w1) *
                         theta * susceptibility_ft(model, (state.q2.v - det2.direction.v) * w2) *
                         p2;
  const CMat3 branch_b = p1 * susceptibility_ft(model, (state.s1.v - det1.direction.v) * w1) *
                         theta * susceptibility_ft(model, (state.s2.v - det2.direction.v) * w2) *
                         p2;
  const Complex pref = 2.0 * f * (-pow_9_2(w1) * green(w1, det1.distance)) *
                       (-pow_9_2(w2) * green(w2, det2.distance));
  const Complex amp =
      pref * (branch_a(det1.component, det2.component) + branch_b(det1.component, det2.component));
  return std::norm(amp);
}

namespace {

/// Per-mode unit-amplitude scattered responses at both detectors.
struct ModeResponses {
  Complex g11, g21; ///< modes 1, 2 at detector 1
  Complex g12, g22; ///< modes 1, 2 at detector 2
};

ModeResponses mode_responses(const TwoModeCoherentState& st, const Detector& d1,
                             const Detector& d2, const ScattererModel& model) {
  ModeResponses r;
  r.g11 = beam_scattered_vector(st.mode1.envelope, st.mode1.pol, d1, model)[d1.component];
  r.g21 = beam_scattered_vector(st.mode2.envelope, st.mode2.pol, d1, model)[d1.component];
  r.g12 = beam_scattered_vector(st.mode1.envelope, st.mode1.pol, d2, model)[d2.component];
  r.g22 = beam_scattered_vector(st.mode2.envelope, st.mode2.pol, d2, model)[d2.component];
  return r;
}

double fixed_phase_phi2(const ModeResponses& r, double a, double phi1, double phi2) {
  const Complex u1 = std::polar(a, phi1);
  const Complex u2 = std::polar(a, phi2);
  return std::norm(u1 * r.g11 + u2 * r.g21) * std::norm(u1 * r.g12 + u2 * r.g22);
}

} // namespace

double two_laser_phi2(const TwoModeCoherentState& state, const Detector& det1,
                      const Detector& det2, const ScattererModel& model) {
  const ModeResponses r = mode_responses(state, det1, det2, model);
  if (state.phase_mode == PhaseMode::Fixed)
    return fixed_phase_phi2(r, state.amplitude, state.phase1, state.phase2);
  // Uniform average over both phases: the intensity product plus the
  // phase-insensitive exchange term.
  const double a4 = std::pow(state.amplitude, 4);
  const double direct = (std::norm(r.g11) + std::norm(r.g21)) *
                        (std::norm(r.g12) + std::norm(r.g22));
  const double exchange = 2.0 * std::real(r.g11 * std::conj(r.g21) * r.g22 * std::conj(r.g12));
  return a4 * (direct + exchange);
}

double two_laser_phi2_mc(const TwoModeCoherentState& state, const Detector& det1,
                         const Detector& det2, const ScattererModel& model, int n_samples,
                         std::uint64_t seed) {
  if (n_samples <= 0) throw ValidationError("two_laser_phi2_mc: need a positive sample count");
  const ModeResponses r = mode_responses(state, det1, det2, model);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  double acc = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double p1 = u(rng);
    const double p2 = u(rng);
    acc += fixed_phase_phi2(r, state.amplitude, p1, p2);
  }
  return acc / n_samples;
}

} // namespace bornscat
