#pragma once
#include <cstdint>

#include "bornscat/scatterer.hpp"
#include "bornscat/states.hpp"

namespace bornscat {

/// Free outgoing Green function -e^{i|omega| r} / (4 pi r).
Complex green(double omega, double r);

/// Far-field photodetector: observation direction, distance from the
/// scatterer, measured Cartesian field component and detection frequency.
struct Detector {
  Direction direction;
  double distance = 1.0e6;
  int component = 0; ///< 0 = x, 1 = y, 2 = z
  double frequency = 1.0;

  Detector(const Direction& n, double distance_, int component_, double frequency_);

  /// Position of the detector, distance * n.
  Vec3 position() const { return direction.v * distance; }
  /// distance * |omega| >> 1; below ~20 the far-field factorization of the
  /// Green function is not trustworthy.
  bool far_field() const { return distance * std::abs(frequency) > 20.0; }
};

/// Narrowband detected-field amplitude at one detector. All amplitudes carry
/// a fixed per-state scale constant (the envelope integrals are folded into
/// 1), so correlators are defined up to one deterministic positive factor.
struct FieldAmplitude {
  enum class Kind { Incident, Scattered } kind;
  CVec3 vector;
  double frequency = 0.0;
};

/// Plane-wave amplitude |w|^{5/2} p_i(s) e^{i w r.s} at the detector; zero
/// outside the envelope's frequency gate. Negative frequencies give the
/// conjugate of the positive-frequency amplitude.
FieldAmplitude one_photon_incident_amp(const OnePhotonState& state, const Detector& det);

/// Scattered amplitude -|w|^{9/2} G_w(r) P(n) eps[w(s-n)] p(s); transverse to
/// the observation direction by construction.
FieldAmplitude one_photon_scattered_amp(const OnePhotonState& state, const Detector& det,
                                        const ScattererModel& model);

/// First-order correlator value plus the Born-consistency warning: keeping
/// the incident field in a forward/backward geometry without polarization
/// elimination puts the result outside the first Born order's validity.
struct Phi1Result {
  double value = 0.0;
  bool born_inconsistent = false;
};

Phi1Result phi1(const OnePhotonState& state, const Detector& det, const ScattererModel& model,
                bool include_incident);

/// Coherent-state intensity |A|^2 |E_in + E_s|^2 at the measured component;
/// keeps the incident intensity, both cross terms and the scattered
/// intensity.
double coherent_phi1(const CoherentState& state, const Detector& det, const ScattererModel& model);

/// Pair polarization tensor Theta_{ij} = c_{ab} e_{a|i}(s1) e_{b|j}(s2).
CMat3 theta_tensor(const PolMatrix& c, const PolarizationBasis& b1, const PolarizationBasis& b2);

/// Scattered-scattered two-photon amplitude at the measured component pair.
/// Photon-to-detector assignment follows the frequency gates; for degenerate
/// carriers the two assignments are averaged.
Complex two_photon_scattered_amp(const TwoPhotonState& state, const Detector& det1,
                                 const Detector& det2, const ScattererModel& model);

/// All four (incident/scattered) x (incident/scattered) pair amplitudes, for
/// studying which interference terms polarization can and cannot remove.
struct TwoPhotonAmplitudes {
  Complex in_in{};
  Complex s_in{}; ///< scattered at detector 1, incident at detector 2
  Complex in_s{};
  Complex s_s{};
};

TwoPhotonAmplitudes two_photon_amplitude_terms(const TwoPhotonState& state, const Detector& det1,
                                               const Detector& det2, const ScattererModel& model);

/// Coincidence correlator |scattered-scattered amplitude|^2; symmetric under
/// the full detector swap.
double phi2(const TwoPhotonState& state, const Detector& det1, const Detector& det2,
            const ScattererModel& model);

/// Coincidence correlator for the two-branch entangled biphoton, with the
/// common polarization tensor taken on the (s1, s2) branch.
double entangled_phi2(const EntangledBiphotonState& state, const Detector& det1,
                      const Detector& det2, const ScattererModel& model);

/// Phase-averaged two-laser coincidence signal (analytic average over the
/// mode phases for PhaseMode::Random, direct evaluation for Fixed). Only
/// scattered amplitudes enter: the configuration keeps detectors away from
/// the beam axes.
double two_laser_phi2(const TwoModeCoherentState& state, const Detector& det1,
                      const Detector& det2, const ScattererModel& model);

/// Monte Carlo estimate of the random-phase average, for convergence checks
/// against the analytic value.
double two_laser_phi2_mc(const TwoModeCoherentState& state, const Detector& det1,
                         const Detector& det2, const ScattererModel& model, int n_samples,
                         std::uint64_t seed);

} // namespace bornscat
