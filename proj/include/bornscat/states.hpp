#pragma once
#include <array>
#include <cstdint>
#include <string>

#include "bornscat/geometry.hpp"

namespace bornscat {

using Pol2 = std::array<Complex, 2>;                ///< polarization coefficients c_alpha
using PolMatrix = std::array<std::array<Complex, 2>, 2>; ///< pair coefficients c_{alpha beta}

/// Narrowband wave-packet envelope: Gaussian in angle around the carrier
/// direction and Gaussian in frequency around the carrier frequency. The
/// frequency profile is gated to |omega - carrier| <= 3 widths; outside the
/// gate amplitudes are exactly zero.
struct SpectralEnvelope {
  double carrier_frequency = 1.0;
  Direction carrier_direction;
  double angular_width = 0.01;   ///< radians
  double frequency_width = 0.01;

  /// Gated Gaussian profile, = 1 at the carrier frequency.
  double frequency_factor(double omega) const;
  bool narrowband() const;
};

SpectralEnvelope make_envelope(double carrier_frequency, const Direction& s, double angular_width,
                               double frequency_width);

struct OnePhotonState {
  SpectralEnvelope envelope;
  Pol2 pol; ///< unit norm
};

/// Builds a one-photon state; c is renormalized to unit norm.
OnePhotonState make_one_photon(double carrier_frequency, const Direction& s, const Pol2& c,
                               double angular_width, double frequency_width);

struct CoherentState {
  SpectralEnvelope envelope;
  Pol2 pol;
  Complex amplitude; ///< complex mode amplitude A
};

CoherentState make_coherent(double carrier_frequency, const Direction& s, const Pol2& c,
                            Complex amplitude, double angular_width, double frequency_width);

/// Factorized two-photon state. The coefficient matrix is bosonic-symmetric
/// and Frobenius-normalized; envelopes are stored in canonical order
/// (ascending carrier frequency, then lexicographic direction), so states
/// differing only by envelope relabeling compare equal field-by-field.
struct TwoPhotonState {
  SpectralEnvelope env1;
  SpectralEnvelope env2;
  PolMatrix pol;
  bool degenerate = false; ///< equal carrier frequencies
};

TwoPhotonState make_two_photon(const SpectralEnvelope& a, const SpectralEnvelope& b,
                               const PolMatrix& raw_pol);

/// Bosonic completion of possibly asymmetric raw data; see make_two_photon.
TwoPhotonState symmetrize_two_photon(const TwoPhotonState& raw);

/// Superposition of two biphoton branches (q1,q2) + (s1,s2) sharing the
/// carrier pair (omega1, omega2), omega1 != omega2 strictly.
struct EntangledBiphotonState {
  Direction q1, q2; ///< branch a
  Direction s1, s2; ///< branch b
  double omega1 = 1.0;
  double omega2 = 0.5;
  double angular_width = 0.01;
  double frequency_width = 0.01;
  PolMatrix pol;
};

EntangledBiphotonState make_entangled_biphoton(const Direction& q1, const Direction& q2,
                                               const Direction& s1, const Direction& s2,
                                               double omega1, double omega2, const PolMatrix& pol,
                                               double angular_width, double frequency_width);

/// One laser mode of the two-laser configuration.
struct LaserMode {
  SpectralEnvelope envelope;
  Pol2 pol;
};

enum class PhaseMode { Fixed, Random };

/// Two independent coherent modes with equal moduli |A1| = |A2| = amplitude
/// and either pinned or uniformly random relative phases.
struct TwoModeCoherentState {
  LaserMode mode1;
  LaserMode mode2;
  double amplitude = 1.0;
  PhaseMode phase_mode = PhaseMode::Random;
  double phase1 = 0.0; ///< used by PhaseMode::Fixed
  double phase2 = 0.0;
};

TwoModeCoherentState make_two_mode_coherent(const LaserMode& m1, const LaserMode& m2,
                                            double amplitude, PhaseMode mode, double phase1 = 0.0,
                                            double phase2 = 0.0);

/// Polarization vector p = c_alpha e_alpha(s) in the basis attached to s.
CVec3 polarization_vector(const Pol2& c, const PolarizationBasis& basis);

/// True when the chosen Cartesian field component of the incident
/// polarization vanishes, i.e. the incident beam is invisible to a detector
/// measuring that component.
bool eliminated_component_exists(const OnePhotonState& state, int component);

/// JSON round trips; schema: {"kind": <tag>, ...numeric fields...}.
std::string state_to_json(const OnePhotonState&);
std::string state_to_json(const CoherentState&);
std::string state_to_json(const TwoPhotonState&);
std::string state_to_json(const EntangledBiphotonState&);
std::string state_to_json(const TwoModeCoherentState&);

/// Tagged union used by deserialization.
struct AnyState;
AnyState state_from_json(const std::string& text);

struct AnyState {
  enum class Kind { OnePhoton, Coherent, TwoPhoton, EntangledBiphoton, TwoModeCoherent } kind;
  OnePhotonState one_photon{};
  CoherentState coherent{};
  TwoPhotonState two_photon{};
  EntangledBiphotonState entangled{};
  TwoModeCoherentState two_mode{};
};

} // namespace bornscat
