#include "bornscat/states.hpp"

#include <cmath>
#include <tuple>

#include "bornscat/errors.hpp"
#include "json.hpp"

namespace bornscat {

namespace {

double pol_norm(const Pol2& c) { return std::sqrt(std::norm(c[0]) + std::norm(c[1])); }

double pol_matrix_norm(const PolMatrix& c) {
  double s = 0.0;
  for (const auto& row : c)
    for (const auto& e : row) s += std::norm(e);
  return std::sqrt(s);
}

Pol2 normalized(const Pol2& c, const char* what) {
  const double n = pol_norm(c);
  if (!(n > 0.0)) throw ValidationError(std::string(what) + ": zero polarization coefficients");
  if (std::abs(n - 1.0) <= 8e-16) return c; // keeps normalization idempotent
  return {c[0] / n, c[1] / n};
}

std::tuple<double, double, double, double> order_key(const SpectralEnvelope& e) {
  return {e.carrier_frequency, e.carrier_direction[0], e.carrier_direction[1],
          e.carrier_direction[2]};
}

void validate_envelope(const SpectralEnvelope& e, const char* what) {
  if (!(e.carrier_frequency > 0.0))
    throw ValidationError(std::string(what) + ": carrier frequency must be positive");
  if (!(e.angular_width > 0.0) || !(e.frequency_width > 0.0))
    throw ValidationError(std::string(what) + ": envelope widths must be positive");
}

} // namespace

double SpectralEnvelope::frequency_factor(double omega) const {
  const double d = std::abs(omega) - carrier_frequency;
  if (std::abs(d) > 3.0 * frequency_width) return 0.0;
  return std::exp(-0.5 * d * d / (frequency_width * frequency_width));
}

bool SpectralEnvelope::narrowband() const {
  return angular_width < 0.1 && frequency_width < 0.1 * carrier_frequency;
}

SpectralEnvelope make_envelope(double carrier_frequency, const Direction& s, double angular_width,
                               double frequency_width) {
  SpectralEnvelope e{carrier_frequency, s, angular_width, frequency_width};
  validate_envelope(e, "make_envelope");
  return e;
}

OnePhotonState make_one_photon(double carrier_frequency, const Direction& s, const Pol2& c,
                               double angular_width, double frequency_width) {
  return {make_envelope(carrier_frequency, s, angular_width, frequency_width),
          normalized(c, "make_one_photon")};
}

CoherentState make_coherent(double carrier_frequency, const Direction& s, const Pol2& c,
                            Complex amplitude, double angular_width, double frequency_width) {
  return {make_envelope(carrier_frequency, s, angular_width, frequency_width),
          normalized(c, "make_coherent"), amplitude};
}

TwoPhotonState make_two_photon(const SpectralEnvelope& a, const SpectralEnvelope& b,
                               const PolMatrix& raw_pol) {
  validate_envelope(a, "make_two_photon");
  validate_envelope(b, "make_two_photon");
  PolMatrix c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = 0.5 * (raw_pol[i][j] + raw_pol[j][i]);
  const double n = pol_matrix_norm(c);
  if (!(n > 0.0)) throw ValidationError("make_two_photon: zero pair coefficients");
  if (std::abs(n - 1.0) > 8e-16)
    for (auto& row : c)
      for (auto& e : row) e /= n;
  TwoPhotonState st{a, b, c, false};
  if (order_key(b) < order_key(a)) std::swap(st.env1, st.env2); // c symmetric, so no transpose
  const double scale = std::max(a.carrier_frequency, b.carrier_frequency);
  st.degenerate = std::abs(a.carrier_frequency - b.carrier_frequency) <= 1e-12 * scale;
  return st;
}

TwoPhotonState symmetrize_two_photon(const TwoPhotonState& raw) {
  return make_two_photon(raw.env1, raw.env2, raw.pol);
}

EntangledBiphotonState make_entangled_biphoton(const Direction& q1, const Direction& q2,
                                               const Direction& s1, const Direction& s2,
                                               double omega1, double omega2, const PolMatrix& pol,
                                               double angular_width, double frequency_width) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw ValidationError("make_entangled_biphoton: carrier frequencies must be positive");
  if (std::abs(omega1 - omega2) <= 1e-12 * std::max(omega1, omega2))
    throw ValidationError("make_entangled_biphoton: requires distinct carrier frequencies");
  if (!(angular_width > 0.0) || !(frequency_width > 0.0))
    throw ValidationError("make_entangled_biphoton: envelope widths must be positive");
  PolMatrix c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = 0.5 * (pol[i][j] + pol[j][i]);
  const double n = pol_matrix_norm(c);
  if (!(n > 0.0)) throw ValidationError("make_entangled_biphoton: zero pair coefficients");
  if (std::abs(n - 1.0) > 8e-16)
    for (auto& row : c)
      for (auto& e : row) e /= n;
  return {q1, q2, s1, s2, omega1, omega2, angular_width, frequency_width, c};
}

TwoModeCoherentState make_two_mode_coherent(const LaserMode& m1, const LaserMode& m2,
                                            double amplitude, PhaseMode mode, double phase1,
                                            double phase2) {
  validate_envelope(m1.envelope, "make_two_mode_coherent");
  validate_envelope(m2.envelope, "make_two_mode_coherent");
  if (!(amplitude >= 0.0)) throw ValidationError("make_two_mode_coherent: negative amplitude");
  TwoModeCoherentState st{m1, m2, amplitude, mode, phase1, phase2};
  st.mode1.pol = normalized(m1.pol, "make_two_mode_coherent");
  st.mode2.pol = normalized(m2.pol, "make_two_mode_coherent");
  return st;
}

CVec3 polarization_vector(const Pol2& c, const PolarizationBasis& basis) {
  CVec3 p;
  for (int i = 0; i < 3; ++i) p[i] = c[0] * basis.e1[i] + c[1] * basis.e2[i];
  return p;
}

bool eliminated_component_exists(const OnePhotonState& state, int component) {
  if (component < 0 || component > 2)
    throw ValidationError("eliminated_component_exists: component index out of range");
  const CVec3 p =
      polarization_vector(state.pol, polarization_basis(state.envelope.carrier_direction));
  return std::abs(p[component]) < 1e-12;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }
Complex complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json direction_to_json(const Direction& d) { return json::array({d[0], d[1], d[2]}); }
Direction direction_from_json(const json& j) {
  return unit(Vec3{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()});
}

json envelope_to_json(const SpectralEnvelope& e) {
  return {{"carrier_frequency", e.carrier_frequency},
          {"carrier_direction", direction_to_json(e.carrier_direction)},
          {"angular_width", e.angular_width},
          {"frequency_width", e.frequency_width}};
}
SpectralEnvelope envelope_from_json(const json& j) {
  return make_envelope(j.at("carrier_frequency").get<double>(),
                       direction_from_json(j.at("carrier_direction")),
                       j.at("angular_width").get<double>(), j.at("frequency_width").get<double>());
}

json pol_to_json(const Pol2& c) { return json::array({complex_to_json(c[0]), complex_to_json(c[1])}); }
Pol2 pol_from_json(const json& j) { return {complex_from_json(j.at(0)), complex_from_json(j.at(1))}; }

json pol_matrix_to_json(const PolMatrix& c) {
  return json::array({pol_to_json(c[0]), pol_to_json(c[1])});
}
PolMatrix pol_matrix_from_json(const json& j) {
  return {pol_from_json(j.at(0)), pol_from_json(j.at(1))};
}

} // namespace

std::string state_to_json(const OnePhotonState& s) {
  json j = envelope_to_json(s.envelope);
  j["kind"] = "one_photon";
  j["pol"] = pol_to_json(s.pol);
  return j.dump(2);
}

std::string state_to_json(const CoherentState& s) {
  json j = envelope_to_json(s.envelope);
  j["kind"] = "coherent";
  j["pol"] = pol_to_json(s.pol);
  j["amplitude"] = complex_to_json(s.amplitude);
  return j.dump(2);
}

std::string state_to_json(const TwoPhotonState& s) {
  json j{{"kind", "two_photon"},
         {"envelopes", json::array({envelope_to_json(s.env1), envelope_to_json(s.env2)})},
         {"pol_matrix", pol_matrix_to_json(s.pol)}};
  return j.dump(2);
}

std::string state_to_json(const EntangledBiphotonState& s) {
  json j{{"kind", "entangled_biphoton"},
         {"branch_a", json::array({direction_to_json(s.q1), direction_to_json(s.q2)})},
         {"branch_b", json::array({direction_to_json(s.s1), direction_to_json(s.s2)})},
         {"frequencies", json::array({s.omega1, s.omega2})},
         {"angular_width", s.angular_width},
         {"frequency_width", s.frequency_width},
         {"pol_matrix", pol_matrix_to_json(s.pol)}};
  return j.dump(2);
}

std::string state_to_json(const TwoModeCoherentState& s) {
  json j{{"kind", "two_mode_coherent"},
         {"modes", json::array({json{{"envelope", envelope_to_json(s.mode1.envelope)},
                                     {"pol", pol_to_json(s.mode1.pol)}},
                                json{{"envelope", envelope_to_json(s.mode2.envelope)},
                                     {"pol", pol_to_json(s.mode2.pol)}}})},
         {"amplitude_modulus", s.amplitude},
         {"phase_mode", s.phase_mode == PhaseMode::Fixed ? "fixed" : "random"},
         {"phases", json::array({s.phase1, s.phase2})}};
  return j.dump(2);
}

AnyState state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("state JSON parse error: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    AnyState st{};
    if (kind == "one_photon") {
      st.kind = AnyState::Kind::OnePhoton;
      const SpectralEnvelope e = envelope_from_json(j);
      st.one_photon = make_one_photon(e.carrier_frequency, e.carrier_direction,
                                      pol_from_json(j.at("pol")), e.angular_width,
                                      e.frequency_width);
    } else if (kind == "coherent") {
      st.kind = AnyState::Kind::Coherent;
      const SpectralEnvelope e = envelope_from_json(j);
      st.coherent = make_coherent(e.carrier_frequency, e.carrier_direction,
                                  pol_from_json(j.at("pol")),
                                  complex_from_json(j.at("amplitude")), e.angular_width,
                                  e.frequency_width);
    } else if (kind == "two_photon") {
      st.kind = AnyState::Kind::TwoPhoton;
      st.two_photon = make_two_photon(envelope_from_json(j.at("envelopes").at(0)),
                                      envelope_from_json(j.at("envelopes").at(1)),
                                      pol_matrix_from_json(j.at("pol_matrix")));
    } else if (kind == "entangled_biphoton") {
      st.kind = AnyState::Kind::EntangledBiphoton;
      st.entangled = make_entangled_biphoton(
          direction_from_json(j.at("branch_a").at(0)), direction_from_json(j.at("branch_a").at(1)),
          direction_from_json(j.at("branch_b").at(0)), direction_from_json(j.at("branch_b").at(1)),
          j.at("frequencies").at(0).get<double>(), j.at("frequencies").at(1).get<double>(),
          pol_matrix_from_json(j.at("pol_matrix")), j.at("angular_width").get<double>(),
          j.at("frequency_width").get<double>());
    } else if (kind == "two_mode_coherent") {
      st.kind = AnyState::Kind::TwoModeCoherent;
      LaserMode m1{envelope_from_json(j.at("modes").at(0).at("envelope")),
                   pol_from_json(j.at("modes").at(0).at("pol"))};
      LaserMode m2{envelope_from_json(j.at("modes").at(1).at("envelope")),
                   pol_from_json(j.at("modes").at(1).at("pol"))};
      const std::string pm = j.at("phase_mode").get<std::string>();
      if (pm != "fixed" && pm != "random")
        throw ValidationError("state JSON: phase_mode must be fixed|random");
      st.two_mode = make_two_mode_coherent(
          m1, m2, j.at("amplitude_modulus").get<double>(),
          pm == "fixed" ? PhaseMode::Fixed : PhaseMode::Random,
          j.at("phases").at(0).get<double>(), j.at("phases").at(1).get<double>());
    } else {
      throw ValidationError("state JSON: unknown kind '" + kind + "'");
    }
    return st;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("state JSON schema error: ") + e.what());
  }
}

} // namespace bornscat
