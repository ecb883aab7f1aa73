#include <cmath>

#include "bornscat/correlators.hpp"
#include "bornscat/errors.hpp"
#include "bornscat/presets.hpp"
#include "bornscat/states.hpp"
#include "doctest.h"

using namespace bornscat;

namespace {
const Direction kZ = unit(Vec3{0.0, 0.0, 1.0});
}

TEST_CASE("one-photon constructor normalizes the polarization coefficients") {
  const OnePhotonState a = make_one_photon(1.0, kZ, Pol2{1.0, 0.0}, 0.01, 0.01);
  CHECK(a.pol[0] == Complex{1.0, 0.0});
  CHECK(a.pol[1] == Complex{0.0, 0.0});

  const OnePhotonState b = make_one_photon(1.0, kZ, Pol2{1.0, 1.0}, 0.01, 0.01);
  CHECK(b.pol[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(b.pol[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS((void)make_one_photon(1.0, kZ, Pol2{0.0, 0.0}, 0.01, 0.01), ValidationError);
  CHECK_THROWS_AS((void)make_one_photon(-1.0, kZ, Pol2{1.0, 0.0}, 0.01, 0.01), ValidationError);
  CHECK_THROWS_AS((void)make_one_photon(0.0, kZ, Pol2{1.0, 0.0}, 0.01, 0.01), ValidationError);
}

TEST_CASE("envelope frequency gate") {
  const SpectralEnvelope e = make_envelope(1.0, kZ, 0.01, 0.02);
  CHECK(e.frequency_factor(1.0) == 1.0);
  CHECK(e.frequency_factor(1.02) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(e.frequency_factor(1.07) == 0.0); // beyond three widths
  CHECK(e.frequency_factor(-1.0) == 1.0); // magnitude convention
  CHECK(e.narrowband());
}

TEST_CASE("eliminated component bookkeeping") {
  // carrier +z with c = (1,0): p = x
  const OnePhotonState st = make_one_photon(1.0, kZ, Pol2{1.0, 0.0}, 0.01, 0.01);
  CHECK(eliminated_component_exists(st, 1));  // p_y = 0
  CHECK(!eliminated_component_exists(st, 0)); // p_x = 1
  const OnePhotonState diag =
      make_one_photon(1.0, kZ, Pol2{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, 0.01, 0.01);
  CHECK(!eliminated_component_exists(diag, 0)); // p_x = 1/sqrt(2)
  CHECK(eliminated_component_exists(diag, 2));  // transverse to z
  CHECK_THROWS_AS((void)eliminated_component_exists(st, 3), ValidationError);
}

TEST_CASE("two-photon symmetrization and canonical envelope order") {
  const SpectralEnvelope e1 = make_envelope(1.0, kZ, 0.01, 0.01);
  const SpectralEnvelope e2 = make_envelope(0.75, unit(Vec3{0.0, 1.0, 0.0}), 0.01, 0.0075);

  PolMatrix sym{};
  sym[0][0] = 1.0;
  const TwoPhotonState a = make_two_photon(e1, e2, sym);
  CHECK(a.pol[0][0] == Complex{1.0, 0.0});
  CHECK(a.pol[0][1] == Complex{0.0, 0.0});
  CHECK(!a.degenerate);
  // envelopes stored ascending in carrier frequency
  CHECK(a.env1.carrier_frequency == 0.75);
  CHECK(a.env2.carrier_frequency == 1.0);

  // off-diagonal completion: c12 set, c21 absent -> both equal, norm 1
  PolMatrix off{};
  off[0][1] = 2.0;
  const TwoPhotonState b = make_two_photon(e1, e2, off);
  CHECK(b.pol[0][1] == b.pol[1][0]);
  CHECK(std::abs(b.pol[0][1]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  // swapped envelopes give the identical state object
  const TwoPhotonState c = make_two_photon(e2, e1, sym);
  CHECK(c.env1.carrier_frequency == a.env1.carrier_frequency);
  CHECK(norm(c.env1.carrier_direction.v - a.env1.carrier_direction.v) == 0.0);
  CHECK(c.pol == a.pol);

  // symmetrize_two_photon is idempotent
  const TwoPhotonState d = symmetrize_two_photon(a);
  CHECK(d.pol == a.pol);
  CHECK(d.env1.carrier_frequency == a.env1.carrier_frequency);

  CHECK_THROWS_AS((void)make_two_photon(e1, e2, PolMatrix{}), ValidationError);

  const TwoPhotonState deg = make_two_photon(e1, make_envelope(1.0, e2.carrier_direction,
                                                               0.01, 0.01), sym);
  CHECK(deg.degenerate);
}

TEST_CASE("entangled biphoton requires distinct carriers") {
  PolMatrix c{};
  c[0][0] = 1.0;
  const Direction y = unit(Vec3{0.0, 1.0, 0.0});
  CHECK_THROWS_AS((void)make_entangled_biphoton(kZ, y, kZ, y, 1.0, 1.0, c, 0.01, 0.01),
                  ValidationError);
  const EntangledBiphotonState st = make_entangled_biphoton(kZ, y, kZ, y, 1.0, 0.8, c, 0.01, 0.01);
  CHECK(st.omega1 == 1.0);
  CHECK(st.omega2 == 0.8);
}

TEST_CASE("two-mode coherent state validation") {
  LaserMode m1{make_envelope(1.0, kZ, 0.01, 0.01), Pol2{2.0, 0.0}};
  LaserMode m2{make_envelope(0.75, unit(Vec3{0, 1, 0}), 0.01, 0.0075), Pol2{1.0, 0.0}};
  const TwoModeCoherentState st = make_two_mode_coherent(m1, m2, 1.5, PhaseMode::Fixed, 0.1, 0.2);
  CHECK(std::abs(st.mode1.pol[0]) == doctest::Approx(1.0).epsilon(1e-14)); // renormalized
  CHECK(st.amplitude == 1.5);
  CHECK_THROWS_AS((void)make_two_mode_coherent(m1, m2, -1.0, PhaseMode::Random), ValidationError);
}

TEST_CASE("state JSON round trips") {
  const std::string one = state_to_json(make_one_photon(2.0, kZ, Pol2{0.6, Complex{0.0, 0.8}},
                                                        0.02, 0.03));
  const AnyState a = state_from_json(one);
  REQUIRE(a.kind == AnyState::Kind::OnePhoton);
  CHECK(state_to_json(a.one_photon) == one);

  const std::string coh =
      state_to_json(make_coherent(2.0, kZ, Pol2{1.0, 0.0}, Complex{0.5, -0.5}, 0.02, 0.03));
  const AnyState b = state_from_json(coh);
  REQUIRE(b.kind == AnyState::Kind::Coherent);
  CHECK(state_to_json(b.coherent) == coh);

  PolMatrix c{};
  c[0][1] = 1.0;
  const std::string two = state_to_json(make_two_photon(
      make_envelope(1.0, kZ, 0.01, 0.01),
      make_envelope(0.75, unit(Vec3{0, 1, 0}), 0.01, 0.0075), c));
  const AnyState d = state_from_json(two);
  REQUIRE(d.kind == AnyState::Kind::TwoPhoton);
  CHECK(state_to_json(d.two_photon) == two);

  const std::string ent = state_to_json(make_entangled_biphoton(
      unit(Vec3{0, 0.6, 0.8}), unit(Vec3{0, 1, 0}), kZ, unit(Vec3{0.6, 0, 0.8}), 1.0, 0.75, c,
      0.01, 0.01));
  const AnyState e = state_from_json(ent);
  REQUIRE(e.kind == AnyState::Kind::EntangledBiphoton);
  CHECK(state_to_json(e.entangled) == ent);

  LaserMode m1{make_envelope(1.0, kZ, 0.01, 0.01), Pol2{1.0, 0.0}};
  LaserMode m2{make_envelope(0.75, unit(Vec3{0, 1, 0}), 0.01, 0.0075), Pol2{0.0, 1.0}};
  const std::string tl =
      state_to_json(make_two_mode_coherent(m1, m2, 1.0, PhaseMode::Random));
  const AnyState f = state_from_json(tl);
  REQUIRE(f.kind == AnyState::Kind::TwoModeCoherent);
  CHECK(state_to_json(f.two_mode) == tl);

  CHECK_THROWS_AS((void)state_from_json("{not json"), ValidationError);
  CHECK_THROWS_AS((void)state_from_json("{\"kind\":\"bogus\"}"), ValidationError);
}

TEST_CASE("random-phase Monte Carlo error scales as N^{-1/2}") {
  // Degenerate carriers make both modes visible to both detectors, so the
  // phase-dependent exchange term is active and the estimator has variance.
  const double omega = 1.0;
  LaserMode m1{make_envelope(omega, direction_with_projection(0.95, 2.2), 0.01, 0.01),
               Pol2{1.0, 0.0}};
  LaserMode m2{make_envelope(omega, direction_with_projection(0.65, 5.3), 0.01, 0.01),
               Pol2{1.0, 0.0}};
  const TwoModeCoherentState st = make_two_mode_coherent(m1, m2, 1.0, PhaseMode::Random);
  const ScattererModel model = TwoPointCenters(preset_lambda_iso(0.01), Vec3{0.0, 0.0, 1.4});
  const Detector d1(direction_with_projection(-0.85, 1.1), 1.0e6, 0, omega);
  const Detector d2(direction_with_projection(-0.55, 3.6), 1.0e6, 0, omega);

  const double exact = two_laser_phi2(st, d1, d2, model);
  REQUIRE(exact > 0.0);

  auto rms_err = [&](int n) {
    double acc = 0.0;
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
      const double mc = two_laser_phi2_mc(st, d1, d2, model, n, seed);
      acc += (mc - exact) * (mc - exact);
    }
    return std::sqrt(acc / 24.0);
  };
  const double err_1e4 = rms_err(10000);
  const double err_4e4 = rms_err(40000);
  CHECK(err_1e4 / exact < 0.05);           // converged at N = 1e4
  const double ratio = err_1e4 / err_4e4;  // expect ~ 2 for N^{-1/2}
  CHECK(ratio > 1.4);
  CHECK(ratio < 2.9);
}
