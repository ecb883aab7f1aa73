#include <cmath>
#include <random>

#include "bornscat/errors.hpp"
#include "bornscat/geometry.hpp"
#include "doctest.h"

using namespace bornscat;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec3 v{g(rng), g(rng), g(rng)};
    if (norm(v) > 1e-3) return v * (1.0 / norm(v));
  }
}

} // namespace

TEST_CASE("unit normalizes and rejects the zero vector") {
  const Direction d = unit(Vec3{0.0, 0.0, 2.0});
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[2] == doctest::Approx(1.0));

  const Direction e = unit(Vec3{1.0, 0.0, 0.0});
  CHECK(e[0] == 1.0);

  const Direction f = unit(Vec3{1.0, 1.0, 0.0});
  CHECK(f[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS((void)unit(Vec3{0.0, 0.0, 0.0}), ValidationError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    std::normal_distribution<double> g(0.0, 10.0);
    const Vec3 v{g(rng), g(rng), g(rng)};
    if (norm(v) == 0.0) continue;
    CHECK(norm(unit(v).v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("transverse projector axis-aligned cases") {
  const Mat3 pz = transverse_projector(unit(Vec3{0.0, 0.0, 1.0}));
  CHECK(pz(0, 0) == doctest::Approx(1.0));
  CHECK(pz(1, 1) == doctest::Approx(1.0));
  CHECK(pz(2, 2) == doctest::Approx(0.0));
  const Mat3 px = transverse_projector(unit(Vec3{1.0, 0.0, 0.0}));
  CHECK(px(0, 0) == doctest::Approx(0.0));
  CHECK(px(1, 1) == doctest::Approx(1.0));
  CHECK(px(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("transverse projector is idempotent, annihilates n, trace 2") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Direction n{random_unit(rng)};
    const Mat3 p = transverse_projector(n);
    const Mat3 pp = p * p;
    double trace = 0.0;
    for (int r = 0; r < 3; ++r) {
      trace += p(r, r);
      for (int c = 0; c < 3; ++c) {
        CHECK(pp(r, c) == doctest::Approx(p(r, c)).epsilon(1e-12));
        CHECK(p(r, c) == doctest::Approx(p(c, r)).epsilon(1e-12));
      }
    }
    CHECK(trace == doctest::Approx(2.0).epsilon(1e-12));
    const Vec3 pn = p * n.v;
    CHECK(norm(pn) < 1e-12);
  }
}

TEST_CASE("polarization basis is orthonormal and right-handed everywhere") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Direction s{random_unit(rng)};
    const PolarizationBasis b = polarization_basis(s);
    CHECK(dot(b.e1, b.e1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dot(b.e2, b.e2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dot(b.e1, b.e2)) < 1e-12);
    CHECK(std::abs(dot(b.e1, s.v)) < 1e-12);
    CHECK(std::abs(dot(b.e2, s.v)) < 1e-12);
    CHECK(norm(cross(b.e1, b.e2) - s.v) < 1e-12);
  }
  // fallback when the carrier is parallel to the x reference
  const PolarizationBasis bx = polarization_basis(unit(Vec3{1.0, 0.0, 0.0}));
  CHECK(std::abs(dot(bx.e1, Vec3{1.0, 0.0, 0.0})) < 1e-12);
  const PolarizationBasis bmx = polarization_basis(unit(Vec3{-1.0, 0.0, 0.0}));
  CHECK(std::abs(dot(bmx.e1, Vec3{1.0, 0.0, 0.0})) < 1e-12);
}

TEST_CASE("fixed frame matches its defining component lists") {
  // phi = 0 collapses both carriers onto z with the shared transverse pair.
  {
    const auto [b1, b2] = appendix_basis(0.0);
    CHECK(norm(b1.carrier.v - Vec3{0.0, 0.0, 1.0}) < 1e-15);
    CHECK(norm(b2.carrier.v - Vec3{0.0, 0.0, 1.0}) < 1e-15);
    CHECK(norm(b1.e1 - Vec3{1.0, 0.0, 0.0}) < 1e-15);
    CHECK(norm(b2.e1 - Vec3{1.0, 0.0, 0.0}) < 1e-15);
    CHECK(norm(b1.e2 - Vec3{0.0, 1.0, 0.0}) < 1e-15);
    CHECK(norm(b2.e2 - Vec3{0.0, 1.0, 0.0}) < 1e-15);
  }
  // phi = pi/2 puts the second carrier on y with e2 = -z.
  {
    const auto [b1, b2] = appendix_basis(M_PI / 2.0);
    CHECK(norm(b2.carrier.v - Vec3{0.0, 1.0, 0.0}) < 1e-12);
    CHECK(norm(b2.e2 - Vec3{0.0, 0.0, -1.0}) < 1e-12);
  }
}

TEST_CASE("fixed frame is transverse-orthonormal for all phi") {
  for (int k = 0; k < 64; ++k) {
    const double phi = 2.0 * M_PI * k / 64.0;
    const auto [b1, b2] = appendix_basis(phi);
    for (const PolarizationBasis& b : {b1, b2}) {
      CHECK(std::abs(dot(b.e1, b.carrier.v)) < 1e-12);
      CHECK(std::abs(dot(b.e2, b.carrier.v)) < 1e-12);
      CHECK(std::abs(dot(b.e1, b.e2)) < 1e-12);
      CHECK(dot(b.e1, b.e1) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(dot(b.e2, b.e2) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // The general Gram-Schmidt convention reproduces the fixed frame.
    const PolarizationBasis g = polarization_basis(b2.carrier);
    CHECK(norm(g.e1 - b2.e1) < 1e-12);
    CHECK(norm(g.e2 - b2.e2) < 1e-12);
  }
}

TEST_CASE("scenario projections") {
  const Vec3 a{0.0, 0.0, 2.5};
  const Direction along = unit(a);
  const Direction against = unit(-a);
  const GeometryScenario g1 = scenario_params(along, against, a);
  CHECK(g1.sigma == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g1.nu == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g1.chi == doctest::Approx(1.0).epsilon(1e-14));

  const GeometryScenario g2 = scenario_params(unit(Vec3{1.0, 0.0, 0.0}), along, a);
  CHECK(std::abs(g2.sigma) < 1e-15);

  const double theta = 0.7;
  const GeometryScenario g3 =
      scenario_params(unit(Vec3{std::sin(theta), 0.0, std::cos(theta)}), along, a);
  CHECK(g3.sigma == doctest::Approx(std::cos(theta)).epsilon(1e-14));

  CHECK_THROWS_AS((void)scenario_params(along, against, Vec3{0.0, 0.0, 0.0}), ValidationError);

  const GeometryScenario g4 = scenario_params(along, against, unit(Vec3{0.0, 1.0, 1.0}), a);
  CHECK(g4.kappa == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("direction_with_projection realizes the requested projection") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double p = u(rng);
    const double az = 3.0 * u(rng);
    const Direction d = direction_with_projection(p, az);
    CHECK(d[2] == p);
    CHECK(norm(d.v) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)direction_with_projection(1.5, 0.0), ValidationError);
}
