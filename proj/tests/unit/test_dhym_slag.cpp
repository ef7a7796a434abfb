#include <doctest.h>

#include <cmath>
#include <numbers>

#include "torusmirror/dhym_slag.hpp"
#include "torusmirror/random.hpp"

using namespace torusmirror;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const Complex kI(0.0, 1.0);

IntMatrix scalar_int(int v) { return IntMatrix::Constant(1, 1, v); }
ComplexTorus unit_torus(int n) { return ComplexTorus(RealMatrix::Zero(n, n), RealMatrix::Identity(n, n)); }

SectionData wobble() {
  SectionData s = SectionData::affine(IntMatrix::Zero(1, 1));
  s.modes.push_back({IntVector::Ones(1), RealVector::Constant(1, 0.1), RealVector::Zero(1)});
  s.validate();
  return s;
}

GeneratedObject affine_object(std::uint64_t seed, int n) {
  Rng rng(seed, static_cast<std::uint64_t>(n));
  return random_object(rng, n, rng.coin() ? ObjectFamily::kSymmetricAffine : ObjectFamily::kDiagonalAffine);
}

}  // namespace

TEST_CASE("Kahler data on the standard torus") {
  const auto d = kahler_data(unit_torus(2));
  RealMatrix omega = RealMatrix::Zero(4, 4);
  omega.topRightCorner(2, 2).setIdentity();
  omega.bottomLeftCorner(2, 2) = -RealMatrix::Identity(2, 2);
  CHECK(max_abs_entry(d.omega_coeff - kTwoPi * omega) < 1e-14);
  CHECK(max_abs_entry(d.g_coeff - kTwoPi * RealMatrix::Identity(4, 4)) < 1e-14);
  RealMatrix j = RealMatrix::Zero(4, 4);
  j.topRightCorner(2, 2) = -RealMatrix::Identity(2, 2);
  j.bottomLeftCorner(2, 2).setIdentity();
  CHECK(max_abs_entry(d.j_coeff - j) < 1e-14);
  CHECK(kahler_verify(unit_torus(2)).pass);
}

TEST_CASE("Kahler compatibility on random tori and a perturbed negative control") {
  const ToleranceConfig tol{1e-12, 1e-12, 1e-12};
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Rng rng(30, 100 * n + trial);
      const ComplexTorus t = random_torus(rng, n);
      const auto r = kahler_verify(t, tol);
      CHECK(r.pass);
      CHECK(r.g_positive);
      CHECK(r.omega_invertible);
      auto d = kahler_data(t);
      d.j_coeff(0, 0) += 1e-3;
      CHECK_FALSE(kahler_verify(t, d, tol).pass);
    }
  }
}

TEST_CASE("dHYM top coefficient: worked values") {
  const BundleObject flat(unit_torus(1), IntMatrix::Zero(1, 1), SectionData::affine(IntMatrix::Zero(1, 1)));
  const auto top0 = dhym_top(flat, RealVector::Zero(1));
  CHECK(std::abs(top0.wedge_route - kTwoPi) < 1e-12);
  CHECK(std::abs(top0.closed_form - kTwoPi) < 1e-12);

  const BundleObject one(unit_torus(1), IntMatrix::Zero(1, 1), SectionData::affine(scalar_int(1)));
  const auto top1 = dhym_top(one, RealVector::Zero(1));
  CHECK(std::abs(top1.wedge_route - kTwoPi * kI * Complex(1, -1)) < 1e-12);
  const auto phase = dhym_phase(one);
  CHECK(phase.exists);
  CHECK(phase.theta == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
}

TEST_CASE("dHYM routes agree on random objects") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const auto g = mixed_object(31, i, n);
      const BundleObject obj(g.torus, g.tau, g.section);
      Rng rng(31, 1000 + i);
      CHECK(dhym_top(obj, random_real(rng, n, 1, 0, 1)).rel_diff < 1e-10);
    }
  }
}

TEST_CASE("dHYM phase") {
  const auto flat = dhym_phase(BundleObject(unit_torus(1), IntMatrix::Zero(1, 1), SectionData::affine(IntMatrix::Zero(1, 1))));
  CHECK(flat.exists);
  CHECK(std::abs(flat.theta) < 1e-12);

  const auto g = affine_object(32, 3);
  const auto r = dhym_phase(BundleObject(g.torus, g.tau, g.section));
  CHECK(r.exists);
  CHECK(r.max_phase_spread < 1e-12);

  const auto wobbly = dhym_phase(BundleObject(unit_torus(1), IntMatrix::Zero(1, 1), wobble()));
  CHECK_FALSE(wobbly.exists);
  CHECK(wobbly.max_phase_spread > 0.1);

  Rng rng(33, 0);
  const auto nh = random_object(rng, 2, ObjectFamily::kNonHolomorphic);
  try {
    dhym_phase(BundleObject(nh.torus, nh.tau, nh.section));
    FAIL("expected NotHolomorphic");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotHolomorphic);
  }
}

TEST_CASE("phase spread") {
  CHECK(phase_spread({}) == 0.0);
  CHECK(phase_spread({0.1, kPi - 0.1}) == doctest::Approx(0.2));
  CHECK(phase_spread({0.0, kPi / 2}) == doctest::Approx(kPi / 2));
  CHECK(phase_spread({0.3, 0.3, 0.3}) == doctest::Approx(0.0));
}

TEST_CASE("mirror period") {
  const ComplexTorus t = unit_torus(2);
  CHECK(max_abs_entry(mirror_period(t, IntMatrix::Zero(2, 2)) - kI * ComplexMatrix::Identity(2, 2)) < 1e-14);
  IntMatrix rot(2, 2);
  rot << 0, 1, -1, 0;
  try {
    mirror_period(t, rot);
    FAIL("expected MirrorUndefined");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kMirrorUndefined);
  }
}

TEST_CASE("sLag values: worked examples") {
  const GraphLagrangian flat(SectionData::affine(IntMatrix::Zero(2, 2)), IntMatrix::Zero(2, 2), unit_torus(2));
  CHECK(std::abs(slag_value(flat, RealVector::Zero(2)).frame_route - 1.0) < 1e-14);

  const GraphLagrangian one(SectionData::affine(scalar_int(1)), IntMatrix::Zero(1, 1), unit_torus(1));
  const auto v = slag_value(one, RealVector::Zero(1));
  CHECK(std::abs(v.closed_form - Complex(1, 1)) < 1e-14);
  CHECK(slag_phase(one).theta == doctest::Approx(3 * kPi / 4).epsilon(1e-12));

  // T' = (-1 - i)^-1, value (1 - i) / (-1 - i) = i.
  const GraphLagrangian twisted(SectionData::affine(scalar_int(1)), scalar_int(1), unit_torus(1));
  const auto w = slag_value(twisted, RealVector::Zero(1));
  CHECK(std::abs(w.frame_route - kI) < 1e-14);
  CHECK(std::abs(w.closed_form - kI) < 1e-14);
  CHECK(slag_phase(twisted).theta == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("sLag routes agree and phase behaviour") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const auto g = mixed_object(34, i, n);
      Rng rng(34, 1000 + i);
      const GraphLagrangian lag(g.section, g.tau, g.torus);
      CHECK(slag_value(lag, random_real(rng, n, 1, 0, 1)).rel_diff < 1e-10);
    }
  }
  const auto wobbly = slag_phase(GraphLagrangian(wobble(), IntMatrix::Zero(1, 1), unit_torus(1)));
  CHECK_FALSE(wobbly.exists);

  Rng rng(35, 0);
  const auto nh = random_object(rng, 2, ObjectFamily::kNonHolomorphic);
  try {
    slag_phase(GraphLagrangian(nh.section, nh.tau, nh.torus));
    FAIL("expected NotLagrangian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotLagrangian);
  }
}

TEST_CASE("dHYM and sLag phases correspond") {
  const auto flat = equivalence_check(SectionData::affine(IntMatrix::Zero(1, 1)), unit_torus(1), IntMatrix::Zero(1, 1));
  CHECK(flat.agree);
  CHECK(flat.same_theta);
  CHECK(std::abs(flat.theta_dhym) < 1e-12);
  CHECK(std::abs(flat.theta_slag) < 1e-12);

  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const auto g = affine_object(36 + i, n);
      const auto e = equivalence_check(g.section, g.torus, g.tau);
      CHECK(e.agree);
      CHECK(e.dhym_exists);
      CHECK(e.slag_exists);
      CHECK(e.delta_error < 1e-9);
      CHECK(e.delta_spread < 1e-12);
    }
  }

  const auto wobbly = equivalence_check(wobble(), unit_torus(1), IntMatrix::Zero(1, 1));
  CHECK(wobbly.agree);
  CHECK_FALSE(wobbly.dhym_exists);
  CHECK_FALSE(wobbly.slag_exists);

  Rng rng(37, 0);
  const auto nh = random_object(rng, 2, ObjectFamily::kNonHolomorphic);
  const auto v = equivalence_check(nh.section, nh.torus, nh.tau);
  CHECK(v.vacuous);
  CHECK(v.agree);
}
