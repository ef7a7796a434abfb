#include <doctest.h>

#include <cmath>
#include <numbers>

#include "torusmirror/matrix_kernel.hpp"
#include "torusmirror/random.hpp"

using namespace torusmirror;
constexpr double kPi = std::numbers::pi;

namespace {

ComplexMatrix random_antisymmetric(Rng& rng, int d) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      m(j, i) = -m(i, j);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("symmetry predicates") {
  CHECK(is_symmetric(RealMatrix(RealMatrix::Identity(3, 3))));
  RealMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  CHECK_FALSE(is_symmetric(nil));
  CHECK(asymmetry(nil) == doctest::Approx(1.0));

  ComplexMatrix a(2, 2), t(2, 2);
  a << 0, 1, 0, 0;
  t << Complex(0, 1), 0.5, 0.5, Complex(0, 1);
  // a T = [[1/2, i], [0, 0]]
  const ComplexMatrix at = a * t;
  CHECK(std::abs(at(0, 0) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(at(0, 1) - Complex(0, 1)) < 1e-15);
  CHECK_FALSE(is_symmetric(at));

  RealMatrix anti(2, 2);
  anti << 0, 2, -2, 0;
  CHECK(is_antisymmetric(anti));
  CHECK_FALSE(is_antisymmetric(nil));
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(RealMatrix(RealMatrix::Identity(4, 4))));
  RealMatrix d(2, 2);
  d << 1, 0, 0, -1;
  CHECK_FALSE(is_positive_definite(d));
  RealMatrix m(2, 2);
  m << 2, 1, 1, 2;
  CHECK(is_positive_definite(m));
  CHECK(smallest_eigenvalue(m) == doctest::Approx(1.0));
  RealMatrix bad(2, 2);
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(is_positive_definite(bad), Error);
}

TEST_CASE("positive definiteness agrees with leading principal minors") {
  // Sylvester's criterion as an independent oracle over small integer matrices.
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      for (int c = -2; c <= 2; ++c) {
        RealMatrix m(2, 2);
        m << a, b, b, c;
        const bool sylvester = a > 0 && a * c - b * b > 0;
        CHECK(is_positive_definite(m) == sylvester);
      }
    }
  }
  Rng rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    RealMatrix m(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = rng.integer(-3, 3);
    }
    const bool sylvester = m(0, 0) > 0 && m.topLeftCorner(2, 2).determinant() > 0.5 && m.determinant() > 0.5;
    CHECK(is_positive_definite(m) == sylvester);
  }
}

TEST_CASE("pfaffian small cases") {
  ComplexMatrix m(2, 2);
  m << 0, 3.5, -3.5, 0;
  CHECK(std::abs(pfaffian(m) - 3.5) < 1e-15);

  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  b(0, 1) = 1;
  b(1, 0) = -1;
  b(2, 3) = 1;
  b(3, 2) = -1;
  CHECK(std::abs(pfaffian(b) - 1.0) < 1e-15);

  Rng rng(3, 0);
  const ComplexMatrix r = random_antisymmetric(rng, 4);
  const Complex expected = r(0, 1) * r(2, 3) - r(0, 2) * r(1, 3) + r(0, 3) * r(1, 2);
  CHECK(std::abs(pfaffian(r) - expected) < 1e-14);
  CHECK(std::abs(pfaffian(ComplexMatrix(0, 0)) - 1.0) == 0.0);
}

TEST_CASE("pfaffian squares to the determinant") {
  Rng rng(5, 0);
  for (int d = 2; d <= 8; d += 2) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix m = random_antisymmetric(rng, d);
      const Complex pf = pfaffian(m);
      const Complex det = m.determinant();
      CHECK(std::abs(pf * pf - det) <= 1e-9 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("pfaffian rejects bad input") {
  CHECK_THROWS_AS(pfaffian(ComplexMatrix::Zero(3, 3)), Error);
  CHECK_THROWS_AS(pfaffian(ComplexMatrix::Zero(10, 10)), Error);
  ComplexMatrix s = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(pfaffian(s), Error);
}

TEST_CASE("phase modulo pi") {
  CHECK(phase_mod_pi(Complex(1, 0)) == doctest::Approx(0.0));
  CHECK(phase_mod_pi(Complex(0, 1)) == doctest::Approx(kPi / 2));
  // arg(-1 - i) = -3 pi / 4, negated and reduced: 3 pi / 4.
  CHECK(phase_mod_pi(Complex(-1, -1)) == doctest::Approx(3 * kPi / 4));
  CHECK(phase_mod_pi(Complex(1, 1)) == doctest::Approx(3 * kPi / 4));
  CHECK(phase_mod_pi(Complex(1, -1)) == doctest::Approx(kPi / 4));
  CHECK_THROWS_AS(phase_mod_pi(Complex(1e-12, 0)), Error);
  try {
    phase_mod_pi(Complex(0, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIndeterminatePhase);
  }
}

TEST_CASE("phase is invariant under real scaling and makes e^{i theta} z real") {
  Rng rng(9, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex z(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const double lambda = rng.coin() ? rng.uniform(0.1, 10) : -rng.uniform(0.1, 10);
    const double theta = phase_mod_pi(z);
    CHECK(theta >= 0.0);
    CHECK(theta < kPi);
    CHECK(phase_distance_mod_pi(phase_mod_pi(lambda * z), theta) < 1e-12);
    CHECK(std::abs((std::exp(Complex(0, theta)) * z).imag()) < 1e-12 * std::abs(z));
  }
}

TEST_CASE("tolerance config validation") {
  CHECK_NOTHROW(ToleranceConfig{}.validate());
  CHECK_THROWS_AS((ToleranceConfig{0.0, 1e-9, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((ToleranceConfig{1e-9, -1.0, 1e-9}.validate()), Error);
}
