#include <doctest.h>

#include <bit>
#include <cmath>

#include "torusmirror/exterior_forms.hpp"
#include "torusmirror/random.hpp"
#include "torusmirror/torus_gcs.hpp"

using namespace torusmirror;

namespace {

ExteriorForm random_form(Rng& rng, int dim, int degree) {
  ExteriorForm f(dim, degree);
  for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) {
    if (std::popcount(mask) == degree) f.add(mask, Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  }
  return f;
}

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

double max_diff(const ExteriorForm& a, const ExteriorForm& b) {
  const ExteriorForm diff = a - b;
  double d = 0.0;
  for (const auto& [mask, c] : diff.terms()) d = std::max(d, std::abs(c));
  return d;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("wedge basics") {
  const auto dx1 = ExteriorForm::basis(2, 0);
  CHECK(wedge(dx1, dx1).is_zero());

  // Basis order (x1, x2, y1, y2).
  const auto x1 = ExteriorForm::basis(4, 0), x2 = ExteriorForm::basis(4, 1);
  const auto y1 = ExteriorForm::basis(4, 2), y2 = ExteriorForm::basis(4, 3);
  const auto w = wedge(x1, y1) + wedge(x2, y2);
  const auto w2 = wedge(w, w);
  CHECK(w2.terms().size() == 1);
  CHECK(std::abs(top_coefficient(w2) - 2.0) < 1e-15);

  CHECK_THROWS_AS(wedge(dx1, ExteriorForm::basis(4, 0)), Error);
}

TEST_CASE("graded commutativity and associativity") {
  Rng rng(1, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = rng.integer(0, 3), q = rng.integer(0, 3);
    const auto f = random_form(rng, 6, p);
    const auto g = random_form(rng, 6, q);
    const double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
    CHECK(max_diff(wedge(f, g), wedge(g, f) * sign) < 1e-12);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_form(rng, 6, 2), g = random_form(rng, 6, 2), h = random_form(rng, 6, 2);
    CHECK(max_diff(wedge(f, wedge(g, h)), wedge(wedge(f, g), h)) < 1e-12);
    const auto k = random_form(rng, 6, 2);
    CHECK(max_diff(wedge(f, g + k), wedge(f, g) + wedge(f, k)) < 1e-12);
  }
}

TEST_CASE("2-forms and coefficient matrices") {
  CHECK(two_form_from_matrix(RealMatrix(RealMatrix::Zero(4, 4))).is_zero());
  RealMatrix j(2, 2);
  j << 0, 1, -1, 0;
  const auto f = two_form_from_matrix(j);
  CHECK(std::abs(f.coefficient(0b11) - 1.0) == 0.0);
  CHECK(std::abs(top_coefficient(f) - 1.0) == 0.0);

  Rng rng(2, 0);
  const ComplexMatrix m = random_antisymmetric(rng, 6);
  CHECK(max_abs_entry(to_matrix(two_form_from_matrix(m)) - m) == 0.0);
  CHECK_THROWS_AS(two_form_from_matrix(RealMatrix(RealMatrix::Identity(2, 2))), Error);
}

TEST_CASE("interleaving sign") {
  CHECK(interleaving_sign(1) == 1);
  CHECK(interleaving_sign(2) == -1);
  for (int n = 1; n <= 4; ++n) CHECK(interleaving_sign(n) == ((n * (n - 1) / 2) % 2 == 0 ? 1 : -1));
  // dx1 ^ dx2 ^ dy1 ^ dy2 against dx1 ^ dy1 ^ dx2 ^ dy2.
  ExteriorForm sorted(4, 4);
  sorted.add(0b1111, 1.0);
  CHECK(std::abs(top_coefficient(sorted) + 1.0) == 0.0);
}

TEST_CASE("powers of 2-forms and the pfaffian") {
  CHECK(std::abs(power(ExteriorForm::basis(4, 0), 0).coefficient(0) - 1.0) == 0.0);
  Rng rng(3, 0);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix m = random_antisymmetric(rng, 2 * n);
      const Complex top = top_coefficient(power(two_form_from_matrix(m), n));
      const Complex expected = factorial(n) * pfaffian(m) * static_cast<double>(interleaving_sign(n));
      CHECK(std::abs(top - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
  CHECK(power(two_form_from_matrix(random_antisymmetric(rng, 4)), 3).is_zero());
}

TEST_CASE("pullback") {
  Rng rng(4, 0);
  const auto f = random_form(rng, 4, 2);
  CHECK(max_diff(pullback(f, RealMatrix(RealMatrix::Identity(4, 4))), f) < 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 * rng.integer(1, 3);
    const ComplexMatrix m = random_antisymmetric(rng, d);
    const RealMatrix map = random_real(rng, d, d, -2, 2);
    const ComplexMatrix congruence = map.transpose().cast<Complex>() * m * map.cast<Complex>();
    CHECK(max_abs_entry(to_matrix(pullback(two_form_from_matrix(m), map)) - congruence) < 1e-12);
  }
  CHECK_THROWS_AS(pullback(f, RealMatrix(RealMatrix::Identity(2, 2))), Error);
}

TEST_CASE("pullback by g_tau untwists the mirror form") {
  for (int n = 1; n <= 4; ++n) {
    Rng rng(5, n);
    const ComplexTorus t = random_torus(rng, n);
    const IntMatrix tau = random_int(rng, n, n, -2, 2);
    const auto twisted = two_form_from_matrix(complexified_symplectic_form(t, tau));
    const auto plain = two_form_from_matrix(complexified_symplectic_form(t, IntMatrix::Zero(n, n)));
    CHECK(max_diff(pullback(twisted, g_tau(tau)), plain) < 1e-12);
  }
}
