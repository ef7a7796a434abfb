// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "torusmirror/dhym_slag.hpp"
#include "torusmirror/gerbe.hpp"
#include "torusmirror/random.hpp"
#include "torusmirror/torus_gcs.hpp"

using namespace torusmirror;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
constexpr std::uint64_t kSeed = 20261017;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

Outcome gcs_algebra() {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int i = 0; i < 100; ++i) {
      Rng rng(kSeed, 100 * n + i);
      const ComplexTorus t = random_torus(rng, n, rng.coin());
      const IntMatrix tau = random_int(rng, n, n, -2, 2);
      const auto cx = gcs_from_complex(t);
      const auto kh = gcs_from_kahler(t);
      for (const auto& g : {cx, kh, mirror(cx), mirror(kh), b_transform(cx, tau), b_transform(kh, tau),
                            mirror(b_transform(kh, tau))}) {
        worst = std::max({worst, g.square_defect(), g.pairing_defect()});
      }
    }
  }
  return {worst <= 1e-10, "max defect " + sci(worst) + " over 400 tori, 7 structures each"};
}

Outcome mirror_formulas() {
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 50; ++i) {
      Rng rng(kSeed, 1000 + 100 * n + i);
      const ComplexTorus t = random_torus(rng, n, rng.coin());
      const IntMatrix tau = random_tau(rng, t);
      const ComplexMatrix minus_tinv_t = -t.period().inverse().transpose();
      const auto sym = extract_complexified_symplectic(mirror(gcs_from_complex(t)));
      worst = std::max(worst, max_abs_entry(sym.omega_mat - minus_tinv_t.imag()));
      worst = std::max(worst, max_abs_entry(sym.b_mat - minus_tinv_t.real()));
      const ComplexMatrix yt = t.im().transpose().cast<Complex>();
      const ComplexMatrix period = extract_period_matrix(mirror(gcs_from_kahler(t)));
      worst = std::max(worst, max_abs_entry(period - kI * ComplexMatrix(yt.inverse())));
      const ComplexMatrix deformed = extract_period_matrix(mirror(b_transform(gcs_from_kahler(t), tau)));
      const ComplexMatrix expected = (-tau.cast<double>().cast<Complex>() - kI * yt).inverse();
      worst = std::max(worst, max_abs_entry(deformed - expected));
      ++cases;
    }
  }
  return {worst <= 1e-10, "max entry error " + sci(worst) + " over " + std::to_string(cases) + " (T, tau)"};
}

Outcome symplectomorphism() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 4;
    Rng rng(kSeed, 2000 + i);
    const ComplexTorus t = random_torus(rng, n, rng.coin());
    const IntMatrix tau = random_int(rng, n, n, -3, 3);
    worst = std::max(worst, symplectomorphism_check(t, tau).max_error);
    const auto twisted = two_form_from_matrix(complexified_symplectic_form(t, tau));
    const ComplexMatrix pulled = to_matrix(pullback(twisted, g_tau(tau)));
    worst = std::max(worst, max_abs_entry(pulled - complexified_symplectic_form(t, IntMatrix::Zero(n, n))));
  }
  return {worst <= 1e-12, "max error " + sci(worst) + " (congruence and pullback) over 50 (T, tau)"};
}

Outcome gerbe_cocycles() {
  Outcome out;
  std::ostringstream d;
  for (int n = 1; n <= 2; ++n) {
    for (const Rational eps : {Rational(1, 24), Rational(1, 30)}) {
      Rng rng(kSeed, 3000 + n);
      IntMatrix tau = random_int(rng, n, n, -2, 2);
      tau(0, 0) = 1;
      const CoverGeometry cover(n, eps);
      const auto z = verify_zero_connection(cover, tau);
      const auto bad = verify_zero_connection(cover, tau, TransitionRule::kWithoutAntisymmetry);
      const auto one = verify_one_connection(cover, tau);
      out.pass = out.pass && z.pass && !bad.pass && one.pass;
      d << "n=" << n << " eps=" << format_rational(eps) << ": " << z.triples_checked << " triples "
        << (z.pass ? "ok" : "FAILED") << ", control " << (bad.pass ? "NOT rejected" : "rejected") << "; ";
    }
  }
  out.detail = d.str();
  out.detail.resize(out.detail.size() - 2);
  return out;
}

Outcome correspondence() {
  const ToleranceConfig tol{1e-9, 1e-9, 1e-9};
  int disagreements = 0, holomorphic = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>((i / 2) % 2);
    const auto g = mixed_object(kSeed, i, n);
    const BundleObject obj(g.torus, g.tau, g.section);
    const bool h = is_holomorphic(obj, {}, tol).holomorphic;
    const bool z = zero_two_part_check(obj, {}, tol).vanishes;
    const bool f = is_fukaya_object(GraphLagrangian(g.section, g.tau, g.torus), {}, tol).is_object;
    disagreements += !(h == z && z == f && f == g.constructed_holomorphic);
    holomorphic += h;
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements over 200 objects (" +
                                  std::to_string(holomorphic) + " holomorphic)"};
}

Outcome determinant_oracles() {
  double worst_d = 0.0, worst_s = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 100; ++i) {
      Rng rng(kSeed, 4000 + 100 * n + i);
      const ComplexTorus t = random_torus(rng, n, rng.coin());
      const IntMatrix a = random_int(rng, n, n, -3, 3);
      const IntMatrix tau = random_tau(rng, t);
      const ComplexMatrix ac = a.cast<double>().cast<Complex>();
      const ComplexMatrix y = t.im().cast<Complex>();
      const Complex expected_d = std::pow(2.0 * kPi * kI, n) * factorial(n) * (-kI * y + ac.transpose()).determinant();
      const Complex wedge = dhym_top(BundleObject(t, tau, SectionData::affine(a)), RealVector::Zero(n)).wedge_route;
      worst_d = std::max(worst_d, std::abs(wedge - expected_d) / std::abs(expected_d));

      const ComplexMatrix tp = (-tau.cast<double>().cast<Complex>() - kI * y.transpose()).inverse();
      const Complex closed = tp.determinant() * (-kI * y.transpose() + ac).determinant();
      const Complex frame = slag_value(GraphLagrangian(SectionData::affine(a), tau, t), RealVector::Zero(n)).frame_route;
      worst_s = std::max(worst_s, std::abs(frame - closed) / std::abs(closed));
    }
  }
  return {worst_d <= 1e-9 && worst_s <= 1e-9,
          "dHYM max rel error " + sci(worst_d) + ", sLag max rel error " + sci(worst_s)};
}

Outcome phase_equivalence() {
  int disagreements = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    Rng rng(kSeed, 5000 + i);
    const auto g = random_object(rng, n, rng.coin() ? ObjectFamily::kSymmetricAffine : ObjectFamily::kDiagonalAffine);
    const auto e = equivalence_check(g.section, g.torus, g.tau);
    disagreements += !e.agree || !e.dhym_exists;
    const Complex det = mirror_period(g.torus, g.tau).determinant();
    const double expected = reduce_mod_pi(n * kPi / 2 - std::arg(det));
    worst = std::max({worst, phase_distance_mod_pi(e.delta, expected), e.delta_error});
  }
  SectionData wobble = SectionData::affine(IntMatrix::Zero(1, 1));
  wobble.modes.push_back({IntVector::Ones(1), RealVector::Constant(1, 0.1), RealVector::Zero(1)});
  const ComplexTorus unit(RealMatrix::Zero(1, 1), RealMatrix::Identity(1, 1));
  const auto w = equivalence_check(wobble, unit, IntMatrix::Zero(1, 1));
  const bool rejected = !w.dhym_exists && !w.slag_exists;
  return {disagreements == 0 && worst <= 1e-9 && rejected,
          std::to_string(disagreements) + " disagreements over 100 objects, max Delta error " + sci(worst) +
              ", non-affine object " + (rejected ? "rejected by both" : "NOT rejected by both")};
}

Outcome kahler() {
  const ToleranceConfig tol{1e-12, 1e-12, 1e-12};
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(kSeed, 6000 + i);
    const auto r = kahler_verify(random_torus(rng, 1 + i % 4, rng.coin()), tol);
    failures += !r.pass || !r.g_positive;
    worst = std::max(worst, r.compatibility_error);
  }
  return {failures == 0, std::to_string(failures) + " failures over 100 tori, max |J^t G - Omega| " + sci(worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_verify_all() {
  const auto dir = std::filesystem::temp_directory_path() / ("torusmirror_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string config = std::string(TORUSMIRROR_SOURCE_DIR) + "/configs/reference.json";
  int codes[2];
  for (int run = 0; run < 2; ++run) {
    const std::string cmd = std::string("\"") + TORUSMIRROR_CLI + "\" verify all --json --config \"" + config +
                            "\" > \"" + (dir / ("run" + std::to_string(run) + ".json")).string() + "\"";
    const int status = std::system(cmd.c_str());
    codes[run] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  const std::string a = slurp(dir / "run0.json"), b = slurp(dir / "run1.json");
  std::filesystem::remove_all(dir);
  const bool identical = !a.empty() && a == b;
  return {codes[0] == 0 && codes[1] == 0 && identical,
          "exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", reports " +
              (identical ? "byte-identical" : "DIFFER") + " (" + std::to_string(a.size()) + " bytes)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "GCS algebra", 5, gcs_algebra},
      {2, "mirror formulas", 0, mirror_formulas},
      {3, "symplectomorphism", 0, symplectomorphism},
      {4, "gerbe cocycles", 20, gerbe_cocycles},
      {5, "holomorphic / (0,2) / Fukaya equivalence", 0, correspondence},
      {6, "dHYM and sLag determinant oracles", 0, determinant_oracles},
      {7, "dHYM / sLag phase equivalence", 0, phase_equivalence},
      {8, "Kahler compatibility", 0, kahler},
      {9, "verify all on the reference config", 60, cli_verify_all},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    failed += !o.pass;
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
