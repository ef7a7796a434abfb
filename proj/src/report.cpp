#include "torusmirror/report.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "torusmirror/dhym_slag.hpp"
#include "torusmirror/random.hpp"

namespace torusmirror {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class SuiteRunner {
 public:
  SuiteRunner(const RunConfig& config, VerificationReport& report)
      : config_(config), report_(report), torus_(config.torus()), tol_(config.tolerances) {}

  void gcs();
  void gerbe();
  void objects();
  void dhym();

 private:
  using Body = std::function<void(CheckResult&)>;

  // Errors of kind MirrorUndefined become skips; any other library error fails the check.
  void check(const std::string& suite, const std::string& name, const Body& body) {
    CheckResult r;
    r.suite = suite;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      r.verdict = e.kind() == ErrorKind::kMirrorUndefined ? Verdict::kSkip : Verdict::kFail;
      r.detail = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(r));
  }

  static void bound(CheckResult& r, double error, double limit) {
    r.max_error = error;
    r.verdict = error <= limit ? Verdict::kPass : Verdict::kFail;
  }

  double scaled(double magnitude) const { return tol_.abs_tol * std::max(1.0, magnitude); }

  SampleGrid grid() const { return SampleGrid{config_.grid_density}; }
  ToleranceConfig tol() const { return tol_; }

  const RunConfig& config_;
  VerificationReport& report_;
  ComplexTorus torus_;
  ToleranceConfig tol_;
};

void SuiteRunner::gcs() {
  const std::string s = "gcs";
  const int n = torus_.n();
  const IntMatrix& tau = config_.tau;
  const auto cpx = gcs_from_complex(torus_);
  const auto kah = gcs_from_kahler(torus_);

  const std::vector<std::pair<std::string, GeneralizedComplexStructure>> structures = {
      {"complex", cpx},
      {"kahler", kah},
      {"mirror of complex", mirror(cpx)},
      {"mirror of kahler", mirror(kah)},
      {"B-transformed complex", b_transform(cpx, tau)},
      {"B-transformed kahler", b_transform(kah, tau)},
      {"mirror of B-transformed complex", mirror(b_transform(cpx, tau))},
      {"mirror of B-transformed kahler", mirror(b_transform(kah, tau))},
  };
  for (const auto& [label, g] : structures) {
    check(s, "invariants: " + label, [&, g = g](CheckResult& r) {
      bound(r, std::max(g.square_defect(), g.pairing_defect()), scaled(max_abs_entry(g.m)));
    });
  }

  check(s, "mirror symplectic form and B-field", [&](CheckResult& r) {
    const auto d = extract_complexified_symplectic(mirror(cpx), tol());
    const double err = std::max(max_abs_entry(d.omega_mat - mirror_omega_mat(torus_)),
                                max_abs_entry(d.b_mat - mirror_b_mat(torus_)));
    bound(r, err, tol_.abs_tol);
  });
  check(s, "twisted mirror symplectic form and B-field", [&](CheckResult& r) {
    const auto d = extract_complexified_symplectic(mirror(b_transform(cpx, tau)), tol());
    const double err =
        std::max(max_abs_entry(d.omega_form - twisted_form_coefficients(mirror_omega_mat(torus_), tau)),
                 max_abs_entry(d.b_form - twisted_form_coefficients(mirror_b_mat(torus_), tau)));
    bound(r, err, scaled(kTwoPi));
  });
  check(s, "mirror period matrix i(Y^-1)^t", [&](CheckResult& r) {
    const ComplexMatrix expected = Complex(0.0, 1.0) * torus_.im().inverse().transpose().cast<Complex>();
    bound(r, max_abs_entry(extract_period_matrix(mirror(kah), tol()) - expected), tol_.abs_tol);
  });
  check(s, "deformed mirror period matrix (-tau - iY^t)^-1", [&](CheckResult& r) {
    const ComplexMatrix expected = mirror_period(torus_, tau, tol());
    bound(r, max_abs_entry(extract_period_matrix(mirror(b_transform(kah, tau)), tol()) - expected), tol_.abs_tol);
  });
  check(s, "symplectomorphism by congruence", [&](CheckResult& r) {
    const auto res = symplectomorphism_check(torus_, tau, tol());
    bound(r, res.max_error, tol_.abs_tol);
  });
  check(s, "symplectomorphism by pullback", [&](CheckResult& r) {
    const ExteriorForm twisted = two_form_from_matrix(complexified_symplectic_form(torus_, tau));
    const ExteriorForm plain = two_form_from_matrix(complexified_symplectic_form(torus_, IntMatrix::Zero(n, n)));
    const ExteriorForm diff = pullback(twisted, g_tau(tau)) - plain;
    double err = 0.0;
    for (const auto& [mask, c] : diff.terms()) err = std::max(err, std::abs(c));
    bound(r, err, tol_.abs_tol);
  });
  check(s, "gerby deformation triviality", [&](CheckResult& r) {
    r.detail = deformation_is_trivial(torus_, tau, tol()) ? "tau T symmetric: deformation is trivial"
                                                          : "tau T not symmetric: deformation is nontrivial";
  });

  if (config_.random_objects > 0) {
    check(s, "random tori n=1..4: invariants and mirror formulas", [&](CheckResult& r) {
      double worst = 0.0;
      std::uint64_t stream = 0;
      for (int dim = 1; dim <= 4; ++dim) {
        for (int i = 0; i < config_.random_objects; ++i) {
          Rng rng(config_.seed, 1000 + stream++);
          const ComplexTorus t = random_torus(rng, dim, rng.coin());
          const IntMatrix tw = random_tau(rng, t);
          const auto c = gcs_from_complex(t);
          const auto k = gcs_from_kahler(t);
          for (const auto& g : {c, k, mirror(c), mirror(k), b_transform(c, tw), mirror(b_transform(k, tw))}) {
            worst = std::max({worst, g.square_defect(), g.pairing_defect()});
          }
          const auto d = extract_complexified_symplectic(mirror(c), tol());
          worst = std::max({worst, max_abs_entry(d.omega_mat - mirror_omega_mat(t)),
                            max_abs_entry(d.b_mat - mirror_b_mat(t)),
                            max_abs_entry(extract_period_matrix(mirror(b_transform(k, tw)), tol()) -
                                          mirror_period(t, tw, tol())),
                            symplectomorphism_check(t, tw, tol()).max_error});
        }
      }
      r.detail = std::to_string(4 * config_.random_objects) + " tori";
      bound(r, worst, tol_.abs_tol);
    });
  }
}

void SuiteRunner::gerbe() {
  const std::string s = "gerbe";
  const int n = torus_.n();
  if (n > 2) {
    CheckResult r{s, "cocycle checks", Verdict::kSkip, 0.0, "", "exhaustive triple enumeration is limited to n <= 2"};
    report_.checks.push_back(r);
    return;
  }
  std::vector<Rational> eps = {config_.epsilon};
  if (config_.epsilon != Rational(1, 30)) eps.emplace_back(1, 30);
  for (const Rational& e : eps) {
    const CoverGeometry cover(n, e);
    const std::string tag = " (epsilon=" + format_rational(e) + ")";
    check(s, "0-connection cocycle" + tag, [&](CheckResult& r) {
      const auto z = verify_zero_connection(cover, config_.tau);
      r.verdict = z.pass ? Verdict::kPass : Verdict::kFail;
      r.max_error = static_cast<double>(z.violation_count);
      r.detail = std::to_string(z.pairs_checked) + " pairs, " + std::to_string(z.triples_checked) + " triples, " +
                 std::to_string(z.quadruples_checked) + " quadruples";
    });
  }
  const CoverGeometry cover(n, config_.epsilon);
  if (!config_.tau.isZero()) {
    check(s, "negative control: no antisymmetric completion", [&](CheckResult& r) {
      const auto z = verify_zero_connection(cover, config_.tau, TransitionRule::kWithoutAntisymmetry);
      r.verdict = z.pass ? Verdict::kFail : Verdict::kPass;
      r.detail = "rejected with " + std::to_string(z.violation_count) + " cocycle violations and " +
                 std::to_string(z.antisymmetry_failures) + " antisymmetry failures";
    });
  }
  check(s, "1-connection", [&](CheckResult& r) {
    const auto o = verify_one_connection(cover, config_.tau, {}, tol_.abs_tol);
    r.verdict = o.pass ? Verdict::kPass : Verdict::kFail;
    r.max_error = std::max(o.max_curvature, o.max_delta_beta);
    r.witness = o.witness;
    r.detail = std::to_string(o.pairs_checked) + " pairs";
  });
}

void SuiteRunner::objects() {
  const std::string s = "objects";
  for (std::size_t i = 0; i < config_.objects.size(); ++i) {
    const SectionData& sec = config_.objects[i];
    const std::string tag = "object " + std::to_string(i) + ": ";
    check(s, tag + "holomorphic <-> (0,2)-part <-> Fukaya", [&](CheckResult& r) {
      const auto c = mirror_correspondence_check(sec, torus_, config_.tau, grid(), tol());
      r.verdict = c.agree ? Verdict::kPass : Verdict::kFail;
      r.max_error = c.max_asymmetry;
      r.detail = std::string("is_holomorphic=") + (c.holomorphic ? "true" : "false") +
                 " zero_two_part_vanishes=" + (c.zero_two_vanishes ? "true" : "false") +
                 " is_fukaya=" + (c.fukaya ? "true" : "false");
    });
    check(s, tag + "transition compatibility", [&](CheckResult& r) {
      const auto c = verify_transition_compat(BundleObject(torus_, config_.tau, sec), config_.epsilon, true, tol());
      r.verdict = c.pass ? Verdict::kPass : Verdict::kFail;
      r.max_error = c.max_error;
      r.witness = c.witness;
      r.detail = std::to_string(c.overlaps_checked) + " overlaps";
    });
    check(s, tag + "restriction shortcut cross-check", [&](CheckResult& r) {
      const auto f = is_fukaya_object(GraphLagrangian(sec, config_.tau, torus_), grid(), tol());
      r.verdict = f.shortcut_agrees ? Verdict::kPass : Verdict::kFail;
      r.max_error = std::max(f.max_omega_restriction, f.max_b_restriction);
      r.witness = format_point(f.witness);
    });
    check(s, tag + "tau cancellation in restrictions", [&](CheckResult& r) {
      const GraphLagrangian twisted(sec, config_.tau, torus_);
      const GraphLagrangian plain(sec, IntMatrix::Zero(torus_.n(), torus_.n()), torus_);
      double err = 0.0;
      for (const auto& x : grid().points(sec)) {
        err = std::max({err, max_abs_entry(omega_restriction(twisted, x) - omega_restriction(plain, x)),
                        max_abs_entry(b_restriction(twisted, x) - b_restriction(plain, x))});
      }
      bound(r, err, scaled(kTwoPi * max_abs_entry(to_real(config_.tau))));
    });
  }

  if (config_.random_objects > 0) {
    check(s, "random objects: correspondence", [&](CheckResult& r) {
      int disagreements = 0;
      int holomorphic = 0;
      for (int i = 0; i < config_.random_objects; ++i) {
        const auto g = mixed_object(config_.seed, 2000 + static_cast<std::uint64_t>(i), torus_.n());
        const auto c = mirror_correspondence_check(g.section, g.torus, g.tau, grid(), tol());
        disagreements += !c.agree || c.holomorphic != g.constructed_holomorphic;
        holomorphic += c.holomorphic;
      }
      r.verdict = disagreements == 0 ? Verdict::kPass : Verdict::kFail;
      r.max_error = disagreements;
      r.detail = std::to_string(config_.random_objects) + " objects, " + std::to_string(holomorphic) +
                 " holomorphic, " + std::to_string(disagreements) + " disagreements";
    });
  }
}

void SuiteRunner::dhym() {
  const std::string s = "dhym";
  check(s, "Kahler compatibility J^t G = Omega", [&](CheckResult& r) {
    const auto k = kahler_verify(torus_, tol());
    r.verdict = k.pass ? Verdict::kPass : Verdict::kFail;
    r.max_error = std::max({k.compatibility_error, k.omega_ldu_error, k.g_ldu_error, k.j_square_error});
    r.detail = "min eigenvalue of g: " + format_double(k.g_min_eigenvalue);
  });

  for (std::size_t i = 0; i < config_.objects.size(); ++i) {
    const SectionData& sec = config_.objects[i];
    const std::string tag = "object " + std::to_string(i) + ": ";
    const BundleObject bundle(torus_, config_.tau, sec);
    const GraphLagrangian lag(sec, config_.tau, torus_);
    check(s, tag + "dHYM wedge power vs determinant", [&](CheckResult& r) {
      double err = 0.0;
      for (const auto& x : grid().points(sec)) err = std::max(err, dhym_top(bundle, x).rel_diff);
      bound(r, err, tol_.rel_tol);
    });
    check(s, tag + "sLag determinant routes", [&](CheckResult& r) {
      double err = 0.0;
      for (const auto& x : grid().points(sec)) err = std::max(err, slag_value(lag, x, tol()).rel_diff);
      bound(r, err, tol_.rel_tol);
    });
    check(s, tag + "dHYM/sLag phase equivalence", [&](CheckResult& r) {
      const auto e = equivalence_check(sec, torus_, config_.tau, grid(), tol());
      if (e.vacuous) {
        r.detail = "both phase checkers rejected the object at their preconditions";
        return;
      }
      r.max_error = e.delta_error;
      const bool ok = e.agree && (!e.dhym_exists || e.delta_error <= tol_.phase_tol);
      r.verdict = ok ? Verdict::kPass : Verdict::kFail;
      std::ostringstream d;
      d << "dhym_exists=" << (e.dhym_exists ? "true" : "false") << " slag_exists=" << (e.slag_exists ? "true" : "false")
        << " delta=" << format_double(e.delta) << " expected_delta=" << format_double(e.expected_delta)
        << " same_theta=" << (e.same_theta ? "true" : "false");
      r.detail = d.str();
    });
  }

  if (config_.random_objects > 0) {
    check(s, "random affine objects: phase equivalence", [&](CheckResult& r) {
      int disagreements = 0;
      double worst = 0.0;
      for (int i = 0; i < config_.random_objects; ++i) {
        Rng rng(config_.seed, 3000 + static_cast<std::uint64_t>(i));
        const auto family = i % 2 == 0 ? ObjectFamily::kSymmetricAffine : ObjectFamily::kDiagonalAffine;
        const auto g = random_object(rng, torus_.n(), family);
        const auto e = equivalence_check(g.section, g.torus, g.tau, grid(), tol());
        disagreements += !e.agree || !e.dhym_exists;
        worst = std::max(worst, e.delta_error);
      }
      r.max_error = worst;
      r.verdict = disagreements == 0 && worst <= tol_.phase_tol ? Verdict::kPass : Verdict::kFail;
      r.detail = std::to_string(config_.random_objects) + " objects, " + std::to_string(disagreements) +
                 " disagreements";
    });
  }
}

nlohmann::ordered_json matrix_json(const RealMatrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_matrix(std::ostream& os, const std::string& label, const RealMatrix& m) {
  os << label << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << std::setw(14) << format_double(m(i, j)) << ' ';
    os << '\n';
  }
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kSkip: return "skip";
  }
  return "unknown";
}

bool VerificationReport::pass() const { return count(Verdict::kFail) == 0; }

std::size_t VerificationReport::count(Verdict v) const {
  std::size_t k = 0;
  for (const auto& c : checks) k += c.verdict == v;
  return k;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gcs", "gerbe", "objects", "dhym", "all"};
  return names;
}

VerificationReport run_suite(const RunConfig& config, const std::string& suite) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw Error(ErrorKind::kInvalidArgument, "unknown suite '" + suite + "'");
  }
  VerificationReport report;
  report.suite = suite;
  report.seed = config.seed;
  report.config_echo = to_json(config);
  SuiteRunner runner(config, report);
  if (suite == "gcs" || suite == "all") runner.gcs();
  if (suite == "gerbe" || suite == "all") runner.gerbe();
  if (suite == "objects" || suite == "all") runner.objects();
  if (suite == "dhym" || suite == "all") runner.dhym();
  return report;
}

nlohmann::ordered_json to_json(const VerificationReport& report, bool include_timing, bool include_config) {
  nlohmann::ordered_json out;
  out["suite"] = report.suite;
  out["seed"] = report.seed;
  out["pass"] = report.pass();
  out["summary"]["passed"] = report.count(Verdict::kPass);
  out["summary"]["failed"] = report.count(Verdict::kFail);
  out["summary"]["skipped"] = report.count(Verdict::kSkip);
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json j;
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["verdict"] = to_string(c.verdict);
    j["max_error"] = format_double(c.max_error);
    j["witness"] = c.witness;
    j["detail"] = c.detail;
    if (include_timing) j["wall_seconds"] = c.wall_seconds;
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  if (include_config) out["config"] = report.config_echo;
  return out;
}

std::string to_text(const VerificationReport& report, bool include_timing) {
  std::ostringstream os;
  os << "suite " << report.suite << ", seed " << report.seed << "\n";
  for (const auto& c : report.checks) {
    std::string verdict = to_string(c.verdict);
    for (auto& ch : verdict) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << std::left << std::setw(5) << verdict << ' ' << std::setw(8) << c.suite << ' ' << std::setw(56) << c.name
       << " err=" << std::setw(12) << format_double(c.max_error);
    if (include_timing) os << " t=" << std::fixed << std::setprecision(3) << c.wall_seconds << "s" << std::defaultfloat;
    if (!c.witness.empty()) os << " at " << c.witness;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << '\n';
  }
  os << (report.pass() ? "PASS" : "FAIL") << ": " << report.count(Verdict::kPass) << " passed, "
     << report.count(Verdict::kFail) << " failed, " << report.count(Verdict::kSkip) << " skipped\n";
  return os.str();
}

nlohmann::ordered_json mirror_summary(const RunConfig& config) {
  const ComplexTorus torus = config.torus();
  nlohmann::ordered_json out;
  out["omega_mat"] = matrix_json(mirror_omega_mat(torus));
  out["b_mat"] = matrix_json(mirror_b_mat(torus));
  out["omega_xx"] = matrix_json(-mirror_omega_mat(torus) * to_real(config.tau));
  out["b_xx"] = matrix_json(-mirror_b_mat(torus) * to_real(config.tau));
  out["deformation_trivial"] = deformation_is_trivial(torus, config.tau, config.tolerances);
  try {
    const ComplexMatrix p = mirror_period(torus, config.tau, config.tolerances);
    out["mirror_period"]["re"] = matrix_json(p.real());
    out["mirror_period"]["im"] = matrix_json(p.imag());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kMirrorUndefined) throw;
    out["mirror_period"] = nullptr;
    out["mirror_period_error"] = e.what();
  }
  return out;
}

std::string mirror_summary_text(const RunConfig& config) {
  const ComplexTorus torus = config.torus();
  std::ostringstream os;
  print_matrix(os, "omega_mat (dx-dy block of the mirror symplectic form / 2pi)", mirror_omega_mat(torus));
  print_matrix(os, "B_mat (dx-dy block of the mirror B-field / 2pi)", mirror_b_mat(torus));
  print_matrix(os, "omega twist -omega_mat tau (dx-dx)", -mirror_omega_mat(torus) * to_real(config.tau));
  print_matrix(os, "B twist -B_mat tau (dx-dx)", -mirror_b_mat(torus) * to_real(config.tau));
  try {
    const ComplexMatrix p = mirror_period(torus, config.tau, config.tolerances);
    print_matrix(os, "mirror period (-tau - iY^t)^-1, real part", p.real());
    print_matrix(os, "mirror period, imaginary part", p.imag());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kMirrorUndefined) throw;
    os << "mirror period: undefined (" << e.what() << ")\n";
  }
  os << "deformation trivial: " << (deformation_is_trivial(torus, config.tau, config.tolerances) ? "yes" : "no")
     << '\n';
  return os.str();
}

}  // namespace torusmirror
