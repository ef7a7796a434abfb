#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "torusmirror/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_abs;
  std::optional<double> tol_phase;
  bool json = false;
  bool timing = false;
};

torusmirror::RunConfig load(const Options& opt) {
  if (opt.config_path.empty()) {
    throw torusmirror::Error(torusmirror::ErrorKind::kConfig, "--config: required (use - for stdin)");
  }
  auto config = torusmirror::load_config(opt.config_path, std::cin);
  if (opt.seed) config.seed = *opt.seed;
  if (opt.tol_abs) config.tolerances.abs_tol = *opt.tol_abs;
  if (opt.tol_phase) config.tolerances.phase_tol = *opt.tol_phase;
  try {
    config.tolerances.validate();
  } catch (const torusmirror::Error& e) {
    throw torusmirror::Error(torusmirror::ErrorKind::kConfig, std::string("tolerances: ") + e.what());
  }
  return config;
}

int emit(const torusmirror::VerificationReport& report, const Options& opt, bool include_config) {
  if (opt.json) {
    std::cout << torusmirror::to_json(report, opt.timing, include_config).dump(2) << '\n';
  } else {
    std::cout << torusmirror::to_text(report, opt.timing);
  }
  return report.pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification tool for mirror pairs of gerby deformed complex tori"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "Configuration file (JSON); - reads stdin");
  app.add_option("--seed", opt.seed, "Override the seed for randomized checks");
  app.add_option("--tol-abs", opt.tol_abs, "Override the absolute tolerance");
  app.add_option("--tol-phase", opt.tol_phase, "Override the phase tolerance (radians)");
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_flag("--timing", opt.timing, "Include wall times (reports are then no longer reproducible)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "gcs, gerbe, objects, dhym or all")
      ->required()
      ->check(CLI::IsMember(torusmirror::suite_names()));
  auto* mirror = app.add_subcommand("mirror", "Print the mirror data of the configured torus");
  auto* report = app.add_subcommand("report", "Run every suite and print the full report with the config echo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    const auto config = load(opt);
    if (verify->parsed()) return emit(torusmirror::run_suite(config, suite), opt, false);
    if (report->parsed()) return emit(torusmirror::run_suite(config, "all"), opt, true);
    if (mirror->parsed()) {
      if (opt.json) {
        std::cout << torusmirror::mirror_summary(config).dump(2) << '\n';
      } else {
        std::cout << torusmirror::mirror_summary_text(config);
      }
      return kExitPass;
    }
  } catch (const torusmirror::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == torusmirror::ErrorKind::kConfig ? kExitConfigError : kExitCheckFailure;
  }
  return kExitConfigError;
}
