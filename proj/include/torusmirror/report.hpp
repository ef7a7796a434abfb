#pragma once

#include <string>
#include <vector>

#include "torusmirror/config.hpp"

namespace torusmirror {

enum class Verdict { kPass, kFail, kSkip };

const char* to_string(Verdict v);

struct CheckResult {
  std::string suite;
  std::string name;
  Verdict verdict = Verdict::kPass;
  double max_error = 0.0;
  std::string witness;
  std::string detail;
  double wall_seconds = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json config_echo;

  bool pass() const;
  std::size_t count(Verdict v) const;
};

/// Suites: "gcs", "gerbe", "objects", "dhym", "all". Throws kInvalidArgument
/// on an unknown name. Deterministic for a given config (including its seed).
VerificationReport run_suite(const RunConfig& config, const std::string& suite);

const std::vector<std::string>& suite_names();

/// Wall times are only serialized when `include_timing` is set, so that
/// reports for identical inputs are byte-identical by default.
nlohmann::ordered_json to_json(const VerificationReport& report, bool include_timing = false,
                               bool include_config = true);
std::string to_text(const VerificationReport& report, bool include_timing = false);

/// Mirror data of the configured torus and twist.
nlohmann::ordered_json mirror_summary(const RunConfig& config);
std::string mirror_summary_text(const RunConfig& config);

}  // namespace torusmirror
