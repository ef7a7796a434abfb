#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusmirror/bundle_objects.hpp"

namespace torusmirror {

struct RunConfig {
  static constexpr int kDefaultRandomObjects = 20;

  int n = 0;
  RealMatrix t_re;
  RealMatrix t_im;
  IntMatrix tau;
  Rational epsilon = kDefaultEpsilon;
  std::vector<SectionData> objects;
  int grid_density = 9;
  ToleranceConfig tolerances;
  std::uint64_t seed = 0;
  int random_objects = kDefaultRandomObjects;

  ComplexTorus torus() const { return ComplexTorus(t_re, t_im, tolerances); }
};

/// Parses and validates a configuration document. Matrices are row-major
/// nested arrays whose entries may be JSON numbers or decimal strings.
/// Throws Error(kConfig) naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

/// Reads from the file at `path`, or from `in` when path is "-".
RunConfig load_config(const std::string& path, std::istream& in);

/// Canonical form: fixed key order, reals as shortest round-trip decimal strings.
nlohmann::ordered_json to_json(const RunConfig& config);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace torusmirror
