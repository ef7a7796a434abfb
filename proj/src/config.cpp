#include "torusmirror/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace torusmirror {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::kConfig, path + ": " + message);
}

double read_real(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(path, "'" + s + "' is not a decimal number");
    if (!std::isfinite(out)) fail(path, "value must be finite");
    return out;
  }
  fail(path, "expected a number or decimal string");
}

std::int64_t read_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size()) return out;
  }
  fail(path, "expected an integer");
}

int read_int(const json& v, const std::string& path, std::int64_t lo, std::int64_t hi) {
  const std::int64_t x = read_integer(v, path);
  if (x < lo || x > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

const json& require_array(const json& v, const std::string& path, std::size_t size) {
  if (!v.is_array()) fail(path, "expected an array");
  if (v.size() != size) fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
  return v;
}

RealMatrix read_real_matrix(const json& v, const std::string& path, int n) {
  require_array(v, path, static_cast<std::size_t>(n));
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    require_array(v[static_cast<std::size_t>(i)], row_path, static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      m(i, j) = read_real(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                          row_path + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

IntMatrix read_int_matrix(const json& v, const std::string& path, int n) {
  require_array(v, path, static_cast<std::size_t>(n));
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    require_array(v[static_cast<std::size_t>(i)], row_path, static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      m(i, j) = read_int(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                         row_path + "[" + std::to_string(j) + "]", -1000000, 1000000);
    }
  }
  return m;
}

RealVector read_real_vector(const json& v, const std::string& path, int n) {
  require_array(v, path, static_cast<std::size_t>(n));
  RealVector x(n);
  for (int i = 0; i < n; ++i) x(i) = read_real(v[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]");
  return x;
}

IntVector read_int_vector(const json& v, const std::string& path, int n) {
  require_array(v, path, static_cast<std::size_t>(n));
  IntVector x(n);
  for (int i = 0; i < n; ++i) {
    x(i) = read_int(v[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]", -1000, 1000);
  }
  return x;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& require_field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path.empty() ? key : path + "." + key, "missing required field");
  return obj.at(key);
}

SectionData read_object(const json& v, const std::string& path, int n) {
  reject_unknown(v, path, {"a", "c", "q", "modes"});
  SectionData s;
  s.a = read_int_matrix(require_field(v, path, "a"), path + ".a", n);
  s.c = v.contains("c") ? read_real_vector(v["c"], path + ".c", n) : RealVector::Zero(n);
  s.q = v.contains("q") ? read_real_vector(v["q"], path + ".q", n) : RealVector::Zero(n);
  if (v.contains("modes")) {
    const json& modes = v["modes"];
    if (!modes.is_array()) fail(path + ".modes", "expected an array");
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string mp = path + ".modes[" + std::to_string(i) + "]";
      reject_unknown(modes[i], mp, {"k", "u", "v"});
      FourierMode mode;
      mode.k = read_int_vector(require_field(modes[i], mp, "k"), mp + ".k", n);
      mode.u = modes[i].contains("u") ? read_real_vector(modes[i]["u"], mp + ".u", n) : RealVector::Zero(n);
      mode.v = modes[i].contains("v") ? read_real_vector(modes[i]["v"], mp + ".v", n) : RealVector::Zero(n);
      s.modes.push_back(std::move(mode));
    }
  }
  try {
    s.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return s;
}

template <typename Derived>
nlohmann::ordered_json real_rows(const Eigen::MatrixBase<Derived>& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json int_rows(const IntMatrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json real_list(const RealVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_double(v(i)));
  return out;
}

nlohmann::ordered_json int_list(const IntVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorKind::kInvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "", {"n", "T", "tau", "epsilon", "objects", "grid_density", "tolerances", "seed",
                           "random_objects"});
  RunConfig c;
  c.n = read_int(require_field(doc, "", "n"), "n", 1, 4);
  const json& t = require_field(doc, "", "T");
  reject_unknown(t, "T", {"re", "im"});
  c.t_re = read_real_matrix(require_field(t, "T", "re"), "T.re", c.n);
  c.t_im = read_real_matrix(require_field(t, "T", "im"), "T.im", c.n);
  c.tau = doc.contains("tau") ? read_int_matrix(doc["tau"], "tau", c.n) : IntMatrix::Zero(c.n, c.n);

  if (doc.contains("epsilon")) {
    const json& e = doc["epsilon"];
    try {
      if (e.is_string()) {
        c.epsilon = parse_rational(e.get<std::string>());
      } else if (e.is_number()) {
        c.epsilon = parse_rational(format_double(e.get<double>()));
      } else {
        fail("epsilon", "expected a rational string such as \"1/24\" or a number");
      }
      (void)CoverGeometry(1, c.epsilon);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::kConfig) throw;
      fail("epsilon", err.what());
    }
  }

  if (doc.contains("grid_density")) c.grid_density = read_int(doc["grid_density"], "grid_density", 1, 64);

  if (doc.contains("tolerances")) {
    const json& tol = doc["tolerances"];
    reject_unknown(tol, "tolerances", {"abs", "rel", "phase"});
    if (tol.contains("abs")) c.tolerances.abs_tol = read_real(tol["abs"], "tolerances.abs");
    if (tol.contains("rel")) c.tolerances.rel_tol = read_real(tol["rel"], "tolerances.rel");
    if (tol.contains("phase")) c.tolerances.phase_tol = read_real(tol["phase"], "tolerances.phase");
    try {
      c.tolerances.validate();
    } catch (const Error& err) {
      fail("tolerances", err.what());
    }
  }

  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (s.is_number_unsigned()) {
      c.seed = s.get<std::uint64_t>();
    } else {
      const std::int64_t v = read_integer(s, "seed");
      if (v < 0) fail("seed", "must be nonnegative");
      c.seed = static_cast<std::uint64_t>(v);
    }
  }
  if (doc.contains("random_objects")) c.random_objects = read_int(doc["random_objects"], "random_objects", 0, 10000);

  if (doc.contains("objects")) {
    const json& objs = doc["objects"];
    if (!objs.is_array()) fail("objects", "expected an array");
    for (std::size_t i = 0; i < objs.size(); ++i) {
      c.objects.push_back(read_object(objs[i], "objects[" + std::to_string(i) + "]", c.n));
    }
  }

  try {
    (void)c.torus();
  } catch (const Error& err) {
    fail("T", err.what());
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kConfig, std::string("<input>: malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::kConfig, path + ": cannot open file");
    buffer << file.rdbuf();
  }
  return parse_config_text(buffer.str());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json out;
  out["n"] = c.n;
  out["T"]["re"] = real_rows(c.t_re);
  out["T"]["im"] = real_rows(c.t_im);
  out["tau"] = int_rows(c.tau);
  out["epsilon"] = format_rational(c.epsilon);
  auto objs = nlohmann::ordered_json::array();
  for (const auto& s : c.objects) {
    nlohmann::ordered_json o;
    o["a"] = int_rows(s.a);
    o["c"] = real_list(s.c);
    o["q"] = real_list(s.q);
    auto modes = nlohmann::ordered_json::array();
    for (const auto& m : s.modes) {
      nlohmann::ordered_json mj;
      mj["k"] = int_list(m.k);
      mj["u"] = real_list(m.u);
      mj["v"] = real_list(m.v);
      modes.push_back(std::move(mj));
    }
    o["modes"] = std::move(modes);
    objs.push_back(std::move(o));
  }
  out["objects"] = std::move(objs);
  out["grid_density"] = c.grid_density;
  out["tolerances"]["abs"] = format_double(c.tolerances.abs_tol);
  out["tolerances"]["rel"] = format_double(c.tolerances.rel_tol);
  out["tolerances"]["phase"] = format_double(c.tolerances.phase_tol);
  out["seed"] = c.seed;
  out["random_objects"] = c.random_objects;
  return out;
}

}  // namespace torusmirror
