#include "torusmirror/gerbe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace torusmirror {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxRecordedViolations = 16;

std::int64_t mod_floor(std::int64_t a, std::int64_t d) {
  const std::int64_t r = a % d;
  return r < 0 ? r + d : r;
}

std::optional<Arc> intersect_arcs(const Arc& a, const Arc& b, std::int64_t d) {
  std::optional<Arc> out;
  for (const std::int64_t shift : {-d, std::int64_t{0}, d}) {
    const std::int64_t lo = std::max(a.start, b.start + shift);
    const std::int64_t hi = std::min(a.end, b.end + shift);
    if (lo < hi) {
      if (out) {
        // Arcs shorter than half the circle meet in at most one piece.
        throw Error(ErrorKind::kInvalidArgument, "arc intersection is disconnected");
      }
      const std::int64_t start = mod_floor(lo, d);
      out = Arc{start, start + (hi - lo)};
    }
  }
  return out;
}

Arc chart_arc(int label, const Rational& eps, std::int64_t d) {
  // ((label - 1)/3 - eps, label/3 + eps) scaled by d = 3 * den(eps).
  const std::int64_t third = d / 3;
  const std::int64_t e = eps.numerator() * (d / eps.denominator());
  const std::int64_t lo = (label - 1) * third - e;
  const std::int64_t hi = label * third + e;
  const std::int64_t start = mod_floor(lo, d);
  return Arc{start, start + (hi - lo)};
}

// Position of t (in [0, 1) torus units) relative to the arc start, in [0, 1).
double offset_in_arc(double t, const Arc& arc, std::int64_t d) {
  double rel = t - static_cast<double>(arc.start) / static_cast<double>(d);
  rel -= std::floor(rel);
  return rel;
}

IntVector sum_vectors(const IntVector& a, const IntVector& b, const IntVector& c) { return a + b + c; }

}  // namespace

std::string CoverIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int v : l) os << v;
  os << ';';
  for (int v : m) os << v;
  os << ')';
  return os.str();
}

bool Arc::contains(std::int64_t point, std::int64_t denominator) const {
  const std::int64_t rel = mod_floor(point - start, denominator);
  return rel > 0 && rel < end - start;
}

double TorusBox::length(bool x_axis, int axis) const {
  const Arc& a = x_axis ? x[static_cast<std::size_t>(axis)] : y[static_cast<std::size_t>(axis)];
  return static_cast<double>(a.end - a.start) / static_cast<double>(denominator);
}

RealVector TorusBox::interior_point(double fraction) const {
  const auto n = static_cast<Eigen::Index>(x.size());
  RealVector p(2 * n);
  const double d = static_cast<double>(denominator);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Arc& ax = x[static_cast<std::size_t>(k)];
    const Arc& ay = y[static_cast<std::size_t>(k)];
    double px = (static_cast<double>(ax.start) + fraction * static_cast<double>(ax.end - ax.start)) / d;
    double py = (static_cast<double>(ay.start) + fraction * static_cast<double>(ay.end - ay.start)) / d;
    p(k) = px - std::floor(px);
    p(n + k) = py - std::floor(py);
  }
  return p;
}

CoverGeometry::CoverGeometry(int n, Rational epsilon) : n_(n), epsilon_(epsilon) {
  if (n < 1 || n > 4) {
    throw Error(ErrorKind::kInvalidArgument, "cover dimension must be between 1 and 4");
  }
  if (epsilon <= Rational(0) || epsilon >= Rational(1, 12)) {
    throw Error(ErrorKind::kInvalidArgument, "epsilon must lie in (0, 1/12), got " + format_rational(epsilon));
  }
  denominator_ = 3 * epsilon.denominator();

  std::size_t count = 1;
  for (int k = 0; k < 2 * n; ++k) count *= 3;
  indices_.reserve(count);
  boxes_.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    // Most significant digit is l_1, least significant is m_n.
    CoverIndex idx{std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(n))};
    std::size_t c = code;
    for (int k = 2 * n - 1; k >= 0; --k) {
      const int digit = static_cast<int>(c % 3) + 1;
      c /= 3;
      if (k < n) {
        idx.l[static_cast<std::size_t>(k)] = digit;
      } else {
        idx.m[static_cast<std::size_t>(k - n)] = digit;
      }
    }
    boxes_.push_back(box_of(idx));
    indices_.push_back(std::move(idx));
  }
}

TorusBox CoverGeometry::box_of(const CoverIndex& index) const {
  if (index.n() != n_ || static_cast<int>(index.m.size()) != n_) {
    throw Error(ErrorKind::kInvalidArgument, "cover index has the wrong dimension");
  }
  TorusBox box;
  box.denominator = denominator_;
  for (int k = 0; k < n_; ++k) {
    const int l = index.l[static_cast<std::size_t>(k)];
    const int m = index.m[static_cast<std::size_t>(k)];
    if (l < 1 || l > 3 || m < 1 || m > 3) {
      throw Error(ErrorKind::kInvalidArgument, "cover labels must be 1, 2 or 3");
    }
    box.x.push_back(chart_arc(l, epsilon_, denominator_));
    box.y.push_back(chart_arc(m, epsilon_, denominator_));
  }
  return box;
}

bool CoverGeometry::covers(const RealVector& point) const {
  if (point.size() != 2 * n_) {
    throw Error(ErrorKind::kInvalidArgument, "point has the wrong dimension");
  }
  for (const auto& box : boxes_) {
    bool inside = true;
    for (int k = 0; k < n_ && inside; ++k) {
      const Arc& ax = box.x[static_cast<std::size_t>(k)];
      const Arc& ay = box.y[static_cast<std::size_t>(k)];
      const double lx = static_cast<double>(ax.end - ax.start) / static_cast<double>(denominator_);
      const double ly = static_cast<double>(ay.end - ay.start) / static_cast<double>(denominator_);
      const double ox = offset_in_arc(point(k), ax, denominator_);
      const double oy = offset_in_arc(point(n_ + k), ay, denominator_);
      inside = ox > 0.0 && ox < lx && oy > 0.0 && oy < ly;
    }
    if (inside) return true;
  }
  return false;
}

RealVector CoverGeometry::chart_coordinates(const CoverIndex& index, const RealVector& point) const {
  const TorusBox box = box_of(index);
  RealVector local(2 * n_);
  for (int k = 0; k < 2 * n_; ++k) {
    const Arc& arc = k < n_ ? box.x[static_cast<std::size_t>(k)] : box.y[static_cast<std::size_t>(k - n_)];
    const int label = k < n_ ? index.l[static_cast<std::size_t>(k)] : index.m[static_cast<std::size_t>(k - n_)];
    // Chart coordinates live in ((label-1)/3 - eps, label/3 + eps).
    const double lower = (label - 1) / 3.0 - boost::rational_cast<double>(epsilon_);
    const double rel = offset_in_arc(point(k), arc, denominator_);
    local(k) = lower + rel;
  }
  return local;
}

std::vector<std::pair<CoverIndex, TorusBox>> build_cover(int n, Rational epsilon) {
  const CoverGeometry cover(n, epsilon);
  std::vector<std::pair<CoverIndex, TorusBox>> out;
  out.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) out.emplace_back(cover.indices()[i], cover.box(i));
  return out;
}

std::optional<TorusBox> intersect(const TorusBox& a, const TorusBox& b) {
  if (a.denominator != b.denominator || a.x.size() != b.x.size()) {
    throw Error(ErrorKind::kInvalidArgument, "boxes are not on the same grid");
  }
  TorusBox out;
  out.denominator = a.denominator;
  for (std::size_t k = 0; k < a.x.size(); ++k) {
    auto ax = intersect_arcs(a.x[k], b.x[k], a.denominator);
    if (!ax) return std::nullopt;
    auto ay = intersect_arcs(a.y[k], b.y[k], a.denominator);
    if (!ay) return std::nullopt;
    out.x.push_back(*ax);
    out.y.push_back(*ay);
  }
  return out;
}

std::optional<TorusBox> overlap(const CoverIndex& i, const CoverIndex& j, Rational epsilon) {
  if (i.n() != j.n()) throw Error(ErrorKind::kInvalidArgument, "cover indices have different dimensions");
  if (epsilon <= Rational(0) || epsilon >= Rational(1, 12)) {
    throw Error(ErrorKind::kInvalidArgument, "epsilon must lie in (0, 1/12), got " + format_rational(epsilon));
  }
  const std::int64_t d = 3 * epsilon.denominator();
  TorusBox a{d, {}, {}};
  TorusBox b{d, {}, {}};
  for (int k = 0; k < i.n(); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    for (const int label : {i.l[uk], i.m[uk], j.l[uk], j.m[uk]}) {
      if (label < 1 || label > 3) throw Error(ErrorKind::kInvalidArgument, "cover labels must be 1, 2 or 3");
    }
    a.x.push_back(chart_arc(i.l[uk], epsilon, d));
    a.y.push_back(chart_arc(i.m[uk], epsilon, d));
    b.x.push_back(chart_arc(j.l[uk], epsilon, d));
    b.y.push_back(chart_arc(j.m[uk], epsilon, d));
  }
  return intersect(a, b);
}

IntVector wrap_vector(const CoverIndex& i, const CoverIndex& j, TransitionRule rule) {
  const int n = i.n();
  IntVector w = IntVector::Zero(n);
  if (rule == TransitionRule::kSingleAxisSameFibre) {
    if (i.m != j.m) return w;
    int differing = 0;
    for (int k = 0; k < n; ++k) differing += i.l[static_cast<std::size_t>(k)] != j.l[static_cast<std::size_t>(k)];
    if (differing != 1) return w;
  }
  for (int k = 0; k < n; ++k) {
    const int a = i.l[static_cast<std::size_t>(k)];
    const int b = j.l[static_cast<std::size_t>(k)];
    if (a == 1 && b == 3) {
      w(k) = 1;
    } else if (a == 3 && b == 1 && rule != TransitionRule::kWithoutAntisymmetry) {
      w(k) = -1;
    }
  }
  return w;
}

RealVector TransitionForm::dy_coefficients() const { return kTwoPi * coeff_2pi.cast<double>(); }

TransitionForm transition_form(const CoverIndex& i, const CoverIndex& j, const IntMatrix& tau, Rational epsilon,
                               TransitionRule rule) {
  if (tau.rows() != i.n() || tau.cols() != i.n()) {
    throw Error(ErrorKind::kInvalidArgument, "tau has the wrong size");
  }
  if (!overlap(i, j, epsilon)) {
    throw Error(ErrorKind::kInvalidArgument, "charts " + i.to_string() + " and " + j.to_string() + " do not overlap");
  }
  return TransitionForm{tau * wrap_vector(i, j, rule)};
}

ZeroConnectionReport verify_zero_connection(const CoverGeometry& cover, const IntMatrix& tau, TransitionRule rule) {
  const int n = cover.n();
  if (tau.rows() != n || tau.cols() != n) {
    throw Error(ErrorKind::kInvalidArgument, "tau has the wrong size");
  }
  const std::size_t count = cover.size();
  std::vector<std::optional<TorusBox>> pair_region(count * count);
  std::vector<IntVector> form(count * count);
  std::vector<std::vector<std::size_t>> neighbours(count);

  ZeroConnectionReport report;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      auto region = intersect(cover.box(i), cover.box(j));
      if (!region) continue;
      neighbours[i].push_back(j);
      form[i * count + j] = tau * wrap_vector(cover.indices()[i], cover.indices()[j], rule);
      pair_region[i * count + j] = std::move(region);
      ++report.pairs_checked;
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j : neighbours[i]) {
      if (form[i * count + j] != -form[j * count + i]) ++report.antisymmetry_failures;
    }
  }

  // Ordered triples, pruned by the pair-overlap graph.
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j : neighbours[i]) {
      const TorusBox& ij = *pair_region[i * count + j];
      for (std::size_t k : neighbours[j]) {
        if (!pair_region[k * count + i]) continue;
        if (!intersect(ij, cover.box(k))) continue;
        ++report.triples_checked;
        const IntVector sum = sum_vectors(form[i * count + j], form[j * count + k], form[k * count + i]);
        if (!sum.isZero()) {
          ++report.violation_count;
          if (report.violations.size() < kMaxRecordedViolations) report.violations.push_back({i, j, k, sum});
        }
      }
    }
  }

  // theta_ijk = 1 on every triple overlap, so (delta theta)_ijkl is a product
  // of ones; enumerate the quadruple overlaps anyway to report the count.
  const Complex theta{1.0, 0.0};
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j : neighbours[i]) {
      if (j <= i) continue;
      for (std::size_t k : neighbours[j]) {
        if (k <= j || !pair_region[i * count + k]) continue;
        const auto ijk = intersect(*pair_region[i * count + j], cover.box(k));
        if (!ijk) continue;
        for (std::size_t l : neighbours[k]) {
          if (l <= k) continue;
          if (!intersect(*ijk, cover.box(l))) continue;
          ++report.quadruples_checked;
          const Complex delta = theta * (Complex{1.0, 0.0} / theta) * theta * (Complex{1.0, 0.0} / theta);
          if (delta != Complex{1.0, 0.0}) ++report.violation_count;
        }
      }
    }
  }

  report.pass = report.violation_count == 0 && report.antisymmetry_failures == 0;
  return report;
}

RealMatrix AffineOneForm::exterior_derivative() const {
  return slope.transpose() - slope;
}

RealMatrix b_field_coefficients(const IntMatrix& tau) {
  const auto n = tau.rows();
  RealMatrix b = RealMatrix::Zero(2 * n, 2 * n);
  b.topRightCorner(n, n) = kTwoPi * to_real(tau).transpose();
  b.bottomLeftCorner(n, n) = -kTwoPi * to_real(tau);
  return b;
}

LocalTwoForm global_b_field(const IntMatrix& tau) {
  const RealMatrix b = b_field_coefficients(tau);
  return [b](const CoverIndex&, const RealVector&) { return b; };
}

OneConnectionReport verify_one_connection(const CoverGeometry& cover, const IntMatrix& tau, const LocalTwoForm& beta,
                                          double tol) {
  const int n = cover.n();
  if (tau.rows() != n || tau.cols() != n) {
    throw Error(ErrorKind::kInvalidArgument, "tau has the wrong size");
  }
  const LocalTwoForm local = beta ? beta : global_b_field(tau);
  OneConnectionReport report;
  const std::size_t count = cover.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      const auto region = intersect(cover.box(i), cover.box(j));
      if (!region) continue;
      ++report.pairs_checked;
      const CoverIndex& ci = cover.indices()[i];
      const CoverIndex& cj = cover.indices()[j];

      AffineOneForm connection;
      connection.constant = RealVector::Zero(2 * n);
      connection.constant.tail(n) = kTwoPi * (tau * wrap_vector(ci, cj)).cast<double>();
      connection.slope = RealMatrix::Zero(2 * n, 2 * n);
      const RealMatrix curvature = connection.exterior_derivative();
      const double curv = max_abs_entry(curvature);
      if (curv > report.max_curvature) report.max_curvature = curv;

      for (const double f : {0.25, 0.5, 0.75}) {
        const RealVector p = region->interior_point(f);
        const RealMatrix delta = local(cj, cover.chart_coordinates(cj, p)) - local(ci, cover.chart_coordinates(ci, p));
        const double err = max_abs_entry(delta - curvature);
        if (err > report.max_delta_beta) {
          report.max_delta_beta = err;
          report.witness = ci.to_string() + " -> " + cj.to_string();
        }
      }
    }
  }
  report.pass = report.max_curvature <= tol && report.max_delta_beta <= tol;
  return report;
}

Rational parse_rational(const std::string& text) {
  const auto fail = [&]() -> Rational {
    throw Error(ErrorKind::kInvalidArgument, "cannot parse '" + text + "' as an exact rational");
  };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    try {
      std::size_t used = 0;
      const std::int64_t p = std::stoll(text.substr(0, slash), &used);
      if (used != slash) return fail();
      const std::string rest = text.substr(slash + 1);
      const std::int64_t q = std::stoll(rest, &used);
      if (used != rest.size() || q == 0) return fail();
      return Rational(p, q);
    } catch (const std::logic_error&) {
      return fail();
    }
  }
  // Decimal with optional exponent, read digit by digit.
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool any_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.' && !after_point) {
      after_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) break;
    any_digit = true;
    if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10 || den > std::numeric_limits<std::int64_t>::max() / 10) {
      return fail();
    }
    num = num * 10 + (ch - '0');
    if (after_point) den *= 10;
  }
  if (!any_digit) return fail();
  int exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    try {
      std::size_t used = 0;
      exponent = std::stoi(text.substr(pos + 1), &used);
      if (pos + 1 + used != text.size()) return fail();
    } catch (const std::logic_error&) {
      return fail();
    }
    pos = text.size();
  }
  if (pos != text.size() || std::abs(exponent) > 18) return fail();
  Rational r(negative ? -num : num, den);
  for (int e = 0; e < std::abs(exponent); ++e) r = exponent > 0 ? r * Rational(10) : r / Rational(10);
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace torusmirror
