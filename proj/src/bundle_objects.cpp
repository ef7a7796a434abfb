#include "torusmirror/bundle_objects.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace torusmirror {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};

bool canonical_key(const IntVector& k) {
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (k(i) != 0) return k(i) > 0;
  }
  return false;
}

void require_point(const SectionData& s, const RealVector& x) {
  if (x.size() != s.n()) throw Error(ErrorKind::kInvalidArgument, "point has the wrong dimension");
}

}  // namespace

void SectionData::validate() const {
  const auto n = a.rows();
  if (n == 0 || a.cols() != n) throw Error(ErrorKind::kInvalidArgument, "winding matrix must be square");
  if (c.size() != n || q.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "offset and holonomy vectors must have length n");
  }
  std::set<std::vector<int>> keys;
  for (const auto& mode : modes) {
    if (mode.k.size() != n || mode.u.size() != n || mode.v.size() != n) {
      throw Error(ErrorKind::kInvalidArgument, "Fourier mode has the wrong dimension");
    }
    if (!canonical_key(mode.k)) {
      throw Error(ErrorKind::kInvalidArgument, "mode key must be nonzero with first nonzero entry positive");
    }
    if (mode.k.cwiseAbs().maxCoeff() > kMaxModeOrder) {
      throw Error(ErrorKind::kInvalidArgument, "mode order exceeds 4");
    }
    if (!keys.insert(std::vector<int>(mode.k.data(), mode.k.data() + n)).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate mode key");
    }
    if (!mode.u.allFinite() || !mode.v.allFinite()) {
      throw Error(ErrorKind::kInvalidArgument, "mode coefficients must be finite");
    }
  }
}

SectionData SectionData::affine(IntMatrix a) {
  const auto n = a.rows();
  return affine(std::move(a), RealVector::Zero(n), RealVector::Zero(n));
}

SectionData SectionData::affine(IntMatrix a, RealVector c, RealVector q) {
  SectionData s{std::move(a), std::move(c), {}, std::move(q)};
  s.validate();
  return s;
}

RealVector eval_section(const SectionData& s, const RealVector& x) {
  require_point(s, x);
  RealVector out = to_real(s.a) * x + s.c;
  for (const auto& mode : s.modes) {
    const double phase = kTwoPi * mode.k.cast<double>().dot(x);
    out += mode.u * std::cos(phase) + mode.v * std::sin(phase);
  }
  return out;
}

RealMatrix jacobian(const SectionData& s, const RealVector& x) {
  require_point(s, x);
  RealMatrix out = to_real(s.a);
  for (const auto& mode : s.modes) {
    const RealVector k = mode.k.cast<double>();
    const double phase = kTwoPi * k.dot(x);
    out += kTwoPi * (-mode.u * std::sin(phase) + mode.v * std::cos(phase)) * k.transpose();
  }
  return out;
}

Complex transition_factor(int j, const IntMatrix& a, const RealVector& y) {
  if (j < 0 || j >= a.cols() || y.size() != a.rows()) {
    throw Error(ErrorKind::kInvalidArgument, "transition factor axis or point out of range");
  }
  return std::exp(kI * (kTwoPi * a.col(j).cast<double>().dot(y)));
}

BundleObject::BundleObject(ComplexTorus torus_, IntMatrix tau_, SectionData section_)
    : torus(std::move(torus_)), tau(std::move(tau_)), section(std::move(section_)) {
  section.validate();
  if (section.n() != torus.n() || tau.rows() != torus.n() || tau.cols() != torus.n()) {
    throw Error(ErrorKind::kInvalidArgument, "torus, tau and section dimensions disagree");
  }
}

ComplexVector connection_form(const BundleObject& obj, const RealVector& x, bool include_twist) {
  ComplexVector inner = eval_section(obj.section, x).cast<Complex>() +
                        obj.torus.period().transpose() * obj.section.q.cast<Complex>();
  if (include_twist) inner += (to_real(obj.tau) * x).cast<Complex>();
  return -kI * kTwoPi * inner;
}

TransitionCompatReport verify_transition_compat(const BundleObject& obj, Rational epsilon, bool include_twist,
                                                const ToleranceConfig& tol) {
  const int n = obj.n();
  const CoverGeometry cover(n, epsilon);
  TransitionCompatReport report;
  const double scale = std::max(1.0, kTwoPi * (to_real(obj.section.a).cwiseAbs().maxCoeff() +
                                               to_real(obj.tau).cwiseAbs().maxCoeff()));
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (std::size_t j = 0; j < cover.size(); ++j) {
      const auto region = intersect(cover.box(i), cover.box(j));
      if (!region) continue;
      ++report.overlaps_checked;
      const CoverIndex& ci = cover.indices()[i];
      const CoverIndex& cj = cover.indices()[j];
      const RealVector p = region->interior_point(0.5);
      const RealVector xi = cover.chart_coordinates(ci, p).head(n);
      const RealVector xj = cover.chart_coordinates(cj, p).head(n);
      const IntVector w = wrap_vector(ci, cj);

      // phi_ij = prod_k transition_factor(k)^(-w_k), so phi^{-1} d phi = -2 pi i (a w)^t dy.
      const ComplexVector log_derivative = (-kI * kTwoPi) * (obj.section.a * w).cast<double>().cast<Complex>();
      const ComplexVector omega = TransitionForm{obj.tau * w}.dy_coefficients().cast<Complex>();
      const ComplexVector lhs = connection_form(obj, xj, include_twist) - connection_form(obj, xi, include_twist) -
                                log_derivative;
      const double err = max_abs_entry(lhs + kI * omega);
      if (err > report.max_error) {
        report.max_error = err;
        report.witness = ci.to_string() + " -> " + cj.to_string();
      }
    }
  }
  report.pass = report.max_error <= tol.abs_tol * scale;
  return report;
}

ComplexMatrix curvature(const BundleObject& obj, const RealVector& x) {
  const int n = obj.n();
  const ComplexMatrix a = jacobian(obj.section, x).cast<Complex>();
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = -kI * kTwoPi * a.transpose();
  out.bottomLeftCorner(n, n) = kI * kTwoPi * a;
  return out;
}

ComplexMatrix zero_two_part(const BundleObject& obj, const RealVector& x) {
  const ComplexMatrix t = obj.torus.period();
  const ComplexMatrix k = (t - t.conjugate()).inverse();
  const ComplexMatrix at = jacobian(obj.section, x).cast<Complex>() * t;
  const ComplexMatrix m = kI * kTwoPi * k.transpose() * at.transpose() * k;
  return m - m.transpose();
}

std::vector<RealVector> SampleGrid::points(const SectionData& s) const {
  const int n = s.n();
  if (density < 1) throw Error(ErrorKind::kInvalidArgument, "grid density must be positive");
  if (n > 4) throw Error(ErrorKind::kInvalidArgument, "sample grids are limited to n <= 4");
  std::size_t count = 1;
  for (int k = 0; k < n; ++k) count *= static_cast<std::size_t>(density);

  std::vector<RealVector> out;
  out.reserve(count + 4 * s.modes.size());
  for (std::size_t code = 0; code < count; ++code) {
    RealVector x(n);
    std::size_t c = code;
    for (int k = n - 1; k >= 0; --k) {
      x(k) = static_cast<double>(c % static_cast<std::size_t>(density)) / density;
      c /= static_cast<std::size_t>(density);
    }
    out.push_back(std::move(x));
  }
  for (const auto& mode : s.modes) {
    const RealVector k = mode.k.cast<double>();
    for (const double t : {0.0, 0.25, 0.5, 0.75}) out.push_back(t * k / k.squaredNorm());
  }
  return out;
}

HolomorphicityReport is_holomorphic(const BundleObject& obj, const SampleGrid& grid, const ToleranceConfig& tol) {
  HolomorphicityReport report;
  const ComplexMatrix t = obj.torus.period();
  for (const auto& x : grid.points(obj.section)) {
    const double asym = asymmetry(ComplexMatrix(jacobian(obj.section, x).cast<Complex>() * t));
    if (report.samples == 0 || asym > report.max_asymmetry) {
      report.max_asymmetry = asym;
      report.witness = x;
    }
    ++report.samples;
  }
  report.holomorphic = report.max_asymmetry <= tol.abs_tol;
  return report;
}

ZeroTwoReport zero_two_part_check(const BundleObject& obj, const SampleGrid& grid, const ToleranceConfig& tol) {
  ZeroTwoReport report;
  for (const auto& x : grid.points(obj.section)) {
    const double norm = max_abs_entry(zero_two_part(obj, x));
    if (report.samples == 0 || norm > report.max_norm) {
      report.max_norm = norm;
      report.witness = x;
    }
    ++report.samples;
  }
  report.vanishes = report.max_norm <= tol.abs_tol;
  return report;
}

std::string format_point(const RealVector& x) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << ')';
  return os.str();
}

}  // namespace torusmirror
