#include "torusmirror/dhym_slag.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace torusmirror {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const Complex kI{0.0, 1.0};

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double rel_difference(Complex a, Complex b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

RealMatrix block2(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c, const RealMatrix& d) {
  const auto n = a.rows();
  RealMatrix m(2 * n, 2 * n);
  m << a, b, c, d;
  return m;
}

PhaseResult phase_result(const std::vector<double>& thetas, const ToleranceConfig& tol) {
  PhaseResult r;
  r.samples = thetas.size();
  r.max_phase_spread = phase_spread(thetas);
  r.exists = r.max_phase_spread <= tol.phase_tol;
  r.theta = thetas.empty() ? 0.0 : thetas.front();
  return r;
}

}  // namespace

KahlerData kahler_data(const ComplexTorus& torus) {
  const RealMatrix& x = torus.re();
  const RealMatrix& y = torus.im();
  const auto n = x.rows();
  const RealMatrix o = RealMatrix::Zero(n, n);
  const RealMatrix id = RealMatrix::Identity(n, n);
  KahlerData d;
  d.omega_coeff = kTwoPi * block2(o, y, -y.transpose(), x.transpose() * y - y.transpose() * x);
  d.g_coeff = kTwoPi * block2(id, x, x.transpose(), x.transpose() * x + y.transpose() * y);
  d.j_coeff = gcs_from_complex(torus).m.topLeftCorner(2 * n, 2 * n);
  return d;
}

KahlerReport kahler_verify(const ComplexTorus& torus, const KahlerData& data, const ToleranceConfig& tol) {
  const RealMatrix& x = torus.re();
  const RealMatrix& y = torus.im();
  const auto n = x.rows();
  const RealMatrix o = RealMatrix::Zero(n, n);
  const RealMatrix id = RealMatrix::Identity(n, n);
  const RealMatrix lower = block2(id, o, x.transpose(), id);
  const RealMatrix upper = block2(id, x, o, id);

  KahlerReport r;
  const RealMatrix omega_middle = block2(o, y, -y.transpose(), o);
  r.omega_ldu_error = max_abs_entry(kTwoPi * lower * omega_middle * upper - data.omega_coeff);
  // Unit-triangular outer factors, so invertibility reduces to that of Y.
  Eigen::FullPivLU<RealMatrix> lu(y);
  lu.setThreshold(tol.abs_tol);
  r.omega_invertible = lu.isInvertible();

  const RealMatrix g_middle = block2(id, o, o, y.transpose() * y);
  r.g_ldu_error = max_abs_entry(kTwoPi * lower * g_middle * upper - data.g_coeff);
  const RealMatrix g_sym = 0.5 * (data.g_coeff + data.g_coeff.transpose());
  r.g_min_eigenvalue = smallest_eigenvalue(g_sym, tol);
  r.g_positive = asymmetry(data.g_coeff) <= tol.abs_tol && smallest_eigenvalue(g_middle, tol) > tol.abs_tol &&
                 r.g_min_eigenvalue > tol.abs_tol;

  r.j_square_error = max_abs_entry(data.j_coeff * data.j_coeff + RealMatrix::Identity(2 * n, 2 * n));
  r.compatibility_error = max_abs_entry(data.j_coeff.transpose() * data.g_coeff - data.omega_coeff);

  const double scale = std::max(1.0, max_abs_entry(data.g_coeff));
  r.pass = r.omega_invertible && r.g_positive && r.omega_ldu_error <= tol.abs_tol * scale &&
           r.g_ldu_error <= tol.abs_tol * scale && r.j_square_error <= tol.abs_tol * scale &&
           r.compatibility_error <= tol.abs_tol * scale;
  return r;
}

KahlerReport kahler_verify(const ComplexTorus& torus, const ToleranceConfig& tol) {
  return kahler_verify(torus, kahler_data(torus), tol);
}

DhymTop dhym_top(const BundleObject& obj, const RealVector& x) {
  const int n = obj.n();
  const ComplexMatrix omega = kahler_data(obj.torus).omega_coeff.cast<Complex>();
  const ExteriorForm form = two_form_from_matrix(ComplexMatrix(omega - curvature(obj, x)));

  DhymTop out;
  out.wedge_route = top_coefficient(power(form, n));
  const ComplexMatrix inner =
      -kI * obj.torus.im().cast<Complex>() + jacobian(obj.section, x).transpose().cast<Complex>();
  out.closed_form = std::pow(kI * kTwoPi, n) * factorial(n) * inner.determinant();
  out.rel_diff = rel_difference(out.wedge_route, out.closed_form);
  return out;
}

double phase_spread(std::vector<double> angles) {
  if (angles.size() < 2) return 0.0;
  for (auto& a : angles) a = reduce_mod_pi(a);
  std::sort(angles.begin(), angles.end());
  double largest_gap = angles.front() + kPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) largest_gap = std::max(largest_gap, angles[i] - angles[i - 1]);
  return kPi - largest_gap;
}

PhaseResult dhym_phase(const BundleObject& obj, const SampleGrid& grid, const ToleranceConfig& tol) {
  const auto holo = is_holomorphic(obj, grid, tol);
  if (!holo.holomorphic) {
    throw Error(ErrorKind::kNotHolomorphic, "curvature has a nonzero (0,2) part at " + format_point(holo.witness));
  }
  std::vector<double> thetas;
  for (const auto& x : grid.points(obj.section)) thetas.push_back(phase_mod_pi(dhym_top(obj, x).wedge_route, tol));
  return phase_result(thetas, tol);
}

ComplexMatrix mirror_period(const ComplexTorus& torus, const IntMatrix& tau, const ToleranceConfig& tol) {
  if (tau.rows() != torus.n() || tau.cols() != torus.n()) {
    throw Error(ErrorKind::kInvalidArgument, "tau has the wrong size");
  }
  const ComplexMatrix m = -tau.cast<double>().cast<Complex>() - kI * torus.im().transpose().cast<Complex>();
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  lu.setThreshold(tol.abs_tol);
  if (!lu.isInvertible() || std::abs(m.determinant()) <= tol.abs_tol) {
    throw Error(ErrorKind::kMirrorUndefined, "det(-tau - iY^t) vanishes");
  }
  return lu.inverse();
}

SlagValue slag_value(const GraphLagrangian& lag, const RealVector& x, const ToleranceConfig& tol) {
  const int n = lag.n();
  const ComplexMatrix t_mirror = mirror_period(lag.torus, lag.tau, tol);
  const ComplexMatrix a = jacobian(lag.section, x).cast<Complex>();
  SlagValue out;
  out.closed_form =
      t_mirror.determinant() * (-kI * lag.torus.im().transpose().cast<Complex>() + a).determinant();
  ComplexMatrix row(n, 2 * n);
  row << ComplexMatrix::Identity(n, n), t_mirror;
  out.frame_route = (row * tangent_frame(lag, x).cast<Complex>()).determinant();
  out.rel_diff = rel_difference(out.closed_form, out.frame_route);
  return out;
}

PhaseResult slag_phase(const GraphLagrangian& lag, const SampleGrid& grid, const ToleranceConfig& tol) {
  const auto fukaya = is_fukaya_object(lag, grid, tol);
  if (!fukaya.is_object) {
    throw Error(ErrorKind::kNotLagrangian, "graph is not a Fukaya object at " + format_point(fukaya.witness));
  }
  std::vector<double> thetas;
  for (const auto& x : grid.points(lag.section)) {
    thetas.push_back(phase_mod_pi(slag_value(lag, x, tol).frame_route, tol));
  }
  return phase_result(thetas, tol);
}

EquivalenceReport equivalence_check(const SectionData& section, const ComplexTorus& torus, const IntMatrix& tau,
                                    const SampleGrid& grid, const ToleranceConfig& tol) {
  const BundleObject bundle(torus, tau, section);
  const GraphLagrangian lag(section, tau, torus);
  const int n = torus.n();
  const ComplexMatrix t_mirror = mirror_period(torus, tau, tol);

  EquivalenceReport r;
  r.expected_delta = reduce_mod_pi(std::arg(std::pow(kI * kTwoPi, n)) - std::arg(t_mirror.determinant()));

  PhaseResult dhym;
  PhaseResult slag;
  bool dhym_rejected = false;
  bool slag_rejected = false;
  try {
    dhym = dhym_phase(bundle, grid, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotHolomorphic) throw;
    dhym_rejected = true;
  }
  try {
    slag = slag_phase(lag, grid, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotLagrangian) throw;
    slag_rejected = true;
  }
  if (dhym_rejected || slag_rejected) {
    r.vacuous = dhym_rejected && slag_rejected;
    r.agree = r.vacuous;
    return r;
  }

  r.dhym_exists = dhym.exists;
  r.slag_exists = slag.exists;
  r.agree = dhym.exists == slag.exists;
  r.theta_dhym = dhym.theta;
  r.theta_slag = slag.theta;

  std::vector<double> deltas;
  for (const auto& x : grid.points(section)) {
    const double td = phase_mod_pi(dhym_top(bundle, x).wedge_route, tol);
    const double ts = phase_mod_pi(slag_value(lag, x, tol).frame_route, tol);
    const double d = reduce_mod_pi(ts - td);
    deltas.push_back(d);
    r.delta_error = std::max(r.delta_error, phase_distance_mod_pi(d, r.expected_delta));
  }
  r.delta = deltas.front();
  r.delta_spread = phase_spread(deltas);
  r.same_theta = phase_distance_mod_pi(r.delta, 0.0) <= tol.phase_tol;
  return r;
}

}  // namespace torusmirror
