#include "torusmirror/lagrangian_objects.hpp"

namespace torusmirror {

GraphLagrangian::GraphLagrangian(SectionData section_, IntMatrix tau_, ComplexTorus torus_)
    : section(std::move(section_)), tau(std::move(tau_)), torus(std::move(torus_)) {
  section.validate();
  if (section.n() != torus.n() || tau.rows() != torus.n() || tau.cols() != torus.n()) {
    throw Error(ErrorKind::kInvalidArgument, "torus, tau and section dimensions disagree");
  }
}

RealMatrix mirror_omega_mat(const ComplexTorus& torus) {
  return (-torus.period().inverse().transpose()).imag();
}

RealMatrix mirror_b_mat(const ComplexTorus& torus) {
  return (-torus.period().inverse().transpose()).real();
}

RealVector graph_point(const GraphLagrangian& lag, const RealVector& x) {
  RealVector p(2 * lag.n());
  p << x, eval_section(lag.section, x) + to_real(lag.tau) * x;
  return p;
}

RealMatrix tangent_frame(const GraphLagrangian& lag, const RealVector& x) {
  const int n = lag.n();
  RealMatrix frame(2 * n, n);
  frame << RealMatrix::Identity(n, n), jacobian(lag.section, x) + to_real(lag.tau);
  return frame;
}

RealMatrix omega_restriction(const GraphLagrangian& lag, const RealVector& x) {
  const RealMatrix frame = tangent_frame(lag, x);
  return frame.transpose() * twisted_form_coefficients(mirror_omega_mat(lag.torus), lag.tau) * frame;
}

RealMatrix b_restriction(const GraphLagrangian& lag, const RealVector& x) {
  const RealMatrix frame = tangent_frame(lag, x);
  return frame.transpose() * twisted_form_coefficients(mirror_b_mat(lag.torus), lag.tau) * frame;
}

FukayaReport is_fukaya_object(const GraphLagrangian& lag, const SampleGrid& grid, const ToleranceConfig& tol) {
  FukayaReport report;
  const ComplexMatrix t = lag.torus.period();
  double worst = -1.0;
  for (const auto& x : grid.points(lag.section)) {
    const double w = max_abs_entry(omega_restriction(lag, x));
    const double b = max_abs_entry(b_restriction(lag, x));
    report.max_omega_restriction = std::max(report.max_omega_restriction, w);
    report.max_b_restriction = std::max(report.max_b_restriction, b);
    if (std::max(w, b) > worst) {
      worst = std::max(w, b);
      report.witness = x;
    }
    const double asym = asymmetry(ComplexMatrix(jacobian(lag.section, x).cast<Complex>() * t));
    report.max_symmetry_defect = std::max(report.max_symmetry_defect, asym);
    ++report.samples;
  }
  report.is_object = report.max_omega_restriction <= tol.abs_tol && report.max_b_restriction <= tol.abs_tol;
  report.shortcut_agrees = report.is_object == (report.max_symmetry_defect <= tol.abs_tol);
  return report;
}

GraphLagrangian apply_symplectomorphism(const GraphLagrangian& lag, const IntMatrix& tau) {
  if (!lag.tau.isZero()) {
    throw Error(ErrorKind::kInvalidArgument, "the symplectomorphism acts on untwisted objects");
  }
  return GraphLagrangian(lag.section, tau, lag.torus);
}

CorrespondenceReport mirror_correspondence_check(const SectionData& section, const ComplexTorus& torus,
                                                 const IntMatrix& tau, const SampleGrid& grid,
                                                 const ToleranceConfig& tol) {
  const BundleObject bundle(torus, tau, section);
  const GraphLagrangian lag(section, tau, torus);
  const auto holo = is_holomorphic(bundle, grid, tol);
  const auto zero_two = zero_two_part_check(bundle, grid, tol);
  const auto fukaya = is_fukaya_object(lag, grid, tol);
  CorrespondenceReport report;
  report.holomorphic = holo.holomorphic;
  report.zero_two_vanishes = zero_two.vanishes;
  report.fukaya = fukaya.is_object;
  report.max_asymmetry = holo.max_asymmetry;
  report.agree = report.holomorphic == report.fukaya && report.holomorphic == report.zero_two_vanishes;
  return report;
}

}  // namespace torusmirror
