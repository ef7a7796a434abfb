#pragma once

#include <complex>

#include <Eigen/Dense>

#include "torusmirror/errors.hpp"

namespace torusmirror {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using IntMatrix = Eigen::MatrixXi;
using IntVector = Eigen::VectorXi;

/// Thresholds used by every tolerance-aware predicate. Nothing in the library
/// compares floating point values against a hidden epsilon.
struct ToleranceConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double phase_tol = 1e-9;  // radians

  /// Throws kInvalidArgument unless all three are strictly positive.
  void validate() const;
};

template <typename Derived>
double max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |M - M^t| over all entries.
double asymmetry(const RealMatrix& m);
double asymmetry(const ComplexMatrix& m);

bool is_symmetric(const RealMatrix& m, const ToleranceConfig& tol = {});
bool is_symmetric(const ComplexMatrix& m, const ToleranceConfig& tol = {});
bool is_antisymmetric(const RealMatrix& m, const ToleranceConfig& tol = {});
bool is_antisymmetric(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Smallest eigenvalue of a symmetric matrix. Throws on asymmetric input.
double smallest_eigenvalue(const RealMatrix& m, const ToleranceConfig& tol = {});

/// All eigenvalues strictly above abs_tol. The input must be symmetric.
bool is_positive_definite(const RealMatrix& m, const ToleranceConfig& tol = {});

/// Pfaffian by recursive expansion along the first row. Orders 2..8 (and the
/// empty matrix, whose Pfaffian is 1).
Complex pfaffian(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// The unique theta in [0, pi) with Im(e^{i theta} z) = 0, i.e. -arg(z) mod pi.
double phase_mod_pi(Complex z, const ToleranceConfig& tol = {});

/// Distance between two angles on the circle R / pi Z.
double phase_distance_mod_pi(double a, double b);

/// Reduce an angle into [0, pi).
double reduce_mod_pi(double angle);

/// Real and imaginary parts of an integer matrix promoted to double.
RealMatrix to_real(const IntMatrix& m);

}  // namespace torusmirror
