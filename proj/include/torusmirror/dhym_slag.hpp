#pragma once

#include "torusmirror/exterior_forms.hpp"
#include "torusmirror/lagrangian_objects.hpp"

namespace torusmirror {

/// Kahler form, metric and complex structure of the torus, as 2n x 2n
/// coefficient matrices in the (dx, dy) frame.
struct KahlerData {
  RealMatrix omega_coeff;
  RealMatrix g_coeff;
  RealMatrix j_coeff;
};

KahlerData kahler_data(const ComplexTorus& torus);

struct KahlerReport {
  bool pass = false;
  double omega_ldu_error = 0.0;   // omega_coeff vs its block LDU product
  bool omega_invertible = false;
  double g_ldu_error = 0.0;
  double g_min_eigenvalue = 0.0;
  bool g_positive = false;
  double j_square_error = 0.0;    // max |J^2 + Id|
  double compatibility_error = 0.0;  // max |J^t G - Omega|
};

/// Checks the supplied data against the torus; pass deliberately perturbed data for negative controls.
KahlerReport kahler_verify(const ComplexTorus& torus, const KahlerData& data, const ToleranceConfig& tol = {});
KahlerReport kahler_verify(const ComplexTorus& torus, const ToleranceConfig& tol = {});

struct DhymTop {
  Complex wedge_route;
  Complex closed_form;
  double rel_diff = 0.0;
};

/// Top coefficient of (omega - F)^n by the wedge power and by
/// (2 pi i)^n n! det(-iY + A^t).
DhymTop dhym_top(const BundleObject& obj, const RealVector& x);

struct PhaseResult {
  bool exists = false;
  double theta = 0.0;
  double max_phase_spread = 0.0;
  std::size_t samples = 0;
};

/// Length of the shortest arc of R / pi Z containing all angles.
double phase_spread(std::vector<double> angles);

/// Throws kNotHolomorphic when the curvature has a (0,2) part.
PhaseResult dhym_phase(const BundleObject& obj, const SampleGrid& grid = {}, const ToleranceConfig& tol = {});

/// Period matrix (-tau - iY^t)^{-1} of the deformed mirror. Throws kMirrorUndefined when singular.
ComplexMatrix mirror_period(const ComplexTorus& torus, const IntMatrix& tau, const ToleranceConfig& tol = {});

struct SlagValue {
  Complex closed_form;  // det(T') det(-iY^t + A)
  Complex frame_route;  // det(I + T'(A + tau))
  double rel_diff = 0.0;
};

SlagValue slag_value(const GraphLagrangian& lag, const RealVector& x, const ToleranceConfig& tol = {});

/// Throws kNotLagrangian unless the graph is a Fukaya object.
PhaseResult slag_phase(const GraphLagrangian& lag, const SampleGrid& grid = {}, const ToleranceConfig& tol = {});

struct EquivalenceReport {
  bool vacuous = false;  // both sides rejected the object at their preconditions
  bool dhym_exists = false;
  bool slag_exists = false;
  bool agree = false;
  double delta = 0.0;           // theta_sLag - theta_dHYM mod pi at the first sample
  double expected_delta = 0.0;  // arg((2 pi i)^n) - arg det(-tau - iY^t)^{-1} mod pi
  double delta_error = 0.0;     // max over samples of the circular distance to expected_delta
  double delta_spread = 0.0;
  bool same_theta = false;      // delta == 0 mod pi within phase_tol
  double theta_dhym = 0.0;
  double theta_slag = 0.0;
};

EquivalenceReport equivalence_check(const SectionData& section, const ComplexTorus& torus, const IntMatrix& tau,
                                    const SampleGrid& grid = {}, const ToleranceConfig& tol = {});

}  // namespace torusmirror
