#pragma once

#include "torusmirror/matrix_kernel.hpp"

namespace torusmirror {

/// The complex torus C^n / (Z^n + T Z^n) with period matrix T = X + iY.
///
/// Y must have a positive definite symmetric part and det T must be nonzero.
/// Y itself is not required to be symmetric.
class ComplexTorus {
 public:
  ComplexTorus(RealMatrix re, RealMatrix im, const ToleranceConfig& tol = {});
  static ComplexTorus from_period(const ComplexMatrix& period, const ToleranceConfig& tol = {});

  int n() const { return static_cast<int>(re_.rows()); }
  const RealMatrix& re() const { return re_; }
  const RealMatrix& im() const { return im_; }
  ComplexMatrix period() const;

 private:
  RealMatrix re_;
  RealMatrix im_;
};

/// A constant-coefficient generalized complex structure on a 2n-torus, stored
/// as the 4n x 4n matrix acting on the ordered frame (d/dx, d/dy, dx, dy).
/// Column i holds the coefficients of the image of the i-th frame element.
struct GeneralizedComplexStructure {
  int n = 0;
  RealMatrix m;

  GeneralizedComplexStructure() = default;
  GeneralizedComplexStructure(int n_, RealMatrix m_);

  /// max |M^2 + Id|
  double square_defect() const;
  /// max |M^t Q M - Q|
  double pairing_defect() const;
  bool satisfies_invariants(const ToleranceConfig& tol = {}) const;
};

/// Natural pairing of TX with T*X in the (d/dx, d/dy, dx, dy) frame.
RealMatrix pairing_matrix(int n);

GeneralizedComplexStructure gcs_from_complex(const ComplexTorus& torus);
GeneralizedComplexStructure gcs_from_kahler(const ComplexTorus& torus);

/// Conjugation by the permutation exchanging the d/dy and dy blocks.
GeneralizedComplexStructure mirror(const GeneralizedComplexStructure& g);

/// Shear by the closed 2-form 2 pi dx^t tau^t dy.
GeneralizedComplexStructure b_transform(const GeneralizedComplexStructure& g, const IntMatrix& tau);

/// Symplectic data read off a structure of B-transformed symplectic type.
/// The 2n x 2n matrices are full 2-form coefficient matrices in the
/// (dx, dy) basis including the 2 pi factor; the n x n matrices are the
/// dx^t (.) dy and dx^t (.) dx blocks without it.
struct ComplexifiedSymplecticData {
  RealMatrix omega_mat;  // dx-dy block of omega / 2 pi
  RealMatrix b_mat;      // dx-dy block of B / 2 pi
  RealMatrix omega_xx;   // antisymmetric dx-dx block of omega / 2 pi
  RealMatrix b_xx;       // antisymmetric dx-dx block of B / 2 pi
  RealMatrix omega_form;
  RealMatrix b_form;
  double reconstruction_error = 0.0;
};

ComplexifiedSymplecticData extract_complexified_symplectic(const GeneralizedComplexStructure& g,
                                                           const ToleranceConfig& tol = {});

/// Period matrix of a (possibly beta-transformed) complex-type structure.
ComplexMatrix extract_period_matrix(const GeneralizedComplexStructure& g, const ToleranceConfig& tol = {});

/// Coefficient matrix of 2 pi dx^t mat dy - 2 pi dx^t (mat tau) dx.
RealMatrix twisted_form_coefficients(const RealMatrix& mat, const IntMatrix& tau);
ComplexMatrix twisted_form_coefficients(const ComplexMatrix& mat, const IntMatrix& tau);

/// Coefficient matrix of 2 pi i dx^t (T^{-1})^t dy (+ the tau twist).
ComplexMatrix complexified_symplectic_form(const ComplexTorus& torus, const IntMatrix& tau);

/// The block matrix [[I, 0], [tau, I]].
RealMatrix g_tau(const IntMatrix& tau);

struct SymplectomorphismResult {
  bool holds = false;
  double max_error = 0.0;
};

/// Checks g_tau^t Omega_tau g_tau = Omega by direct congruence.
SymplectomorphismResult symplectomorphism_check(const ComplexTorus& torus, const IntMatrix& tau,
                                                const ToleranceConfig& tol = {});

/// True when tau T is symmetric, in which case the B-field transform leaves
/// the complex structure unchanged and the deformation is trivial.
bool deformation_is_trivial(const ComplexTorus& torus, const IntMatrix& tau, const ToleranceConfig& tol = {});

}  // namespace torusmirror
