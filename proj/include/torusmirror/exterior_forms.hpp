#pragma once

#include <cstdint>
#include <map>

#include "torusmirror/matrix_kernel.hpp"

namespace torusmirror {

/// Constant-coefficient exterior form on a real vector space of dimension at
/// most 8. Basis index subsets are stored as sorted bitmasks; zero
/// coefficients are pruned.
class ExteriorForm {
 public:
  static constexpr int kMaxDimension = 8;

  ExteriorForm(int dimension, int degree);

  static ExteriorForm scalar(int dimension, Complex value);
  /// Basis 1-form e^index.
  static ExteriorForm basis(int dimension, int index);

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  const std::map<std::uint32_t, Complex>& terms() const { return terms_; }

  Complex coefficient(std::uint32_t mask) const;
  void add(std::uint32_t mask, Complex value);
  bool is_zero() const { return terms_.empty(); }

  ExteriorForm operator+(const ExteriorForm& other) const;
  ExteriorForm operator-(const ExteriorForm& other) const;
  ExteriorForm operator*(Complex s) const;

 private:
  int dimension_;
  int degree_;
  std::map<std::uint32_t, Complex> terms_;
};

ExteriorForm wedge(const ExteriorForm& f, const ExteriorForm& g);

/// sum_{i<j} omega_ij e^i ^ e^j
ExteriorForm two_form_from_matrix(const ComplexMatrix& omega, const ToleranceConfig& tol = {});
ExteriorForm two_form_from_matrix(const RealMatrix& omega, const ToleranceConfig& tol = {});

/// Antisymmetric coefficient matrix of a 2-form.
ComplexMatrix to_matrix(const ExteriorForm& f);

/// Sign of the permutation taking (x_1, y_1, ..., x_n, y_n) to sorted order (x_1..x_n, y_1..y_n).
int interleaving_sign(int n);

/// Coefficient of dx_1 ^ dy_1 ^ ... ^ dx_n ^ dy_n.
Complex top_coefficient(const ExteriorForm& f);

ExteriorForm power(const ExteriorForm& f, int k);

/// Pullback along the linear map v -> map * v.
ExteriorForm pullback(const ExteriorForm& f, const ComplexMatrix& map);
ExteriorForm pullback(const ExteriorForm& f, const RealMatrix& map);

}  // namespace torusmirror
