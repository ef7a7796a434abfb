#include "torusmirror/matrix_kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace torusmirror {

namespace {

template <typename M>
void require_square(const M& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(op) + " needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

// Pfaffian of the principal submatrix on `idx` (an even-sized index list).
Complex pfaffian_rec(const ComplexMatrix& m, const std::vector<int>& idx) {
  if (idx.empty()) return {1.0, 0.0};
  if (idx.size() == 2) return m(idx[0], idx[1]);
  Complex sum{0.0, 0.0};
  std::vector<int> rest;
  rest.reserve(idx.size() - 2);
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const Complex entry = m(idx[0], idx[j]);
    if (entry == Complex{0.0, 0.0}) continue;
    rest.clear();
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (k != j) rest.push_back(idx[k]);
    }
    // (-1)^(j+1) with zero-based j, so the first term is positive.
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    sum += sign * entry * pfaffian_rec(m, rest);
  }
  return sum;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(phase_tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "tolerances must be strictly positive");
  }
}

double asymmetry(const RealMatrix& m) {
  require_square(m, "asymmetry");
  return max_abs_entry(m - m.transpose());
}

double asymmetry(const ComplexMatrix& m) {
  require_square(m, "asymmetry");
  return max_abs_entry(m - m.transpose());
}

bool is_symmetric(const RealMatrix& m, const ToleranceConfig& tol) { return asymmetry(m) <= tol.abs_tol; }

bool is_symmetric(const ComplexMatrix& m, const ToleranceConfig& tol) { return asymmetry(m) <= tol.abs_tol; }

bool is_antisymmetric(const RealMatrix& m, const ToleranceConfig& tol) {
  require_square(m, "is_antisymmetric");
  return max_abs_entry(m + m.transpose()) <= tol.abs_tol;
}

bool is_antisymmetric(const ComplexMatrix& m, const ToleranceConfig& tol) {
  require_square(m, "is_antisymmetric");
  return max_abs_entry(m + m.transpose()) <= tol.abs_tol;
}

double smallest_eigenvalue(const RealMatrix& m, const ToleranceConfig& tol) {
  require_square(m, "smallest_eigenvalue");
  if (!is_symmetric(m, tol)) {
    throw Error(ErrorKind::kInvalidArgument, "positive definiteness is only defined here for symmetric input");
  }
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_definite(const RealMatrix& m, const ToleranceConfig& tol) {
  if (m.size() == 0) return true;
  return smallest_eigenvalue(m, tol) > tol.abs_tol;
}

Complex pfaffian(const ComplexMatrix& m, const ToleranceConfig& tol) {
  require_square(m, "pfaffian");
  if (m.rows() % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "pfaffian of odd order " + std::to_string(m.rows()));
  }
  if (m.rows() > 8) {
    throw Error(ErrorKind::kInvalidArgument, "pfaffian order capped at 8");
  }
  if (!is_antisymmetric(m, tol)) {
    throw Error(ErrorKind::kInvalidArgument, "pfaffian of a non-antisymmetric matrix");
  }
  std::vector<int> idx(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
  return pfaffian_rec(m, idx);
}

double reduce_mod_pi(double angle) {
  double r = std::fmod(angle, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r = 0.0;
  return r;
}

double phase_mod_pi(Complex z, const ToleranceConfig& tol) {
  if (std::abs(z) <= tol.abs_tol) {
    throw Error(ErrorKind::kIndeterminatePhase, "|z| below abs_tol");
  }
  return reduce_mod_pi(-std::arg(z));
}

double phase_distance_mod_pi(double a, double b) {
  const double d = reduce_mod_pi(a - b);
  return std::min(d, std::numbers::pi - d);
}

RealMatrix to_real(const IntMatrix& m) { return m.cast<double>(); }

}  // namespace torusmirror
