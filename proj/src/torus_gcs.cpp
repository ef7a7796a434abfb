#include "torusmirror/torus_gcs.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace torusmirror {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Assemble a square block matrix from a row-major grid of equally sized blocks.
template <typename Scalar>
Mat<Scalar> assemble(std::initializer_list<std::initializer_list<Mat<Scalar>>> grid) {
  const auto b = grid.begin()->begin()->rows();
  const auto k = static_cast<Eigen::Index>(grid.size());
  Mat<Scalar> out(k * b, k * b);
  Eigen::Index r = 0;
  for (const auto& row : grid) {
    Eigen::Index c = 0;
    for (const auto& block : row) {
      out.block(r * b, c * b, b, b) = block;
      ++c;
    }
    ++r;
  }
  return out;
}

// Upper-left 2n x 2n block of the complex-type structure for T = X + iY.
RealMatrix complex_structure_block(const RealMatrix& x, const RealMatrix& y_inv, const RealMatrix& y) {
  return assemble<double>({{-x * y_inv, -y - x * y_inv * x}, {y_inv, y_inv * x}});
}

RealMatrix full_complex_type(const RealMatrix& x, const RealMatrix& y) {
  const auto n = x.rows();
  const RealMatrix y_inv = y.inverse();
  const RealMatrix j = complex_structure_block(x, y_inv, y);
  RealMatrix m = RealMatrix::Zero(4 * n, 4 * n);
  m.topLeftCorner(2 * n, 2 * n) = j;
  m.bottomRightCorner(2 * n, 2 * n) = -j.transpose();
  return m;
}

RealMatrix shear(const RealMatrix& lower_left) {
  const auto k = lower_left.rows();
  RealMatrix e = RealMatrix::Identity(2 * k, 2 * k);
  e.bottomLeftCorner(k, k) = lower_left;
  return e;
}

void require_n(const IntMatrix& tau, int n, const char* what) {
  if (tau.rows() != n || tau.cols() != n) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": tau must be " + std::to_string(n) + "x" +
                                                 std::to_string(n));
  }
}

template <typename Scalar>
Mat<Scalar> twisted_form_impl(const Mat<Scalar>& mat, const IntMatrix& tau) {
  const auto n = mat.rows();
  const Mat<Scalar> t = tau.cast<double>().template cast<Scalar>();
  Mat<Scalar> out = Mat<Scalar>::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = -mat * t + t.transpose() * mat.transpose();
  out.topRightCorner(n, n) = mat;
  out.bottomLeftCorner(n, n) = -mat.transpose();
  return Scalar(kTwoPi) * out;
}

}  // namespace

ComplexTorus::ComplexTorus(RealMatrix re, RealMatrix im, const ToleranceConfig& tol)
    : re_(std::move(re)), im_(std::move(im)) {
  if (re_.rows() == 0 || re_.rows() != re_.cols() || im_.rows() != re_.rows() || im_.cols() != re_.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "period matrix parts must be square and of equal size");
  }
  if (!re_.allFinite() || !im_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "period matrix has non-finite entries");
  }
  const RealMatrix sym = 0.5 * (im_ + im_.transpose());
  if (!is_positive_definite(sym, tol)) {
    throw Error(ErrorKind::kInvalidArgument, "Im T is not positive definite");
  }
  if (std::abs(period().determinant()) <= tol.abs_tol) {
    throw Error(ErrorKind::kInvalidArgument, "det T vanishes");
  }
}

ComplexTorus ComplexTorus::from_period(const ComplexMatrix& period, const ToleranceConfig& tol) {
  return ComplexTorus(period.real(), period.imag(), tol);
}

ComplexMatrix ComplexTorus::period() const {
  ComplexMatrix t(re_.rows(), re_.cols());
  t.real() = re_;
  t.imag() = im_;
  return t;
}

GeneralizedComplexStructure::GeneralizedComplexStructure(int n_, RealMatrix m_) : n(n_), m(std::move(m_)) {
  if (n <= 0 || m.rows() != 4 * n || m.cols() != 4 * n) {
    throw Error(ErrorKind::kInvalidArgument, "generalized complex structure must be 4n x 4n");
  }
}

double GeneralizedComplexStructure::square_defect() const {
  return max_abs_entry(m * m + RealMatrix::Identity(4 * n, 4 * n));
}

double GeneralizedComplexStructure::pairing_defect() const {
  const RealMatrix q = pairing_matrix(n);
  return max_abs_entry(m.transpose() * q * m - q);
}

bool GeneralizedComplexStructure::satisfies_invariants(const ToleranceConfig& tol) const {
  return square_defect() <= tol.abs_tol && pairing_defect() <= tol.abs_tol;
}

RealMatrix pairing_matrix(int n) {
  RealMatrix q = RealMatrix::Zero(4 * n, 4 * n);
  q.topRightCorner(2 * n, 2 * n).setIdentity();
  q.bottomLeftCorner(2 * n, 2 * n).setIdentity();
  return q;
}

GeneralizedComplexStructure gcs_from_complex(const ComplexTorus& torus) {
  return {torus.n(), full_complex_type(torus.re(), torus.im())};
}

GeneralizedComplexStructure gcs_from_kahler(const ComplexTorus& torus) {
  const auto& x = torus.re();
  const auto& y = torus.im();
  const auto n = x.rows();
  const RealMatrix y_inv = y.inverse();
  const RealMatrix o = RealMatrix::Zero(n, n);
  const RealMatrix m = assemble<double>({
      {o, o, y_inv.transpose() * x.transpose() - x * y_inv, -y_inv.transpose()},
      {o, o, y_inv, o},
      {o, -y, o, o},
      {y.transpose(), y.transpose() * x - x.transpose() * y, o, o},
  });
  return {torus.n(), m};
}

GeneralizedComplexStructure mirror(const GeneralizedComplexStructure& g) {
  const int n = g.n;
  // Block permutation 1 <-> 1, 2 <-> 4, 3 <-> 3 applied on both sides.
  const int order[4] = {0, 3, 2, 1};
  RealMatrix out(4 * n, 4 * n);
  for (int bi = 0; bi < 4; ++bi) {
    for (int bj = 0; bj < 4; ++bj) {
      out.block(bi * n, bj * n, n, n) = g.m.block(order[bi] * n, order[bj] * n, n, n);
    }
  }
  return {n, out};
}

GeneralizedComplexStructure b_transform(const GeneralizedComplexStructure& g, const IntMatrix& tau) {
  const int n = g.n;
  require_n(tau, n, "b_transform");
  const RealMatrix t = to_real(tau);
  const RealMatrix o = RealMatrix::Zero(n, n);
  const RealMatrix b = assemble<double>({{o, -t.transpose()}, {t, o}});
  return {n, shear(b) * g.m * shear(-b)};
}

ComplexifiedSymplecticData extract_complexified_symplectic(const GeneralizedComplexStructure& g,
                                                           const ToleranceConfig& tol) {
  const int n = g.n;
  const RealMatrix top_right = g.m.topRightCorner(2 * n, 2 * n);
  Eigen::FullPivLU<RealMatrix> lu(top_right);
  lu.setThreshold(tol.abs_tol);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::kNotSymplecticType, "upper-right block is singular");
  }
  const RealMatrix w = -lu.inverse();
  const RealMatrix b = w * g.m.topLeftCorner(2 * n, 2 * n);

  RealMatrix middle = RealMatrix::Zero(4 * n, 4 * n);
  middle.topRightCorner(2 * n, 2 * n) = top_right;
  middle.bottomLeftCorner(2 * n, 2 * n) = w;
  const RealMatrix rebuilt = shear(b) * middle * shear(-b);

  const double scale = std::max(1.0, max_abs_entry(g.m));
  ComplexifiedSymplecticData out;
  out.reconstruction_error = max_abs_entry(rebuilt - g.m);
  const double shape_error = std::max({max_abs_entry(w + w.transpose()), max_abs_entry(b + b.transpose()),
                                       max_abs_entry(w.bottomRightCorner(n, n)),
                                       max_abs_entry(b.bottomRightCorner(n, n))});
  if (out.reconstruction_error > tol.abs_tol * scale || shape_error > tol.abs_tol * scale) {
    throw Error(ErrorKind::kNotSymplecticType, "structure is not a B-transformed symplectic structure");
  }
  // The lower-left block of the symplectic factor is minus the form's coefficient matrix.
  out.omega_mat = -w.topRightCorner(n, n);
  out.b_mat = -b.topRightCorner(n, n);
  out.omega_xx = -w.topLeftCorner(n, n);
  out.b_xx = -b.topLeftCorner(n, n);
  out.omega_form = -kTwoPi * w;
  out.b_form = -kTwoPi * b;
  return out;
}

ComplexMatrix extract_period_matrix(const GeneralizedComplexStructure& g, const ToleranceConfig& tol) {
  const int n = g.n;
  const RealMatrix j = g.m.topLeftCorner(2 * n, 2 * n);
  const RealMatrix y_inv = j.bottomLeftCorner(n, n);
  Eigen::FullPivLU<RealMatrix> lu(y_inv);
  lu.setThreshold(tol.abs_tol);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::kNotComplexType, "lower-left block of the tangent part is singular");
  }
  const RealMatrix y = lu.inverse();
  const RealMatrix x = -j.topLeftCorner(n, n) * y;

  // Rebuild and compare everything except the beta block in the upper right.
  const RealMatrix expected = full_complex_type(x, y);
  const double scale = std::max(1.0, max_abs_entry(g.m));
  const double error =
      std::max({max_abs_entry(expected.topLeftCorner(2 * n, 2 * n) - j),
                max_abs_entry(expected.bottomRightCorner(2 * n, 2 * n) - g.m.bottomRightCorner(2 * n, 2 * n)),
                max_abs_entry(g.m.bottomLeftCorner(2 * n, 2 * n)), g.pairing_defect(), g.square_defect()});
  if (error > tol.abs_tol * scale) {
    throw Error(ErrorKind::kNotComplexType, "structure is not of (beta-transformed) complex type");
  }
  ComplexMatrix period(n, n);
  period.real() = x;
  period.imag() = y;
  return period;
}

RealMatrix twisted_form_coefficients(const RealMatrix& mat, const IntMatrix& tau) {
  require_n(tau, static_cast<int>(mat.rows()), "twisted_form_coefficients");
  return twisted_form_impl<double>(mat, tau);
}

ComplexMatrix twisted_form_coefficients(const ComplexMatrix& mat, const IntMatrix& tau) {
  require_n(tau, static_cast<int>(mat.rows()), "twisted_form_coefficients");
  return twisted_form_impl<Complex>(mat, tau);
}

ComplexMatrix complexified_symplectic_form(const ComplexTorus& torus, const IntMatrix& tau) {
  const ComplexMatrix mat = Complex(0.0, 1.0) * torus.period().inverse().transpose();
  return twisted_form_coefficients(mat, tau);
}

RealMatrix g_tau(const IntMatrix& tau) { return shear(to_real(tau)); }

SymplectomorphismResult symplectomorphism_check(const ComplexTorus& torus, const IntMatrix& tau,
                                                const ToleranceConfig& tol) {
  require_n(tau, torus.n(), "symplectomorphism_check");
  const ComplexMatrix untwisted = complexified_symplectic_form(torus, IntMatrix::Zero(torus.n(), torus.n()));
  const ComplexMatrix twisted = complexified_symplectic_form(torus, tau);
  const ComplexMatrix g = g_tau(tau).cast<Complex>();
  SymplectomorphismResult r;
  r.max_error = max_abs_entry(g.transpose() * twisted * g - untwisted);
  r.holds = r.max_error <= tol.abs_tol;
  return r;
}

bool deformation_is_trivial(const ComplexTorus& torus, const IntMatrix& tau, const ToleranceConfig& tol) {
  require_n(tau, torus.n(), "deformation_is_trivial");
  const ComplexMatrix prod = tau.cast<double>().cast<Complex>() * torus.period();
  return is_symmetric(prod, tol);
}

}  // namespace torusmirror
