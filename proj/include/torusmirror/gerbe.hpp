#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "torusmirror/matrix_kernel.hpp"

namespace torusmirror {

using Rational = boost::rational<std::int64_t>;

/// Default cover inflation.
inline const Rational kDefaultEpsilon{1, 24};

/// Label (l; m) of one chart O_m^l, entries in {1, 2, 3}.
struct CoverIndex {
  std::vector<int> l;
  std::vector<int> m;

  int n() const { return static_cast<int>(l.size()); }
  bool operator==(const CoverIndex&) const = default;
  std::string to_string() const;
};

/// Open arc (start, end) on R/Z. Endpoints are integers in units of
/// 1/denominator; 0 <= start < denominator and end - start < denominator.
struct Arc {
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool contains(std::int64_t point, std::int64_t denominator) const;
  bool operator==(const Arc&) const = default;
};

/// Per-axis arcs of a box (or of an intersection of boxes) in the x and y directions.
struct TorusBox {
  std::int64_t denominator = 1;
  std::vector<Arc> x;
  std::vector<Arc> y;

  double length(bool x_axis, int axis) const;
  /// Torus point at the given fraction (0..1) along every axis arc.
  RealVector interior_point(double fraction) const;
};

/// Validated (n, epsilon) pair; epsilon must lie in (0, 1/12).
class CoverGeometry {
 public:
  CoverGeometry(int n, Rational epsilon = kDefaultEpsilon);

  int n() const { return n_; }
  const Rational& epsilon() const { return epsilon_; }
  std::int64_t denominator() const { return denominator_; }
  std::size_t size() const { return indices_.size(); }

  const std::vector<CoverIndex>& indices() const { return indices_; }
  const TorusBox& box(std::size_t i) const { return boxes_[i]; }
  TorusBox box_of(const CoverIndex& index) const;

  /// True when some box contains the torus point (coordinates taken mod 1).
  bool covers(const RealVector& point) const;

  /// Lift a torus point into the chart's local coordinate range.
  RealVector chart_coordinates(const CoverIndex& index, const RealVector& point) const;

 private:
  int n_;
  Rational epsilon_;
  std::int64_t denominator_;
  std::vector<CoverIndex> indices_;
  std::vector<TorusBox> boxes_;
};

/// All 3^(2n) charts in lexicographic (l, m) order.
std::vector<std::pair<CoverIndex, TorusBox>> build_cover(int n, Rational epsilon = kDefaultEpsilon);

std::optional<TorusBox> intersect(const TorusBox& a, const TorusBox& b);
std::optional<TorusBox> overlap(const CoverIndex& i, const CoverIndex& j, Rational epsilon = kDefaultEpsilon);

/// How pair transition forms are assigned.
enum class TransitionRule {
  /// Every axis crossing x_j = 0 contributes +-tau_j, for any fibre labels.
  kCanonical,
  /// Only the (l_j = 1, l'_j = 3) direction, no antisymmetric completion.
  kWithoutAntisymmetry,
  /// A single crossing axis with all other labels equal and m = m'.
  kSingleAxisSameFibre,
};

/// w_ij in {-1, 0, 1}^n: +1 on axes where chart i sits at x_j ~ 0 and chart j
/// at x_j ~ 1, -1 for the reverse. Equals the lift difference of x between the charts.
IntVector wrap_vector(const CoverIndex& i, const CoverIndex& j, TransitionRule rule = TransitionRule::kCanonical);

/// dy-coefficients of the transition 1-form, in units of 2 pi (integers).
struct TransitionForm {
  IntVector coeff_2pi;
  RealVector dy_coefficients() const;
  bool is_zero() const { return coeff_2pi.isZero(); }
};

TransitionForm transition_form(const CoverIndex& i, const CoverIndex& j, const IntMatrix& tau,
                               Rational epsilon = kDefaultEpsilon,
                               TransitionRule rule = TransitionRule::kCanonical);

struct CocycleViolation {
  std::size_t i = 0, j = 0, k = 0;
  IntVector sum_2pi;
};

struct ZeroConnectionReport {
  bool pass = false;
  std::uint64_t pairs_checked = 0;
  std::uint64_t antisymmetry_failures = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t quadruples_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<CocycleViolation> violations;  // first few only
};

/// Exhaustive check of omega_ij + omega_jk + omega_ki = 0 on every nonempty
/// ordered triple overlap, plus (delta theta) = 1 on every quadruple overlap.
ZeroConnectionReport verify_zero_connection(const CoverGeometry& cover, const IntMatrix& tau,
                                            TransitionRule rule = TransitionRule::kCanonical);

/// 1-form on R^{2n} whose coefficients are affine in (x, y).
struct AffineOneForm {
  RealVector constant;  // size 2n
  RealMatrix slope;     // coefficient_k = constant_k + sum_l slope(k, l) p_l

  /// Antisymmetric coefficient matrix of the exterior derivative.
  RealMatrix exterior_derivative() const;
};

/// Local 2-form beta_i on chart i, evaluated at chart coordinates.
using LocalTwoForm = std::function<RealMatrix(const CoverIndex&, const RealVector&)>;

/// The global 2-form 2 pi dx^t tau^t dy.
RealMatrix b_field_coefficients(const IntMatrix& tau);
LocalTwoForm global_b_field(const IntMatrix& tau);

struct OneConnectionReport {
  bool pass = false;
  std::uint64_t pairs_checked = 0;
  double max_curvature = 0.0;
  double max_delta_beta = 0.0;
  std::string witness;
};

/// Curvature of every pair connection d - i omega_ij and the Cech difference
/// beta_j - beta_i (sampled inside each overlap) must both vanish.
OneConnectionReport verify_one_connection(const CoverGeometry& cover, const IntMatrix& tau,
                                          const LocalTwoForm& beta = {}, double tol = 1e-12);

/// Parse "p/q" or a decimal string such as "0.04" exactly.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

}  // namespace torusmirror
