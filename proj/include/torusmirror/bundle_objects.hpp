#pragma once

#include <string>
#include <vector>

#include "torusmirror/gerbe.hpp"
#include "torusmirror/torus_gcs.hpp"

namespace torusmirror {

/// One term u cos(2 pi k.x) + v sin(2 pi k.x) of the periodic part of a section.
struct FourierMode {
  IntVector k;
  RealVector u;
  RealVector v;
};

/// Quasi-periodic section s(x) = a x + c + sum over modes, with s(x + e_j) = s(x) + a_j.
struct SectionData {
  static constexpr int kMaxModeOrder = 4;

  IntMatrix a;
  RealVector c;
  std::vector<FourierMode> modes;
  RealVector q;  // holonomy of the local system

  int n() const { return static_cast<int>(a.rows()); }
  bool is_affine() const { return modes.empty(); }

  /// Sizes agree, mode keys are nonzero, unique, bounded by kMaxModeOrder and
  /// lie in the half-space whose first nonzero entry is positive.
  void validate() const;

  static SectionData affine(IntMatrix a);
  static SectionData affine(IntMatrix a, RealVector c, RealVector q);
};

RealVector eval_section(const SectionData& s, const RealVector& x);
RealMatrix jacobian(const SectionData& s, const RealVector& x);

/// exp(2 pi i a_j^t y) for axis j (0-based).
Complex transition_factor(int j, const IntMatrix& a, const RealVector& y);

/// Line bundle with connection over the (possibly gerby deformed) torus.
struct BundleObject {
  ComplexTorus torus;
  IntMatrix tau;
  SectionData section;

  BundleObject(ComplexTorus torus_, IntMatrix tau_, SectionData section_);
  int n() const { return torus.n(); }
};

/// dy-coefficients of the local connection form
/// -2 pi i (s(x) + T^t q + tau x). The tau x term can be dropped for negative controls.
ComplexVector connection_form(const BundleObject& obj, const RealVector& x, bool include_twist = true);

struct TransitionCompatReport {
  bool pass = false;
  std::uint64_t overlaps_checked = 0;
  double max_error = 0.0;
  std::string witness;
};

/// On every overlap of the gerbe cover, A_j - A_i - phi_ij^{-1} d phi_ij must equal
/// -i omega_ij, where phi_ij is the product of transition factors for the
/// axes crossed between the charts.
TransitionCompatReport verify_transition_compat(const BundleObject& obj, Rational epsilon = kDefaultEpsilon,
                                                bool include_twist = true, const ToleranceConfig& tol = {});

/// Curvature with the 1-connection removed, as a 2n x 2n coefficient matrix in (dx, dy).
ComplexMatrix curvature(const BundleObject& obj, const RealVector& x);

/// dz-bar ^ dz-bar coefficient matrix of the curvature.
ComplexMatrix zero_two_part(const BundleObject& obj, const RealVector& x);

/// Deterministic sample points: a density^n lattice in lexicographic order
/// followed by the points t k / |k|^2, t in {0, 1/4, 1/2, 3/4}, for every mode.
struct SampleGrid {
  int density = 9;

  std::vector<RealVector> points(const SectionData& s) const;
};

struct HolomorphicityReport {
  bool holomorphic = false;
  double max_asymmetry = 0.0;  // max |A T - (A T)^t|
  RealVector witness;
  std::size_t samples = 0;
};

HolomorphicityReport is_holomorphic(const BundleObject& obj, const SampleGrid& grid = {},
                                    const ToleranceConfig& tol = {});

struct ZeroTwoReport {
  bool vanishes = false;
  double max_norm = 0.0;
  RealVector witness;
  std::size_t samples = 0;
};

ZeroTwoReport zero_two_part_check(const BundleObject& obj, const SampleGrid& grid = {}, const ToleranceConfig& tol = {});

std::string format_point(const RealVector& x);

}  // namespace torusmirror
