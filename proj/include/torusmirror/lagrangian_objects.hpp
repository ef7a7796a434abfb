#pragma once

#include "torusmirror/bundle_objects.hpp"

namespace torusmirror {

/// Graph of x -> s(x) + tau x in the mirror torus, with a flat U(1) local
/// system given by its holonomy q (stored on the section).
struct GraphLagrangian {
  SectionData section;
  IntMatrix tau;
  ComplexTorus torus;

  GraphLagrangian(SectionData section_, IntMatrix tau_, ComplexTorus torus_);
  int n() const { return torus.n(); }
};

/// dx-dy blocks of the mirror symplectic form and B-field (without 2 pi):
/// Im(-(T^{-1})^t) and Re(-(T^{-1})^t).
RealMatrix mirror_omega_mat(const ComplexTorus& torus);
RealMatrix mirror_b_mat(const ComplexTorus& torus);

/// The point (x, s(x) + tau x).
RealVector graph_point(const GraphLagrangian& lag, const RealVector& x);

/// Columns e_j + (A + tau)_j spanning the tangent space of the graph.
RealMatrix tangent_frame(const GraphLagrangian& lag, const RealVector& x);

/// Gram matrices of the twisted mirror symplectic form and B-field on the tangent frame.
RealMatrix omega_restriction(const GraphLagrangian& lag, const RealVector& x);
RealMatrix b_restriction(const GraphLagrangian& lag, const RealVector& x);

struct FukayaReport {
  bool is_object = false;
  double max_omega_restriction = 0.0;
  double max_b_restriction = 0.0;
  double max_symmetry_defect = 0.0;  // max |A T - (A T)^t|, the shortcut criterion
  bool shortcut_agrees = false;
  RealVector witness;
  std::size_t samples = 0;
};

/// Decided through the restrictions; the symmetry shortcut is only a cross-check.
FukayaReport is_fukaya_object(const GraphLagrangian& lag, const SampleGrid& grid = {}, const ToleranceConfig& tol = {});

/// Image of an untwisted object under the symplectomorphism g_tau.
GraphLagrangian apply_symplectomorphism(const GraphLagrangian& lag, const IntMatrix& tau);

struct CorrespondenceReport {
  bool agree = false;
  bool holomorphic = false;
  bool zero_two_vanishes = false;
  bool fukaya = false;
  double max_asymmetry = 0.0;
};

/// Runs the bundle-side and Lagrangian-side checkers on the same data.
CorrespondenceReport mirror_correspondence_check(const SectionData& section, const ComplexTorus& torus,
                                                 const IntMatrix& tau, const SampleGrid& grid = {},
                                                 const ToleranceConfig& tol = {});

}  // namespace torusmirror
