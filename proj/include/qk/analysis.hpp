#pragma once

#include <optional>

#include "qk/connections.hpp"
#include "qk/curvature.hpp"
#include "qk/hermitian.hpp"

namespace qk {

/// Everything derived from a triple that more than one check needs,
/// computed once. Frame-indexed tensors use the standard (1,0)-frame.
struct StructureAnalysis {
  HermitianTriple triple;
  ComplexFrame frame;
  Classification classification;
  Tensor nijenhuis;  // N(a, b, c)
  Connection lc;
  Connection canonical;
  CurvatureTensor riemann;
  CurvatureTensor hermitian;
  Tensor riemann_frame;
  Tensor hermitian_frame;
  Tensor f_real;
  Tensor f_frame;

  static StructureAnalysis compute(HermitianTriple t);
  static StructureAnalysis compute(HermitianTriple t, ComplexFrame frame);
};

struct FlavorFlags {
  GrayFlags gray;
  bool bianchi_defect_zero = false;
};

struct CurvatureReport {
  Rational s;
  Rational s_star;
  Tensor ricci;
  Tensor ricci_star;
  Rational nabla_omega_sq;
  FlavorFlags riemann;
  FlavorFlags hermitian;
  /// Absent when n = 1.
  std::optional<Rational> w4;
  bool hermitian_curvature_zero = false;
  bool f_condition = false;
  bool tosatti_vanishes = false;
  TriState tosatti_nonneg = TriState::Unknown;
};

CurvatureReport curvature_report(const StructureAnalysis& a);

}  // namespace qk
