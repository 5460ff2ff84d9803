#include "qk/analysis.hpp"

namespace qk {

StructureAnalysis StructureAnalysis::compute(HermitianTriple t) {
  ComplexFrame frame = standard_10_frame(t);
  return compute(std::move(t), std::move(frame));
}

StructureAnalysis StructureAnalysis::compute(HermitianTriple t, ComplexFrame frame) {
  Classification cls = classify(t, frame);
  Tensor n = nijenhuis_tensor(t);
  Connection lc = levi_civita(t);
  Connection can = canonical_connection(t, lc, cls.quasi_kahler);
  CurvatureTensor r = curvature(lc, t.algebra(), t.g());
  CurvatureTensor rt = curvature(can, t.algebra(), t.g());
  Tensor rf = to_frame(r.r, frame);
  Tensor rtf = to_frame(rt.r, frame);
  Tensor f = f_tensor(lc, t);
  Tensor ff = to_frame(f, frame);
  return StructureAnalysis{std::move(t), std::move(frame), cls,         std::move(n),  std::move(lc), std::move(can),
                           std::move(r), std::move(rt),    std::move(rf), std::move(rtf), std::move(f), std::move(ff)};
}

CurvatureReport curvature_report(const StructureAnalysis& a) {
  CurvatureReport rep;
  ScalarInvariants inv = scalar_invariants(a.riemann.r, a.triple);
  rep.s = inv.s;
  rep.s_star = inv.s_star;
  rep.ricci = std::move(inv.ricci);
  rep.ricci_star = std::move(inv.ricci_star);
  rep.nabla_omega_sq = nabla_omega_norm(a.lc, a.triple);
  const std::size_t n = a.frame.n;
  rep.riemann.gray = gray_check(a.riemann_frame, n);
  rep.riemann.bianchi_defect_zero = first_bianchi_defect(a.riemann.r).is_zero();
  rep.hermitian.gray = gray_check(a.hermitian_frame, n);
  rep.hermitian.bianchi_defect_zero = first_bianchi_defect(a.hermitian.r).is_zero();
  if (n >= 2) rep.w4 = w4_projection(rep.s, rep.s_star, n);
  rep.hermitian_curvature_zero = a.hermitian.r.is_zero();
  rep.f_condition = f_condition_check(a.riemann_frame, a.f_frame, n).holds;
  TosattiResult tos = tosatti_tensor(a.hermitian_frame, antiholomorphic_nijenhuis(a.triple, a.frame), a.frame);
  rep.tosatti_vanishes = tos.vanishes;
  rep.tosatti_nonneg = tos.nonnegative;
  return rep;
}

}  // namespace qk
