#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "qk/connections.hpp"
#include "qk/hermitian.hpp"
#include "qk/tensor.hpp"

namespace qk {

enum class CurvatureFlavor { Riemann, Hermitian };

std::string to_string(CurvatureFlavor f);

/// R(a, b, c, d) = g(R(X_a, X_b) X_c, X_d) with
/// R(v, w) z = nabla_v nabla_w z - nabla_w nabla_v z - nabla_{[v, w]} z.
struct CurvatureTensor {
  Tensor r;
  CurvatureFlavor flavor = CurvatureFlavor::Riemann;
};

CurvatureTensor curvature(const Connection& conn, const LieAlgebra& alg, const InvariantMetric& g);

/// Components on the complex frame E (Z_1..Z_n, Z̄_1..Z̄_n) in every slot.
Tensor to_frame(const Tensor& covariant, const ComplexFrame& frame);

struct GrayFlags {
  bool g1 = false;
  bool g2 = false;
  bool g3 = false;
};

/// `rf` is a curvature tensor on the complex frame (see to_frame).
/// G3: R(Z̄_i, Z_j, Z_k, Z_l) = 0; G2: G3 and R(Z_i, Z_j, Z_k, Z_l) = 0;
/// G1: R(Z_i, Z_j, E_a, E_b) = 0 for all frame a, b.
GrayFlags gray_check(const Tensor& rf, std::size_t n);

/// B(v, w, z, u) = R(v, w, z, u) + R(w, z, v, u) + R(z, v, w, u).
Tensor first_bianchi_defect(const Tensor& r);

/// Exact antisymmetry in the first and in the last pair of slots.
bool has_curvature_antisymmetries(const Tensor& r);
/// R(v, w, z, u) = R(z, u, v, w).
bool has_pair_symmetry(const Tensor& r);

struct ScalarInvariants {
  Rational s;
  Rational s_star;
  Tensor ricci;
  Tensor ricci_star;
};

/// r(v, w) = sum g^{cd} R(X_c, v, w, X_d), r*(v, w) = sum g^{cd} R(Jv, JX_c, X_d, w),
/// s and s* their g-traces.
ScalarInvariants scalar_invariants(const Tensor& riemann, const HermitianTriple& t);

/// |nabla omega|^2 = (1/2) g^{aa'} g^{bb'} g^{cc'} (nabla_a omega)_{bc} (nabla_a' omega)_{b'c'}.
Rational nabla_omega_norm(const Connection& lc, const HermitianTriple& t);

/// 4 sum (G^{-1})_{ki} (G^{-1})_{lj} R(Z_i, Z_j, Z̄_k, Z̄_l), which equals s* - s
/// on almost Kähler structures.
Scalar complex_frame_trace(const Tensor& riemann_frame, const ComplexFrame& frame);

/// (s - s*) / (16 n (n - 1)). Throws DegenerateDimension for n = 1.
Rational w4_projection(const Rational& s, const Rational& s_star, std::size_t n);

/// R(Z_i, Z_j, Z̄_k, Z̄_l) = F(Z̄_k, Z_i, Z_j, Z̄_l) / 4 for all frame indices.
IdentityCheck f_condition_check(const Tensor& riemann_frame, const Tensor& f_frame, std::size_t n);

/// n(a, b, r): coefficient of Z_r in N(Z̄_a, Z̄_b).
Tensor antiholomorphic_nijenhuis(const HermitianTriple& t, const ComplexFrame& frame);

enum class TriState { True, False, Unknown };
std::string to_string(TriState s);

struct TosattiResult {
  /// T(i, j, k, l) over Holomorphic/AntiHolomorphic/Holomorphic/AntiHolomorphic.
  Tensor tensor;
  bool vanishes = false;
  /// Nonnegativity of Q(v, w) = sum T_{ij̄kl̄} v^i conj(v^j) w^k conj(w^l)
  /// on probe vectors; only a zero tensor proves it, a negative or non-real
  /// probe disproves it.
  TriState nonnegative = TriState::Unknown;
};

/// T_{ij̄kl̄} = sum_m R~(Z_i, Z̄_m, Z_k, Z̄_l) (G^{-1})_{mj} + 4 sum_r N^r_{l̄j̄} conj(N^i_{r̄k̄}).
TosattiResult tosatti_tensor(const Tensor& hermitian_frame, const Tensor& nbar, const ComplexFrame& frame);

enum class CrossCheckStatus { Pass, Skipped, Fail };
std::string to_string(CrossCheckStatus s);

struct GnhfCrossChecks {
  CrossCheckStatus status = CrossCheckStatus::Skipped;
  /// nabla_{Z̄_i} Z_j = 0
  bool mixed_derivatives_zero = false;
  /// nabla_{Z_i} Z_j of type (0,1)
  bool holomorphic_derivatives_antiholomorphic = false;
  /// nabla_{Z_i} nabla_{Z̄_j} Z_k = 0
  bool second_derivatives_zero = false;
  IdentityCheck hermitian_mixed;     // R~_{ij̄kl̄} = R_{ij̄kl̄} - g(nabla_i Z_k, nabla_j̄ Z̄_l)
  IdentityCheck riemann_components;  // the four component formulas for R
  IdentityCheck f_formula;           // F_{īj k l̄} = 4 g([Z_j, Z_k], nabla_ī Z̄_l)
};

GnhfCrossChecks gnhf_cross_checks(const HermitianTriple& t, const Connection& lc, const ComplexFrame& frame,
                                  const Tensor& riemann_frame, const Tensor& hermitian_frame, const Tensor& f_frame);

/// Vanishing pattern of R~ against R on quasi-Kähler structures:
/// R~_{ijkl̄} = R_{ijkl̄} and R~_{īj̄kl} = R~_{ijkl} = R~_{ij̄kl} = 0.
IdentityCheck hermitian_type_check(const Tensor& riemann_frame, const Tensor& hermitian_frame, std::size_t n);

}  // namespace qk
