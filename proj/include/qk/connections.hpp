#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qk/hermitian.hpp"
#include "qk/tensor.hpp"

namespace qk {

enum class ConnectionFlavor { LeviCivita, Canonical };

std::string to_string(ConnectionFlavor f);

/// Left-invariant connection: nabla_{X_a} X_b = sum_c gamma(a, b, c) X_c.
struct Connection {
  Tensor gamma;
  ConnectionFlavor flavor = ConnectionFlavor::LeviCivita;
  /// For the canonical flavor: the input was quasi-Kähler, so the formula
  /// is the unique Hermitian connection with Tor^{1,1} = 0.
  bool canonical_certified = false;

  std::size_t dim() const { return gamma.dim(0); }
  /// nabla_v w for constant (possibly complex) vectors.
  Vector apply(std::span<const Scalar> v, std::span<const Scalar> w) const;
};

/// Koszul formula 2 g(nabla_v w, u) = g([v,w],u) - g([w,u],v) + g([u,v],w).
Connection levi_civita(const HermitianTriple& t);

/// nabla~_v w = nabla_v w - J (nabla_v J) w / 2 = (nabla_v w - J nabla_v (J w)) / 2.
/// Certified canonical only when `quasi_kahler` holds.
Connection canonical_connection(const HermitianTriple& t, const Connection& lc, bool quasi_kahler);
Connection canonical_connection(const HermitianTriple& t, const Connection& lc);

struct Torsion {
  /// full(a, b, c): c-th component of T(X_a, X_b) = nabla_a X_b - nabla_b X_a - [X_a, X_b].
  Tensor full;
  /// mixed(i, j, c): c-th component of T(Z_i, Z̄_j).
  Tensor mixed;
  bool mixed_zero = false;
};

Torsion torsion(const Connection& conn, const LieAlgebra& alg, const ComplexFrame& frame);

enum class Variance { Covariant, Contravariant };

/// (nabla_{X_v} T) with the derivative direction as the new leading axis.
/// Components of T are constants, so only connection terms survive.
/// Throws UnsupportedField for fields of rank > 3, ShapeMismatch on size.
Tensor covariant_derivative(const Connection& conn, const Tensor& field, std::span<const Variance> variance);

/// Rank-3 results: (nabla_v J)(a, b) with J as a (1,1)-tensor, and nabla omega.
Tensor nabla_j(const Connection& conn, const HermitianTriple& t);
Tensor nabla_omega(const Connection& conn, const HermitianTriple& t);
/// nabla g, which vanishes for metric connections.
Tensor nabla_g(const Connection& conn, const HermitianTriple& t);
/// (nabla_v N)(a, b, c), N viewed as a vector-valued 2-form.
Tensor nabla_nijenhuis(const Connection& conn, const HermitianTriple& t);

/// F(X, Y, Z, W) = g((nabla_X N)(Y, Z), W) over the real basis.
Tensor f_tensor(const Connection& lc, const HermitianTriple& t);

struct IdentityDefect {
  std::vector<std::size_t> indices;
  Scalar lhs;
  Scalar rhs;
};

struct IdentityCheck {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<IdentityDefect> defects;

  void record(std::vector<std::size_t> idx, Scalar lhs, Scalar rhs);
};

/// 2 g((nabla_X J) Y, Z) = d omega(X, Y, Z) - d omega(X, JY, JZ) + g(N(Y, Z), JX)
/// on all real basis triples.
IdentityCheck fundamental_relation_check(const HermitianTriple& t, const Connection& lc);

/// nabla_{Z̄_i} Z_j has vanishing (0,1)-part for every i, j; holds on
/// quasi-Kähler structures.
IdentityCheck lemma_mixed_derivative_check(const Connection& lc, const ComplexFrame& frame);
/// g(nabla_{Z_i} Z_j, Z_k) = g(N(Z_j, Z_k), Z_i) / 4 for every i, j, k; an
/// identity of almost Kähler structures.
IdentityCheck lemma_holomorphic_derivative_check(const HermitianTriple& t, const Connection& lc,
                                                 const ComplexFrame& frame);
/// (nabla_X omega)(Y, Z) = g(N(Y, Z), JX) / 2 on all real basis triples;
/// the almost Kähler case of the fundamental relation.
IdentityCheck nabla_omega_nijenhuis_check(const HermitianTriple& t, const Connection& lc);

}  // namespace qk
