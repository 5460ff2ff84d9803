#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qk/tensor.hpp"

namespace qk {

/// Real Lie algebra with basis X_1..X_d and [X_a, X_b] = sum_k c(a, b, k) X_k.
class LieAlgebra {
 public:
  /// Validates that c is real, antisymmetric in its first two axes and
  /// satisfies Jacobi. Throws ShapeMismatch, NotAntisymmetric, JacobiViolation.
  static LieAlgebra from_structure_constants(Tensor c);
  static LieAlgebra abelian(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const Tensor& constants() const noexcept { return c_; }

  /// Bilinear extension of the bracket to complex vectors.
  Vector bracket(std::span<const Scalar> v, std::span<const Scalar> w) const;
  Vector bracket_basis(std::size_t a, std::size_t b) const;

  bool is_abelian() const noexcept { return c_.is_zero(); }

 private:
  LieAlgebra(std::size_t dim, Tensor c) : dim_(dim), c_(std::move(c)) {}
  std::size_t dim_ = 0;
  Tensor c_;
};

/// Bracket of two vectors under an arbitrary (possibly complex) table c.
Vector bracket_with(const Tensor& c, std::span<const Scalar> v, std::span<const Scalar> w);

struct JacobiDefect {
  std::size_t a, b, d;
  Vector defect;
};

/// Cyclic sums [[X_a,X_b],X_d] + [[X_b,X_d],X_a] + [[X_d,X_a],X_b] over
/// a < b < d; lists every nonzero one. Throws NotAntisymmetric.
std::vector<JacobiDefect> jacobi_check(const Tensor& c);

/// Smallest s with C^{s+1} = 0 for the lower central series C^1 = g,
/// C^{k+1} = [g, C^k]; nullopt when the series stalls at a nonzero ideal.
/// The zero algebra has step 0; a nonzero abelian one step 1.
std::optional<int> nilpotency_step(const LieAlgebra& alg);

/// New basis Y_a = sum_b matrix(b, a) X_b, i.e. columns are the new vectors.
struct FrameChange {
  Tensor matrix;
};

/// Structure constants c' with [Y_a, Y_b] = sum_k c'(a, b, k) Y_k.
/// Throws Singular.
Tensor change_frame(const LieAlgebra& alg, const FrameChange& f);
Tensor change_frame(const Tensor& c, const FrameChange& f);

}  // namespace qk
