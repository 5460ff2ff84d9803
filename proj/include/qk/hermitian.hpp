#pragma once

#include <cstddef>
#include <vector>

#include "qk/forms.hpp"
#include "qk/lie_algebra.hpp"
#include "qk/tensor.hpp"

namespace qk {

/// J acting on column vectors: J X_b = sum_a J(a, b) X_a.
class AlmostComplexStructure {
 public:
  /// Throws ShapeMismatch, OddDimension, JSquaredNotMinusIdentity.
  static AlmostComplexStructure create(Tensor j);
  /// J X_i = X_{i+n}, J X_{i+n} = -X_i.
  static AlmostComplexStructure standard(std::size_t dim);

  const Tensor& matrix() const noexcept { return j_; }
  std::size_t dim() const noexcept { return j_.dim(0); }
  Vector apply(std::span<const Scalar> v) const { return matvec(j_, v); }

 private:
  explicit AlmostComplexStructure(Tensor j) : j_(std::move(j)) {}
  Tensor j_;
};

class InvariantMetric {
 public:
  /// Throws ShapeMismatch, MetricNotPositiveDefinite.
  static InvariantMetric create(Tensor g);
  static InvariantMetric identity(std::size_t dim);

  const Tensor& matrix() const noexcept { return g_; }
  const Tensor& inverse() const noexcept { return ginv_; }
  std::size_t dim() const noexcept { return g_.dim(0); }
  /// Bilinear extension g(v, w); no conjugation.
  Scalar operator()(std::span<const Scalar> v, std::span<const Scalar> w) const;

 private:
  InvariantMetric(Tensor g, Tensor ginv) : g_(std::move(g)), ginv_(std::move(ginv)) {}
  Tensor g_;
  Tensor ginv_;
};

/// (g, J, omega) on a Lie algebra with g(J., J.) = g and omega = g(J., .).
class HermitianTriple {
 public:
  /// Throws OddDimension, ShapeMismatch, MetricNotHermitian.
  static HermitianTriple create(LieAlgebra alg, AlmostComplexStructure j, InvariantMetric g);

  const LieAlgebra& algebra() const noexcept { return alg_; }
  const AlmostComplexStructure& j() const noexcept { return j_; }
  const InvariantMetric& g() const noexcept { return g_; }
  /// omega(X_a, X_b) = g(J X_a, X_b).
  const Tensor& omega() const noexcept { return omega_; }
  InvariantForm omega_form() const { return InvariantForm::from_matrix(omega_); }
  std::size_t dim() const noexcept { return alg_.dim(); }
  std::size_t n() const noexcept { return alg_.dim() / 2; }

 private:
  HermitianTriple(LieAlgebra alg, AlmostComplexStructure j, InvariantMetric g, Tensor omega)
      : alg_(std::move(alg)), j_(std::move(j)), g_(std::move(g)), omega_(std::move(omega)) {}
  LieAlgebra alg_;
  AlmostComplexStructure j_;
  InvariantMetric g_;
  Tensor omega_;
};

/// A (1,0)-frame Z_1..Z_n together with the full complex frame
/// E = (Z_1..Z_n, Z̄_1..Z̄_n).
struct ComplexFrame {
  std::size_t n = 0;
  std::vector<Vector> z;
  /// 2n x 2n, column k is E_k.
  Tensor basis;
  /// basis^{-1}; row k is the dual coframe element (zeta_k, then conjugates).
  Tensor inverse;
  /// G(i, j) = g(Z_i, conj Z_j).
  Tensor hermitian_gram;
  Tensor gram_inverse;

  Vector vector(std::size_t k) const { return basis.column(k); }
  /// Coordinates of v in the frame E.
  Vector coordinates(std::span<const Scalar> v) const { return matvec(inverse, v); }
};

/// Validates J Z_i = i Z_i, spanning and a positive definite hermitian gram.
/// Throws ShapeMismatch, Singular, MetricNotPositiveDefinite.
ComplexFrame make_frame(const HermitianTriple& t, std::vector<Vector> z);

/// Greedy frame: for a = 1..2n take X_a unless it lies in the span of the
/// previously chosen X_k, J X_k, and emit Z = X_a - i J X_a.
ComplexFrame standard_10_frame(const HermitianTriple& t);
/// The vectors Z_1..Z_n of the greedy construction, which needs only J.
std::vector<Vector> greedy_10_vectors(const AlmostComplexStructure& j);

/// g(X, Y) = (omega(X, JY) + omega(Y, JX)) / 2. Throws NotTamed when the
/// result is not positive definite.
InvariantMetric metric_from_taming(const AlmostComplexStructure& j, const InvariantForm& omega);

/// N(v, w) = [Jv, Jw] - J[Jv, w] - J[v, Jw] - [v, w].
Vector nijenhuis(const HermitianTriple& t, std::span<const Scalar> v, std::span<const Scalar> w);
/// N(a, b, c) = c-th component of N(X_a, X_b).
Tensor nijenhuis_tensor(const HermitianTriple& t);

struct Classification {
  bool integrable = false;
  bool kahler = false;
  bool almost_kahler = false;
  bool quasi_kahler = false;
};

Classification classify(const HermitianTriple& t);
Classification classify(const HermitianTriple& t, const ComplexFrame& frame);

}  // namespace qk
