#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qk/lie_algebra.hpp"
#include "qk/tensor.hpp"

namespace qk {

/// Left-invariant p-form on a d-dimensional algebra, stored by its
/// components on increasing basis index sets (encoded as bit masks) in the
/// dual basis alpha_1..alpha_d. Wedge products use the determinant
/// convention: (alpha_1 ^ alpha_2)(X_1, X_2) = 1.
class InvariantForm {
 public:
  static constexpr std::size_t kMaxDim = 12;

  InvariantForm() = default;
  InvariantForm(std::size_t dim, std::size_t degree);

  static InvariantForm one_form(std::span<const Scalar> coeffs);
  /// The 2-form with phi(X_a, X_b) = m(a, b). Throws NotAntisymmetric.
  static InvariantForm from_matrix(const Tensor& m);
  /// alpha_{i_1} ^ ... ^ alpha_{i_p} (0-based, any order, repeats give zero).
  static InvariantForm basis_form(std::size_t dim, std::vector<std::size_t> indices);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t degree() const noexcept { return degree_; }

  /// Component on the increasing index set `mask`.
  const Scalar& component(std::uint32_t mask) const { return comps_.at(mask); }
  void set_component(std::uint32_t mask, Scalar value);
  /// All masks of the right popcount, in increasing numeric order.
  const std::vector<std::uint32_t>& masks() const noexcept { return masks_; }

  /// phi(X_{i_1}, ..., X_{i_p}) with sign for arbitrary index order.
  Scalar evaluate_basis(std::span<const std::size_t> indices) const;
  /// phi(v_1, ..., v_p) for complex vectors.
  Scalar evaluate(const std::vector<Vector>& vectors) const;

  bool is_zero() const noexcept;
  /// 2-forms only: the antisymmetric matrix phi(X_a, X_b).
  Tensor to_matrix() const;

  InvariantForm& operator+=(const InvariantForm& o);
  InvariantForm& operator-=(const InvariantForm& o);
  InvariantForm& operator*=(const Scalar& s);
  friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
  friend InvariantForm operator*(const Scalar& s, InvariantForm a) { return a *= s; }
  friend bool operator==(const InvariantForm& a, const InvariantForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  std::vector<std::uint32_t> masks_;
  std::vector<Scalar> comps_;  // indexed by mask, size 2^dim
};

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);
InvariantForm conjugate(const InvariantForm& a);

/// Chevalley-Eilenberg differential:
/// d phi(V_0..V_p) = sum_{a<b} (-1)^{a+b} phi([V_a,V_b], V_0, ^a, ^b, .., V_p),
/// so d alpha(X, Y) = -alpha([X, Y]) on 1-forms.
InvariantForm exterior_derivative(const LieAlgebra& alg, const InvariantForm& phi);
/// Same formula for an unvalidated bracket table c(a, b, k).
InvariantForm exterior_derivative(const Tensor& c, const InvariantForm& phi);

/// Splits `phi` into (r,s)-parts relative to the complex frame whose vectors
/// are the columns of `frame` (first n columns of type (1,0), last n their
/// conjugates) with inverse `frame_inverse`. Parts that vanish are omitted.
std::map<std::pair<int, int>, InvariantForm> pq_decompose(const InvariantForm& phi, const Tensor& frame,
                                                          const Tensor& frame_inverse);

/// Pure (r,s)-part of `phi`; zero form if absent.
InvariantForm pq_part(const InvariantForm& phi, const Tensor& frame, const Tensor& frame_inverse, int r, int s);

/// Pulls back the coframe: the 1-form zeta with zeta(v) = frame_inverse row k · v.
InvariantForm coframe_form(const Tensor& frame_inverse, std::size_t k);

}  // namespace qk
