#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qk/scalar.hpp"

namespace qk {

using Scalar = GaussianRational;
using Vector = std::vector<Scalar>;

/// What an axis is indexed by.
///  Real            - the real basis X_1..X_{2n}
///  Holomorphic     - a (1,0)-frame Z_1..Z_n
///  AntiHolomorphic - the conjugate frame Z̄_1..Z̄_n
///  Frame           - the full complex frame (Z_1..Z_n, Z̄_1..Z̄_n)
enum class IndexKind : std::uint8_t { Real, Holomorphic, AntiHolomorphic, Frame };

std::string to_string(IndexKind kind);

/// Dense tensor of rank 0..4 with exact Gaussian-rational entries, stored
/// row-major (last axis fastest).
class Tensor {
 public:
  static constexpr std::size_t kMaxRank = 4;

  Tensor() : entries_(1) {}
  explicit Tensor(std::vector<std::size_t> dims, std::vector<IndexKind> kinds = {});

  static Tensor scalar(Scalar value);
  static Tensor vector(const Vector& v, IndexKind kind = IndexKind::Real);
  static Tensor identity(std::size_t n);
  static Tensor from_rows(const std::vector<Vector>& rows);
  static Tensor from_columns(const std::vector<Vector>& columns);
  /// Diagonal matrix.
  static Tensor diagonal(const Vector& diag);

  std::size_t rank() const noexcept { return dims_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t axis) const { return dims_.at(axis); }
  const std::vector<IndexKind>& kinds() const noexcept { return kinds_; }
  IndexKind kind(std::size_t axis) const { return kinds_.at(axis); }
  std::size_t size() const noexcept { return entries_.size(); }

  std::span<const Scalar> entries() const noexcept { return entries_; }
  std::span<Scalar> entries() noexcept { return entries_; }

  template <typename... I>
  Scalar& operator()(I... idx) {
    return entries_[offset_of({static_cast<std::size_t>(idx)...})];
  }
  template <typename... I>
  const Scalar& operator()(I... idx) const {
    return entries_[offset_of({static_cast<std::size_t>(idx)...})];
  }

  Scalar& at(std::span<const std::size_t> idx) { return entries_[offset_checked(idx)]; }
  const Scalar& at(std::span<const std::size_t> idx) const { return entries_[offset_checked(idx)]; }

  std::size_t stride(std::size_t axis) const { return strides_.at(axis); }

  /// Row `r` of a rank-2 tensor, column `c` of a rank-2 tensor.
  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  bool is_zero() const noexcept;
  bool is_real() const noexcept;
  bool is_square() const noexcept { return rank() == 2 && dims_[0] == dims_[1]; }

  Tensor with_kinds(std::vector<IndexKind> kinds) const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const Scalar& s);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Scalar& s) { return a *= s; }
  friend Tensor operator*(const Scalar& s, Tensor a) { return a *= s; }

  /// Entry-wise equality of shapes and values; index kinds are metadata and
  /// are not compared.
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.dims_ == b.dims_ && a.entries_ == b.entries_;
  }

  /// Multi-index of the flat position `flat`.
  std::vector<std::size_t> unravel(std::size_t flat) const;

 private:
  std::size_t offset_of(std::initializer_list<std::size_t> idx) const {
    std::size_t off = 0;
    std::size_t axis = 0;
    for (std::size_t i : idx) off += i * strides_[axis++];
    return off;
  }
  std::size_t offset_checked(std::span<const std::size_t> idx) const;

  std::vector<std::size_t> dims_;
  std::vector<IndexKind> kinds_;
  std::vector<std::size_t> strides_;
  std::vector<Scalar> entries_;
};

struct AxisPair {
  std::size_t lhs;
  std::size_t rhs;
};

/// Multilinear contraction of `t` and `u` over the paired axes. With
/// `weights` (one rank-2 tensor per pair) the pair (p, q) is summed as
/// sum_{i,j} t[..i..] W[i,j] u[..j..]; without, as sum_i t[..i..] u[..i..].
/// Free axes of `t` come first, then free axes of `u`, kinds inherited.
/// Throws ShapeMismatch.
Tensor contract(const Tensor& t, const Tensor& u, std::span<const AxisPair> pairs,
                std::span<const Tensor> weights = {});

/// Entrywise conjugate. Holomorphic and antiholomorphic axes swap kinds;
/// Frame axes swap their Z and Z̄ halves.
Tensor conjugate_tensor(const Tensor& t);

/// result[.., i, ..] = sum_a t[.., a, ..] * m(a, i) on `axis`.
Tensor apply_on_axis(const Tensor& t, std::size_t axis, const Tensor& m, IndexKind new_kind);

/// Evaluates a covariant tensor on the columns of `basis` in every axis.
Tensor change_basis_covariant(const Tensor& t, const Tensor& basis, IndexKind new_kind);

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& m);
Vector matvec(const Tensor& m, std::span<const Scalar> v);

/// Inverse of a square matrix by exact Gauss-Jordan. Throws Singular.
Tensor invert_matrix(const Tensor& m);

Vector unit_vector(std::size_t n, std::size_t i);
Vector conj(std::span<const Scalar> v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& s, const Vector& v);
bool is_zero(std::span<const Scalar> v);

}  // namespace qk
