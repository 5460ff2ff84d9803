#pragma once

#include <cstddef>
#include <vector>

#include "qk/tensor.hpp"

namespace qk {

/// Determinant by exact Gaussian elimination over Q(i).
Scalar determinant(const Tensor& m);

/// Rank of the span of `rows` (all of equal length).
std::size_t rank(std::vector<Vector> rows);

/// Basis of { x : sum_j rows[i][j] x[j] = 0 for all i }. One vector per free
/// column of the reduced row echelon form, with a 1 in that column.
std::vector<Vector> nullspace(const std::vector<Vector>& rows, std::size_t ncols);

struct LinearSolution {
  bool consistent = false;
  /// A particular solution when consistent.
  Vector x;
  /// When inconsistent: y with y^T A = 0 and y^T b != 0.
  Vector certificate;
};

/// Solves A x = b exactly. A is given by rows.
LinearSolution solve_linear(const std::vector<Vector>& rows, const Vector& b);

/// True when the hermitian matrix `m` is positive definite, decided by its
/// leading principal minors. Throws ShapeMismatch if `m` is not square.
bool is_positive_definite(const Tensor& m);

bool is_hermitian(const Tensor& m);
bool is_symmetric(const Tensor& m);
bool is_antisymmetric(const Tensor& m);

}  // namespace qk
