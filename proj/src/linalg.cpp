#include "qk/linalg.hpp"

#include <utility>

#include "qk/error.hpp"

namespace qk {

namespace {

struct Echelon {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;  // pivot column of row r
};

// Reduced row echelon form; `tracked` rows (if non-empty) undergo the same row
// operations, which lets callers recover left combinations.
Echelon reduce(std::vector<Vector> rows, std::size_t ncols, std::vector<Vector>* tracked = nullptr) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    if (tracked) std::swap((*tracked)[r], (*tracked)[p]);
    Scalar inv = Scalar(1) / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    if (tracked) {
      for (auto& x : (*tracked)[r]) x *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Scalar f = rows[i][col];
      for (std::size_t c = col; c < ncols; ++c) {
        if (!rows[r][c].is_zero()) rows[i][c] -= f * rows[r][c];
      }
      if (tracked) {
        auto& ti = (*tracked)[i];
        const auto& tr = (*tracked)[r];
        for (std::size_t c = 0; c < ti.size(); ++c) {
          if (!tr[c].is_zero()) ti[c] -= f * tr[c];
        }
      }
    }
    e.pivots.push_back(col);
    ++r;
  }
  e.rows = std::move(rows);
  return e;
}

}  // namespace

Scalar determinant(const Tensor& m) {
  if (!m.is_square()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.dim(0);
  std::vector<Vector> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = m.row(i);
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col].is_zero()) ++p;
    if (p == n) return Scalar{};
    if (p != col) {
      std::swap(a[p], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Scalar inv = Scalar(1) / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) {
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
      }
    }
  }
  return det;
}

std::size_t rank(std::vector<Vector> rows) {
  if (rows.empty()) return 0;
  std::size_t ncols = rows.front().size();
  return reduce(std::move(rows), ncols).pivots.size();
}

std::vector<Vector> nullspace(const std::vector<Vector>& rows, std::size_t ncols) {
  Echelon e = reduce(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(ncols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve_linear(const std::vector<Vector>& rows, const Vector& b) {
  if (rows.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length differs from row count");
  const std::size_t m = rows.size();
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  std::vector<Vector> aug(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != ncols) throw Error(ErrorCode::ShapeMismatch, "ragged system");
    aug[i] = rows[i];
    aug[i].push_back(b[i]);
  }
  std::vector<Vector> tracked(m, Vector(m));
  for (std::size_t i = 0; i < m; ++i) tracked[i][i] = 1;
  Echelon e = reduce(std::move(aug), ncols + 1, &tracked);

  LinearSolution sol;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == ncols) {
      // Row r reads 0 = 1 after scaling; the tracked combination certifies it.
      sol.certificate = tracked[r];
      return sol;
    }
  }
  sol.consistent = true;
  sol.x.assign(ncols, Scalar{});
  for (std::size_t r = 0; r < e.pivots.size(); ++r) sol.x[e.pivots[r]] = e.rows[r][ncols];
  return sol;
}

bool is_hermitian(const Tensor& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.dim(0); ++i) {
    for (std::size_t j = i; j < m.dim(0); ++j) {
      if (!(m(i, j) == m(j, i).conj())) return false;
    }
  }
  return true;
}

bool is_symmetric(const Tensor& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.dim(0); ++i) {
    for (std::size_t j = i + 1; j < m.dim(0); ++j) {
      if (!(m(i, j) == m(j, i))) return false;
    }
  }
  return true;
}

bool is_antisymmetric(const Tensor& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.dim(0); ++i) {
    for (std::size_t j = i; j < m.dim(0); ++j) {
      if (!(m(i, j) == -m(j, i))) return false;
    }
  }
  return true;
}

bool is_positive_definite(const Tensor& m) {
  if (!m.is_square()) throw Error(ErrorCode::ShapeMismatch, "positivity test on a non-square matrix");
  if (!is_hermitian(m)) return false;
  const std::size_t n = m.dim(0);
  for (std::size_t k = 1; k <= n; ++k) {
    Tensor minor({k, k});
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
    }
    Scalar d = determinant(minor);
    if (!d.is_real() || d.re().sign() <= 0) return false;
  }
  return true;
}

}  // namespace qk
