#include "qk/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "qk/error.hpp"

namespace qk {

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::Real: return "real";
    case IndexKind::Holomorphic: return "(1,0)";
    case IndexKind::AntiHolomorphic: return "(0,1)";
    case IndexKind::Frame: return "frame";
  }
  return "?";
}

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<IndexKind> kinds)
    : dims_(std::move(dims)), kinds_(std::move(kinds)) {
  if (dims_.size() > kMaxRank) {
    throw Error(ErrorCode::ShapeMismatch, "tensor rank " + std::to_string(dims_.size()) + " exceeds 4");
  }
  if (kinds_.empty()) kinds_.assign(dims_.size(), IndexKind::Real);
  if (kinds_.size() != dims_.size()) throw Error(ErrorCode::ShapeMismatch, "one index kind per axis required");
  strides_.assign(dims_.size(), 1);
  std::size_t total = 1;
  for (std::size_t a = dims_.size(); a-- > 0;) {
    strides_[a] = total;
    total *= dims_[a];
  }
  entries_.assign(total, Scalar{});
}

Tensor Tensor::scalar(Scalar value) {
  Tensor t;
  t.entries_[0] = std::move(value);
  return t;
}

Tensor Tensor::vector(const Vector& v, IndexKind kind) {
  Tensor t({v.size()}, {kind});
  std::copy(v.begin(), v.end(), t.entries_.begin());
  return t;
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t(i, i) = 1;
  return t;
}

Tensor Tensor::from_rows(const std::vector<Vector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Tensor t({rows.size(), cols});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) t(r, c) = rows[r][c];
  }
  return t;
}

Tensor Tensor::from_columns(const std::vector<Vector>& columns) {
  return transpose(from_rows(columns));
}

Tensor Tensor::diagonal(const Vector& diag) {
  Tensor t({diag.size(), diag.size()});
  for (std::size_t i = 0; i < diag.size(); ++i) t(i, i) = diag[i];
  return t;
}

std::size_t Tensor::offset_checked(std::span<const std::size_t> idx) const {
  if (idx.size() != dims_.size()) throw Error(ErrorCode::ShapeMismatch, "index arity does not match rank");
  std::size_t off = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] >= dims_[a]) throw Error(ErrorCode::ShapeMismatch, "index out of range");
    off += idx[a] * strides_[a];
  }
  return off;
}

std::vector<std::size_t> Tensor::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(dims_.size());
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    idx[a] = flat / strides_[a];
    flat %= strides_[a];
  }
  return idx;
}

Vector Tensor::row(std::size_t r) const {
  Vector v(dims_.at(1));
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = (*this)(r, c);
  return v;
}

Vector Tensor::column(std::size_t c) const {
  Vector v(dims_.at(0));
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = (*this)(r, c);
  return v;
}

bool Tensor::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Tensor::is_real() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_real(); });
}

Tensor Tensor::with_kinds(std::vector<IndexKind> kinds) const {
  if (kinds.size() != dims_.size()) throw Error(ErrorCode::ShapeMismatch, "one index kind per axis required");
  Tensor t = *this;
  t.kinds_ = std::move(kinds);
  return t;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (dims_ != o.dims_) throw Error(ErrorCode::ShapeMismatch, "tensor sum of different shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (dims_ != o.dims_) throw Error(ErrorCode::ShapeMismatch, "tensor difference of different shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Tensor& Tensor::operator*=(const Scalar& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

namespace {

// Odometer over a list of extents; calls f(index) for every multi-index.
template <typename F>
void for_each_index(const std::vector<std::size_t>& extents, F&& f) {
  std::vector<std::size_t> idx(extents.size(), 0);
  for (std::size_t e : extents) {
    if (e == 0) return;
  }
  while (true) {
    f(idx);
    std::size_t a = extents.size();
    while (a > 0) {
      --a;
      if (++idx[a] < extents[a]) break;
      idx[a] = 0;
      if (a == 0) return;
    }
    if (extents.empty()) return;
  }
}

}  // namespace

Tensor contract(const Tensor& t, const Tensor& u, std::span<const AxisPair> pairs,
                std::span<const Tensor> weights) {
  if (!weights.empty() && weights.size() != pairs.size()) {
    throw Error(ErrorCode::ShapeMismatch, "one weight per axis pair required");
  }
  std::vector<bool> t_paired(t.rank(), false);
  std::vector<bool> u_paired(u.rank(), false);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [a, b] = pairs[p];
    if (a >= t.rank() || b >= u.rank() || t_paired[a] || u_paired[b]) {
      throw Error(ErrorCode::ShapeMismatch, "invalid axis pair");
    }
    t_paired[a] = u_paired[b] = true;
    if (weights.empty()) {
      if (t.dim(a) != u.dim(b)) throw Error(ErrorCode::ShapeMismatch, "paired axes differ in size");
    } else {
      const Tensor& w = weights[p];
      if (w.rank() != 2 || w.dim(0) != t.dim(a) || w.dim(1) != u.dim(b)) {
        throw Error(ErrorCode::ShapeMismatch, "weight shape does not match paired axes");
      }
    }
  }
  std::vector<std::size_t> t_free, u_free, out_dims;
  std::vector<IndexKind> out_kinds;
  for (std::size_t a = 0; a < t.rank(); ++a) {
    if (!t_paired[a]) {
      t_free.push_back(a);
      out_dims.push_back(t.dim(a));
      out_kinds.push_back(t.kind(a));
    }
  }
  for (std::size_t b = 0; b < u.rank(); ++b) {
    if (!u_paired[b]) {
      u_free.push_back(b);
      out_dims.push_back(u.dim(b));
      out_kinds.push_back(u.kind(b));
    }
  }
  Tensor out(out_dims, out_kinds);

  // Summation extents: one index per pair on t's side and, when weighted, one
  // on u's side.
  std::vector<std::size_t> sum_extents;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    sum_extents.push_back(t.dim(pairs[p].lhs));
    if (!weights.empty()) sum_extents.push_back(u.dim(pairs[p].rhs));
  }

  std::vector<std::size_t> ti(t.rank()), ui(u.rank());
  for_each_index(out_dims, [&](const std::vector<std::size_t>& oi) {
    for (std::size_t k = 0; k < t_free.size(); ++k) ti[t_free[k]] = oi[k];
    for (std::size_t k = 0; k < u_free.size(); ++k) ui[u_free[k]] = oi[t_free.size() + k];
    Scalar acc;
    for_each_index(sum_extents, [&](const std::vector<std::size_t>& si) {
      Scalar w = 1;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (weights.empty()) {
          ti[pairs[p].lhs] = ui[pairs[p].rhs] = si[p];
        } else {
          std::size_t i = si[2 * p], j = si[2 * p + 1];
          ti[pairs[p].lhs] = i;
          ui[pairs[p].rhs] = j;
          const Scalar& wij = weights[p](i, j);
          if (wij.is_zero()) return;
          w *= wij;
        }
      }
      const Scalar& a = t.at(ti);
      if (a.is_zero()) return;
      const Scalar& b = u.at(ui);
      if (b.is_zero()) return;
      acc += w * a * b;
    });
    out.at(oi) = std::move(acc);
  });
  return out;
}

Tensor conjugate_tensor(const Tensor& t) {
  std::vector<IndexKind> kinds = t.kinds();
  for (auto& k : kinds) {
    if (k == IndexKind::Holomorphic) {
      k = IndexKind::AntiHolomorphic;
    } else if (k == IndexKind::AntiHolomorphic) {
      k = IndexKind::Holomorphic;
    }
  }
  Tensor out(t.dims(), kinds);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::vector<std::size_t> idx = t.unravel(flat);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (t.kind(a) == IndexKind::Frame) {
        std::size_t half = t.dim(a) / 2;
        idx[a] = idx[a] < half ? idx[a] + half : idx[a] - half;
      }
    }
    out.at(idx) = t.entries()[flat].conj();
  }
  return out;
}

Tensor apply_on_axis(const Tensor& t, std::size_t axis, const Tensor& m, IndexKind new_kind) {
  if (axis >= t.rank() || m.rank() != 2 || m.dim(0) != t.dim(axis)) {
    throw Error(ErrorCode::ShapeMismatch, "apply_on_axis shape mismatch");
  }
  std::vector<std::size_t> dims = t.dims();
  std::vector<IndexKind> kinds = t.kinds();
  dims[axis] = m.dim(1);
  kinds[axis] = new_kind;
  Tensor out(dims, kinds);
  const std::size_t in_stride = t.stride(axis);
  const std::size_t out_stride = out.stride(axis);
  const std::size_t n_in = t.dim(axis), n_out = m.dim(1);
  auto in = t.entries();
  auto res = out.entries();
  // Outer blocks (axes before `axis`) and inner blocks (axes after) are laid
  // out identically in both tensors apart from the extent of `axis`.
  const std::size_t inner = in_stride;
  const std::size_t outer = t.size() / (n_in * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t a = 0; a < n_in; ++a) {
      for (std::size_t k = 0; k < inner; ++k) {
        const Scalar& x = in[o * n_in * inner + a * in_stride + k];
        if (x.is_zero()) continue;
        for (std::size_t i = 0; i < n_out; ++i) {
          const Scalar& w = m(a, i);
          if (w.is_zero()) continue;
          res[o * n_out * inner + i * out_stride + k].add_product(x, w);
        }
      }
    }
  }
  return out;
}

Tensor change_basis_covariant(const Tensor& t, const Tensor& basis, IndexKind new_kind) {
  Tensor out = t;
  for (std::size_t a = 0; a < t.rank(); ++a) out = apply_on_axis(out, a, basis, new_kind);
  return out;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw Error(ErrorCode::ShapeMismatch, "matmul shape mismatch");
  }
  Tensor out({a.dim(0), b.dim(1)});
  for (std::size_t i = 0; i < a.dim(0); ++i) {
    for (std::size_t k = 0; k < a.dim(1); ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.dim(1); ++j) out(i, j).add_product(x, b(k, j));
    }
  }
  return out;
}

Tensor transpose(const Tensor& m) {
  if (m.rank() != 2) throw Error(ErrorCode::ShapeMismatch, "transpose needs a matrix");
  Tensor out({m.dim(1), m.dim(0)}, {m.kind(1), m.kind(0)});
  for (std::size_t i = 0; i < m.dim(0); ++i) {
    for (std::size_t j = 0; j < m.dim(1); ++j) out(j, i) = m(i, j);
  }
  return out;
}

Vector matvec(const Tensor& m, std::span<const Scalar> v) {
  if (m.rank() != 2 || m.dim(1) != v.size()) throw Error(ErrorCode::ShapeMismatch, "matvec shape mismatch");
  Vector out(m.dim(0));
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i].add_product(m(i, j), v[j]);
  }
  return out;
}

Tensor invert_matrix(const Tensor& m) {
  if (!m.is_square()) throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.dim(0);
  std::vector<Vector> a(n, Vector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::Singular, "matrix is singular");
    std::swap(a[col], a[piv]);
    Scalar inv = Scalar(1) / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (std::size_t c = col; c < 2 * n; ++c) {
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
      }
    }
  }
  Tensor out({n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a[i][n + j];
  }
  return out;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

Vector conj(std::span<const Scalar> v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.conj());
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector sum of different lengths");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector difference of different lengths");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector operator*(const Scalar& s, const Vector& v) {
  Vector out = v;
  for (auto& x : out) x *= s;
  return out;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace qk
