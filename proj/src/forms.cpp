#include "qk/forms.hpp"

#include <algorithm>
#include <bit>

#include "qk/error.hpp"

namespace qk {

namespace {

std::vector<std::size_t> bits_of(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Laplace expansion along the first row; p is at most a handful.
Scalar small_det(const std::vector<Vector>& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (row == m.size()) return 1;
  Scalar acc;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    const Scalar& x = m[row][c];
    if (!x.is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      Scalar sub = small_det(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      if (!sub.is_zero()) {
        if (sign > 0) {
          acc.add_product(x, sub);
        } else {
          acc -= x * sub;
        }
      }
    }
    sign = -sign;
  }
  return acc;
}

// Determinant of the square submatrix of `m` (rows indexed by vectors) on
// the columns in `cols`.
Scalar minor_det(const std::vector<Vector>& m, std::vector<std::size_t> cols) { return small_det(m, cols, 0); }

std::vector<std::uint32_t> masks_of(std::size_t dim, std::size_t degree) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << dim); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) == degree) out.push_back(m);
  }
  return out;
}

void require_same(const InvariantForm& a, const InvariantForm& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) {
    throw Error(ErrorCode::ShapeMismatch, "forms of different dimension or degree");
  }
}

}  // namespace

InvariantForm::InvariantForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
  if (dim > kMaxDim) throw Error(ErrorCode::ShapeMismatch, "form dimension exceeds 12");
  if (degree > dim) throw Error(ErrorCode::ShapeMismatch, "form degree exceeds dimension");
  masks_ = masks_of(dim, degree);
  comps_.assign(std::size_t{1} << dim, Scalar{});
}

InvariantForm InvariantForm::one_form(std::span<const Scalar> coeffs) {
  InvariantForm f(coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.comps_[1u << i] = coeffs[i];
  return f;
}

InvariantForm InvariantForm::from_matrix(const Tensor& m) {
  if (!m.is_square()) throw Error(ErrorCode::ShapeMismatch, "2-form matrix must be square");
  const std::size_t d = m.dim(0);
  InvariantForm f(d, 2);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      if (!(m(a, b) == -m(b, a))) {
        throw Error(ErrorCode::NotAntisymmetric, "2-form matrix is not antisymmetric",
                    "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
      }
      if (a != b) f.comps_[(1u << a) | (1u << b)] = m(a, b);
    }
  }
  return f;
}

InvariantForm InvariantForm::basis_form(std::size_t dim, std::vector<std::size_t> indices) {
  InvariantForm f(dim, indices.size());
  std::uint32_t mask = 0;
  for (std::size_t i : indices) {
    if (i >= dim) throw Error(ErrorCode::ShapeMismatch, "basis index out of range");
    if (mask & (1u << i)) return f;
    mask |= 1u << i;
  }
  // Sign of the sorting permutation.
  int sign = 1;
  for (std::size_t x = 0; x < indices.size(); ++x) {
    for (std::size_t y = x + 1; y < indices.size(); ++y) {
      if (indices[x] > indices[y]) sign = -sign;
    }
  }
  f.comps_[mask] = sign;
  return f;
}

void InvariantForm::set_component(std::uint32_t mask, Scalar value) {
  if (mask >= comps_.size() || static_cast<std::size_t>(std::popcount(mask)) != degree_) {
    throw Error(ErrorCode::ShapeMismatch, "mask does not match the form degree");
  }
  comps_[mask] = std::move(value);
}

Scalar InvariantForm::evaluate_basis(std::span<const std::size_t> indices) const {
  if (indices.size() != degree_) throw Error(ErrorCode::ShapeMismatch, "wrong number of form arguments");
  std::uint32_t mask = 0;
  int sign = 1;
  for (std::size_t x = 0; x < indices.size(); ++x) {
    if (indices[x] >= dim_) throw Error(ErrorCode::ShapeMismatch, "form argument out of range");
    if (mask & (1u << indices[x])) return Scalar{};
    mask |= 1u << indices[x];
    for (std::size_t y = x + 1; y < indices.size(); ++y) {
      if (indices[x] > indices[y]) sign = -sign;
    }
  }
  const Scalar& c = comps_[mask];
  return sign > 0 ? c : -c;
}

Scalar InvariantForm::evaluate(const std::vector<Vector>& vectors) const {
  if (vectors.size() != degree_) throw Error(ErrorCode::ShapeMismatch, "wrong number of form arguments");
  for (const auto& v : vectors) {
    if (v.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "form argument length");
  }
  Scalar acc;
  for (std::uint32_t m : masks_) {
    const Scalar& c = comps_[m];
    if (c.is_zero()) continue;
    Scalar d = minor_det(vectors, bits_of(m));
    if (!d.is_zero()) acc.add_product(c, d);
  }
  return acc;
}

bool InvariantForm::is_zero() const noexcept {
  return std::all_of(comps_.begin(), comps_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Tensor InvariantForm::to_matrix() const {
  if (degree_ != 2) throw Error(ErrorCode::ShapeMismatch, "to_matrix needs a 2-form");
  Tensor m({dim_, dim_});
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = a + 1; b < dim_; ++b) {
      m(a, b) = comps_[(1u << a) | (1u << b)];
      m(b, a) = -m(a, b);
    }
  }
  return m;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
  require_same(*this, o);
  for (std::uint32_t m : masks_) comps_[m] += o.comps_[m];
  return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o) {
  require_same(*this, o);
  for (std::uint32_t m : masks_) comps_[m] -= o.comps_[m];
  return *this;
}

InvariantForm& InvariantForm::operator*=(const Scalar& s) {
  for (std::uint32_t m : masks_) comps_[m] *= s;
  return *this;
}

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::ShapeMismatch, "wedge of forms on different algebras");
  if (a.degree() + b.degree() > a.dim()) throw Error(ErrorCode::ShapeMismatch, "wedge exceeds the top degree");
  InvariantForm out(a.dim(), a.degree() + b.degree());
  for (std::uint32_t ma : a.masks()) {
    const Scalar& ca = a.component(ma);
    if (ca.is_zero()) continue;
    for (std::uint32_t mb : b.masks()) {
      if (ma & mb) continue;
      const Scalar& cb = b.component(mb);
      if (cb.is_zero()) continue;
      // Sign of merging the increasing lists A then B: count pairs (x in A,
      // y in B) with x > y.
      int inversions = 0;
      for (std::size_t x : bits_of(ma)) inversions += std::popcount(mb & ((1u << x) - 1u));
      Scalar prod = ca * cb;
      Scalar cur = out.component(ma | mb);
      if (inversions % 2 == 0) {
        cur += prod;
      } else {
        cur -= prod;
      }
      out.set_component(ma | mb, std::move(cur));
    }
  }
  return out;
}

InvariantForm conjugate(const InvariantForm& a) {
  InvariantForm out(a.dim(), a.degree());
  for (std::uint32_t m : a.masks()) out.set_component(m, a.component(m).conj());
  return out;
}

InvariantForm exterior_derivative(const LieAlgebra& alg, const InvariantForm& phi) {
  return exterior_derivative(alg.constants(), phi);
}

InvariantForm exterior_derivative(const Tensor& c, const InvariantForm& phi) {
  const std::size_t d = c.dim(0);
  if (phi.dim() != d) throw Error(ErrorCode::ShapeMismatch, "form and algebra dimensions differ");
  const std::size_t p = phi.degree();
  if (p >= d) throw Error(ErrorCode::ShapeMismatch, "exterior derivative of a top-degree form");
  InvariantForm out(d, p + 1);
  if (p == 0) return out;
  std::vector<std::size_t> args(p);
  for (std::uint32_t mask : out.masks()) {
    std::vector<std::size_t> v = bits_of(mask);
    Scalar acc;
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        bool negative = (a + b) % 2 == 1;
        // Remaining arguments in order, with the bracket in front.
        std::size_t pos = 1;
        for (std::size_t t = 0; t < v.size(); ++t) {
          if (t != a && t != b) args[pos++] = v[t];
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Scalar& ck = c(v[a], v[b], k);
          if (ck.is_zero()) continue;
          args[0] = k;
          Scalar val = phi.evaluate_basis(args);
          if (val.is_zero()) continue;
          if (negative) {
            acc -= ck * val;
          } else {
            acc.add_product(ck, val);
          }
        }
      }
    }
    out.set_component(mask, std::move(acc));
  }
  return out;
}

namespace {

// Components phi(E_K) over all frame index sets K.
std::vector<std::pair<std::uint32_t, Scalar>> frame_components(const InvariantForm& phi, const Tensor& frame) {
  const std::size_t d = phi.dim();
  std::vector<Vector> cols(d);
  for (std::size_t k = 0; k < d; ++k) cols[k] = frame.column(k);
  std::vector<std::pair<std::uint32_t, Scalar>> out;
  for (std::uint32_t mask : phi.masks()) {
    std::vector<Vector> args;
    for (std::size_t k : bits_of(mask)) args.push_back(cols[k]);
    Scalar v = phi.evaluate(args);
    if (!v.is_zero()) out.emplace_back(mask, std::move(v));
  }
  return out;
}

InvariantForm assemble(std::size_t d, std::size_t p, const std::vector<std::pair<std::uint32_t, Scalar>>& parts,
                       const Tensor& frame_inverse) {
  InvariantForm out(d, p);
  std::vector<Vector> rows;
  for (const auto& [kmask, value] : parts) {
    rows.clear();
    for (std::size_t k : bits_of(kmask)) rows.push_back(frame_inverse.row(k));
    for (std::uint32_t amask : out.masks()) {
      Scalar det = minor_det(rows, bits_of(amask));
      if (det.is_zero()) continue;
      Scalar cur = out.component(amask);
      cur.add_product(value, det);
      out.set_component(amask, std::move(cur));
    }
  }
  return out;
}

int holomorphic_count(std::uint32_t kmask, std::size_t n) {
  return std::popcount(kmask & ((1u << n) - 1u));
}

}  // namespace

std::map<std::pair<int, int>, InvariantForm> pq_decompose(const InvariantForm& phi, const Tensor& frame,
                                                          const Tensor& frame_inverse) {
  const std::size_t d = phi.dim();
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "type decomposition needs even dimension");
  if (!frame.is_square() || frame.dim(0) != d) throw Error(ErrorCode::ShapeMismatch, "frame size");
  const std::size_t n = d / 2;
  const int p = static_cast<int>(phi.degree());
  auto comps = frame_components(phi, frame);
  std::map<std::pair<int, int>, InvariantForm> out;
  for (int r = 0; r <= p; ++r) {
    std::vector<std::pair<std::uint32_t, Scalar>> parts;
    for (const auto& kv : comps) {
      if (holomorphic_count(kv.first, n) == r) parts.push_back(kv);
    }
    if (parts.empty()) continue;
    out.emplace(std::make_pair(r, p - r), assemble(d, phi.degree(), parts, frame_inverse));
  }
  return out;
}

InvariantForm pq_part(const InvariantForm& phi, const Tensor& frame, const Tensor& frame_inverse, int r, int s) {
  auto parts = pq_decompose(phi, frame, frame_inverse);
  auto it = parts.find({r, s});
  if (it == parts.end()) return InvariantForm(phi.dim(), phi.degree());
  return it->second;
}

InvariantForm coframe_form(const Tensor& frame_inverse, std::size_t k) {
  return InvariantForm::one_form(frame_inverse.row(k));
}

}  // namespace qk
