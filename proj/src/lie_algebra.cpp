#include "qk/lie_algebra.hpp"

#include "qk/error.hpp"
#include "qk/linalg.hpp"

namespace qk {

namespace {

void check_shape(const Tensor& c) {
  if (c.rank() != 3 || c.dim(0) != c.dim(1) || c.dim(1) != c.dim(2)) {
    throw Error(ErrorCode::ShapeMismatch, "structure constants must be a d x d x d tensor");
  }
}

std::string pair_name(std::size_t a, std::size_t b) {
  return "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
}

}  // namespace

Vector bracket_with(const Tensor& c, std::span<const Scalar> v, std::span<const Scalar> w) {
  const std::size_t d = c.dim(0);
  if (v.size() != d || w.size() != d) throw Error(ErrorCode::ShapeMismatch, "bracket argument length");
  Vector out(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (v[a].is_zero()) continue;
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b || w[b].is_zero()) continue;
      Scalar t = v[a] * w[b];
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar& ck = c(a, b, k);
        if (!ck.is_zero()) out[k].add_product(t, ck);
      }
    }
  }
  return out;
}

LieAlgebra LieAlgebra::from_structure_constants(Tensor c) {
  check_shape(c);
  if (!c.is_real()) throw Error(ErrorCode::ShapeMismatch, "structure constants must be real");
  auto bad = jacobi_check(c);
  if (!bad.empty()) {
    const auto& v = bad.front();
    throw Error(ErrorCode::JacobiViolation, "Jacobi identity fails",
                "(" + std::to_string(v.a + 1) + "," + std::to_string(v.b + 1) + "," + std::to_string(v.d + 1) + ")");
  }
  std::size_t d = c.dim(0);
  return LieAlgebra(d, c.with_kinds({IndexKind::Real, IndexKind::Real, IndexKind::Real}));
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) { return LieAlgebra(dim, Tensor({dim, dim, dim})); }

Vector LieAlgebra::bracket(std::span<const Scalar> v, std::span<const Scalar> w) const {
  return bracket_with(c_, v, w);
}

Vector LieAlgebra::bracket_basis(std::size_t a, std::size_t b) const {
  Vector out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) out[k] = c_(a, b, k);
  return out;
}

std::vector<JacobiDefect> jacobi_check(const Tensor& c) {
  check_shape(c);
  const std::size_t d = c.dim(0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      for (std::size_t k = 0; k < d; ++k) {
        if (!(c(a, b, k) == -c(b, a, k))) {
          throw Error(ErrorCode::NotAntisymmetric, "c(a,b,k) != -c(b,a,k)", pair_name(a, b));
        }
      }
    }
  }
  std::vector<JacobiDefect> out;
  auto inner = [&](std::size_t x, std::size_t y, std::size_t z, Vector& acc) {
    // [[X_x, X_y], X_z] = sum_m c(x,y,m) c(m,z,k)
    for (std::size_t m = 0; m < d; ++m) {
      const Scalar& cm = c(x, y, m);
      if (cm.is_zero()) continue;
      for (std::size_t k = 0; k < d; ++k) acc[k].add_product(cm, c(m, z, k));
    }
  };
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      for (std::size_t e = b + 1; e < d; ++e) {
        Vector acc(d);
        inner(a, b, e, acc);
        inner(b, e, a, acc);
        inner(e, a, b, acc);
        if (!is_zero(acc)) out.push_back({a, b, e, std::move(acc)});
      }
    }
  }
  return out;
}

std::optional<int> nilpotency_step(const LieAlgebra& alg) {
  const std::size_t d = alg.dim();
  if (d == 0) return 0;
  std::vector<Vector> current;
  for (std::size_t a = 0; a < d; ++a) current.push_back(unit_vector(d, a));
  std::size_t current_rank = d;
  int step = 0;
  while (current_rank > 0) {
    ++step;
    std::vector<Vector> next;
    for (std::size_t a = 0; a < d; ++a) {
      Vector xa = unit_vector(d, a);
      for (const auto& v : current) {
        Vector w = alg.bracket(xa, v);
        if (!is_zero(w)) next.push_back(std::move(w));
      }
    }
    std::size_t next_rank = rank(next);
    if (next_rank == current_rank) return std::nullopt;
    // Keep a basis of the new ideal to bound the work in the next round.
    std::vector<Vector> basis;
    for (auto& v : next) {
      basis.push_back(v);
      if (rank(basis) < basis.size()) basis.pop_back();
      if (basis.size() == next_rank) break;
    }
    current = std::move(basis);
    current_rank = next_rank;
  }
  return step;
}

Tensor change_frame(const Tensor& c, const FrameChange& f) {
  check_shape(c);
  const std::size_t d = c.dim(0);
  if (!f.matrix.is_square() || f.matrix.dim(0) != d) {
    throw Error(ErrorCode::ShapeMismatch, "frame change must be a d x d matrix");
  }
  Tensor inv = invert_matrix(f.matrix);
  std::vector<Vector> cols(d);
  for (std::size_t a = 0; a < d; ++a) cols[a] = f.matrix.column(a);
  Tensor out({d, d, d});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      Vector br = matvec(inv, bracket_with(c, cols[a], cols[b]));
      for (std::size_t k = 0; k < d; ++k) {
        out(a, b, k) = br[k];
        out(b, a, k) = -br[k];
      }
    }
  }
  return out;
}

Tensor change_frame(const LieAlgebra& alg, const FrameChange& f) { return change_frame(alg.constants(), f); }

}  // namespace qk
