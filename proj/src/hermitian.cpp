#include "qk/hermitian.hpp"

#include "qk/error.hpp"
#include "qk/linalg.hpp"

namespace qk {

AlmostComplexStructure AlmostComplexStructure::create(Tensor j) {
  if (!j.is_square()) throw Error(ErrorCode::ShapeMismatch, "J must be a square matrix");
  if (j.dim(0) % 2 != 0) throw Error(ErrorCode::OddDimension, "J on an odd-dimensional space");
  if (!j.is_real()) throw Error(ErrorCode::ShapeMismatch, "J must be real");
  Tensor sq = matmul(j, j);
  const std::size_t d = j.dim(0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (!(sq(a, b) == Scalar(a == b ? -1 : 0))) {
        throw Error(ErrorCode::JSquaredNotMinusIdentity, "J^2 != -I",
                    "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
      }
    }
  }
  return AlmostComplexStructure(std::move(j));
}

AlmostComplexStructure AlmostComplexStructure::standard(std::size_t dim) {
  if (dim % 2 != 0) throw Error(ErrorCode::OddDimension, "J on an odd-dimensional space");
  const std::size_t n = dim / 2;
  Tensor j({dim, dim});
  for (std::size_t i = 0; i < n; ++i) {
    j(i + n, i) = 1;
    j(i, i + n) = -1;
  }
  return AlmostComplexStructure(std::move(j));
}

InvariantMetric InvariantMetric::create(Tensor g) {
  if (!g.is_square()) throw Error(ErrorCode::ShapeMismatch, "metric must be a square matrix");
  if (!g.is_real() || !is_symmetric(g)) throw Error(ErrorCode::MetricNotPositiveDefinite, "metric is not real symmetric");
  if (!is_positive_definite(g)) throw Error(ErrorCode::MetricNotPositiveDefinite, "a leading principal minor is <= 0");
  Tensor ginv = invert_matrix(g);
  return InvariantMetric(std::move(g), std::move(ginv));
}

InvariantMetric InvariantMetric::identity(std::size_t dim) {
  return InvariantMetric(Tensor::identity(dim), Tensor::identity(dim));
}

Scalar InvariantMetric::operator()(std::span<const Scalar> v, std::span<const Scalar> w) const {
  const std::size_t d = dim();
  if (v.size() != d || w.size() != d) throw Error(ErrorCode::ShapeMismatch, "metric argument length");
  Scalar acc;
  for (std::size_t a = 0; a < d; ++a) {
    if (v[a].is_zero()) continue;
    Scalar row;
    for (std::size_t b = 0; b < d; ++b) {
      if (!w[b].is_zero()) row.add_product(g_(a, b), w[b]);
    }
    acc.add_product(v[a], row);
  }
  return acc;
}

HermitianTriple HermitianTriple::create(LieAlgebra alg, AlmostComplexStructure j, InvariantMetric g) {
  const std::size_t d = alg.dim();
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "Hermitian structure on an odd-dimensional algebra");
  if (j.dim() != d || g.dim() != d) throw Error(ErrorCode::ShapeMismatch, "J, g and the algebra differ in dimension");
  const Tensor& jm = j.matrix();
  // g(JX_a, JX_b) = (J^T g J)(a, b)
  Tensor jtgj = matmul(transpose(jm), matmul(g.matrix(), jm));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (!(jtgj(a, b) == g.matrix()(a, b))) {
        throw Error(ErrorCode::MetricNotHermitian, "g(JX, JY) != g(X, Y)",
                    "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
      }
    }
  }
  // omega(X_a, X_b) = g(J X_a, X_b) = (J^T g)(a, b)
  Tensor omega = matmul(transpose(jm), g.matrix());
  return HermitianTriple(std::move(alg), std::move(j), std::move(g), std::move(omega));
}

ComplexFrame make_frame(const HermitianTriple& t, std::vector<Vector> z) {
  const std::size_t d = t.dim();
  const std::size_t n = t.n();
  if (z.size() != n) throw Error(ErrorCode::ShapeMismatch, "a (1,0)-frame needs n vectors");
  const Scalar i = Scalar::i();
  for (const auto& v : z) {
    if (v.size() != d) throw Error(ErrorCode::ShapeMismatch, "frame vector length");
    if (!(t.j().apply(v) == i * v)) throw Error(ErrorCode::ShapeMismatch, "frame vector is not in the +i eigenspace of J");
  }
  ComplexFrame f;
  f.n = n;
  std::vector<Vector> cols = z;
  for (const auto& v : z) cols.push_back(conj(v));
  f.basis = Tensor::from_columns(cols).with_kinds({IndexKind::Real, IndexKind::Frame});
  f.inverse = invert_matrix(f.basis).with_kinds({IndexKind::Frame, IndexKind::Real});
  f.hermitian_gram = Tensor({n, n}, {IndexKind::Holomorphic, IndexKind::AntiHolomorphic});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) f.hermitian_gram(a, b) = t.g()(z[a], cols[n + b]);
  }
  if (!is_positive_definite(f.hermitian_gram)) {
    throw Error(ErrorCode::MetricNotPositiveDefinite, "hermitian gram of the frame is not positive definite");
  }
  f.gram_inverse = invert_matrix(f.hermitian_gram).with_kinds({IndexKind::AntiHolomorphic, IndexKind::Holomorphic});
  f.z = std::move(z);
  return f;
}

std::vector<Vector> greedy_10_vectors(const AlmostComplexStructure& j) {
  const std::size_t d = j.dim();
  const Scalar i = Scalar::i();
  std::vector<Vector> chosen;
  std::vector<Vector> z;
  for (std::size_t a = 0; a < d && z.size() < d / 2; ++a) {
    Vector x = unit_vector(d, a);
    chosen.push_back(x);
    if (rank(chosen) < chosen.size()) {
      chosen.pop_back();
      continue;
    }
    Vector jx = j.apply(x);
    chosen.push_back(jx);
    z.push_back(x - i * jx);
  }
  return z;
}

ComplexFrame standard_10_frame(const HermitianTriple& t) { return make_frame(t, greedy_10_vectors(t.j())); }

InvariantMetric metric_from_taming(const AlmostComplexStructure& j, const InvariantForm& omega) {
  if (omega.degree() != 2 || omega.dim() != j.dim()) throw Error(ErrorCode::ShapeMismatch, "taming form must be a 2-form");
  Tensor om = omega.to_matrix();
  if (!om.is_real()) throw Error(ErrorCode::ShapeMismatch, "taming form must be real");
  if (determinant(om).is_zero()) throw Error(ErrorCode::NotTamed, "omega is degenerate");
  Tensor oj = matmul(om, j.matrix());
  Tensor g = oj + transpose(oj);
  g *= Scalar(Rational(1, 2));
  if (!is_positive_definite(g)) throw Error(ErrorCode::NotTamed, "omega(X, JX) is not positive for every X != 0");
  return InvariantMetric::create(std::move(g));
}

Vector nijenhuis(const HermitianTriple& t, std::span<const Scalar> v, std::span<const Scalar> w) {
  const auto& alg = t.algebra();
  const auto& j = t.j();
  Vector jv = j.apply(v);
  Vector jw = j.apply(w);
  Vector out = alg.bracket(jv, jw);
  out = out - j.apply(alg.bracket(jv, w));
  out = out - j.apply(alg.bracket(v, jw));
  out = out - alg.bracket(v, w);
  return out;
}

Tensor nijenhuis_tensor(const HermitianTriple& t) {
  const std::size_t d = t.dim();
  Tensor n({d, d, d});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      Vector v = nijenhuis(t, unit_vector(d, a), unit_vector(d, b));
      for (std::size_t c = 0; c < d; ++c) {
        n(a, b, c) = v[c];
        n(b, a, c) = -v[c];
      }
    }
  }
  return n;
}

Classification classify(const HermitianTriple& t, const ComplexFrame& frame) {
  Classification c;
  c.integrable = nijenhuis_tensor(t).is_zero();
  InvariantForm domega = exterior_derivative(t.algebra(), t.omega_form());
  c.almost_kahler = domega.is_zero();
  c.quasi_kahler = c.almost_kahler || pq_part(domega, frame.basis, frame.inverse, 1, 2).is_zero();
  c.kahler = c.almost_kahler && c.integrable;
  return c;
}

Classification classify(const HermitianTriple& t) { return classify(t, standard_10_frame(t)); }

}  // namespace qk
