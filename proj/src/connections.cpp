#include "qk/connections.hpp"

#include "qk/error.hpp"

namespace qk {

namespace {

const Scalar kHalf = Scalar(Rational(1, 2));
const Scalar kQuarter = Scalar(Rational(1, 4));

}  // namespace

std::string to_string(ConnectionFlavor f) {
  return f == ConnectionFlavor::LeviCivita ? "levi_civita" : "canonical";
}

Vector Connection::apply(std::span<const Scalar> v, std::span<const Scalar> w) const {
  const std::size_t d = dim();
  if (v.size() != d || w.size() != d) throw Error(ErrorCode::ShapeMismatch, "connection argument length");
  Vector out(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (v[a].is_zero()) continue;
    for (std::size_t b = 0; b < d; ++b) {
      if (w[b].is_zero()) continue;
      Scalar t = v[a] * w[b];
      for (std::size_t c = 0; c < d; ++c) {
        const Scalar& gc = gamma(a, b, c);
        if (!gc.is_zero()) out[c].add_product(t, gc);
      }
    }
  }
  return out;
}

void IdentityCheck::record(std::vector<std::size_t> idx, Scalar lhs, Scalar rhs) {
  ++checked;
  if (lhs == rhs) return;
  holds = false;
  defects.push_back({std::move(idx), std::move(lhs), std::move(rhs)});
}

Connection levi_civita(const HermitianTriple& t) {
  const std::size_t d = t.dim();
  const Tensor& c = t.algebra().constants();
  const Tensor& g = t.g().matrix();
  // Lowered brackets cl(a, b, u) = g([X_a, X_b], X_u).
  Tensor cl = apply_on_axis(c, 2, g, IndexKind::Real);
  // k(a, b, u) = 2 g(nabla_a X_b, X_u)
  Tensor k({d, d, d});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t u = 0; u < d; ++u) k(a, b, u) = cl(a, b, u) - cl(b, u, a) + cl(u, a, b);
    }
  }
  Tensor gamma = apply_on_axis(k, 2, t.g().inverse(), IndexKind::Real);
  gamma *= kHalf;
  return Connection{std::move(gamma), ConnectionFlavor::LeviCivita, false};
}

Connection canonical_connection(const HermitianTriple& t, const Connection& lc, bool quasi_kahler) {
  const std::size_t d = t.dim();
  const Tensor& j = t.j().matrix();
  // nabla_a (J X_b) = sum_m J(m, b) gamma(a, m, .)
  Tensor jg = apply_on_axis(lc.gamma, 1, j, IndexKind::Real);
  Tensor gamma({d, d, d});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t e = 0; e < d; ++e) {
        Scalar acc = lc.gamma(a, b, e);
        for (std::size_t m = 0; m < d; ++m) {
          const Scalar& je = j(e, m);
          if (!je.is_zero()) acc -= je * jg(a, b, m);
        }
        gamma(a, b, e) = kHalf * acc;
      }
    }
  }
  return Connection{std::move(gamma), ConnectionFlavor::Canonical, quasi_kahler};
}

Connection canonical_connection(const HermitianTriple& t, const Connection& lc) {
  return canonical_connection(t, lc, classify(t).quasi_kahler);
}

Torsion torsion(const Connection& conn, const LieAlgebra& alg, const ComplexFrame& frame) {
  const std::size_t d = alg.dim();
  const std::size_t n = frame.n;
  Torsion out;
  out.full = Tensor({d, d, d});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c) {
        out.full(a, b, c) = conn.gamma(a, b, c) - conn.gamma(b, a, c) - alg.constants()(a, b, c);
      }
    }
  }
  out.mixed = Tensor({n, n, d}, {IndexKind::Holomorphic, IndexKind::AntiHolomorphic, IndexKind::Real});
  for (std::size_t i = 0; i < n; ++i) {
    Vector zi = frame.vector(i);
    for (std::size_t j = 0; j < n; ++j) {
      Vector zj = frame.vector(n + j);
      Vector tv = conn.apply(zi, zj) - conn.apply(zj, zi) - alg.bracket(zi, zj);
      for (std::size_t c = 0; c < d; ++c) out.mixed(i, j, c) = tv[c];
    }
  }
  out.mixed_zero = out.mixed.is_zero();
  return out;
}

Tensor covariant_derivative(const Connection& conn, const Tensor& field, std::span<const Variance> variance) {
  const std::size_t d = conn.dim();
  const std::size_t r = field.rank();
  if (r + 1 > Tensor::kMaxRank) throw Error(ErrorCode::UnsupportedField, "field rank above 3");
  if (variance.size() != r) throw Error(ErrorCode::ShapeMismatch, "one variance per axis required");
  for (std::size_t a = 0; a < r; ++a) {
    if (field.dim(a) != d) throw Error(ErrorCode::ShapeMismatch, "field axis size differs from algebra dimension");
  }
  std::vector<std::size_t> dims(r + 1, d);
  Tensor out(dims);
  std::vector<std::size_t> src(r);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::vector<std::size_t> idx = out.unravel(flat);
    const std::size_t v = idx[0];
    Scalar acc;
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t a = 0; a < r; ++a) src[a] = idx[a + 1];
      for (std::size_t m = 0; m < d; ++m) {
        src[s] = m;
        const Scalar& tv = field.at(src);
        if (tv.is_zero()) continue;
        if (variance[s] == Variance::Contravariant) {
          const Scalar& gm = conn.gamma(v, m, idx[s + 1]);
          if (!gm.is_zero()) acc.add_product(gm, tv);
        } else {
          const Scalar& gm = conn.gamma(v, idx[s + 1], m);
          if (!gm.is_zero()) acc.sub_product(gm, tv);
        }
      }
    }
    out.entries()[flat] = std::move(acc);
  }
  return out;
}

Tensor nabla_j(const Connection& conn, const HermitianTriple& t) {
  const Variance v[] = {Variance::Contravariant, Variance::Covariant};
  return covariant_derivative(conn, t.j().matrix(), v);
}

Tensor nabla_omega(const Connection& conn, const HermitianTriple& t) {
  const Variance v[] = {Variance::Covariant, Variance::Covariant};
  return covariant_derivative(conn, t.omega(), v);
}

Tensor nabla_g(const Connection& conn, const HermitianTriple& t) {
  const Variance v[] = {Variance::Covariant, Variance::Covariant};
  return covariant_derivative(conn, t.g().matrix(), v);
}

Tensor nabla_nijenhuis(const Connection& conn, const HermitianTriple& t) {
  const Variance v[] = {Variance::Covariant, Variance::Covariant, Variance::Contravariant};
  return covariant_derivative(conn, nijenhuis_tensor(t), v);
}

Tensor f_tensor(const Connection& lc, const HermitianTriple& t) {
  return apply_on_axis(nabla_nijenhuis(lc, t), 3, t.g().matrix(), IndexKind::Real);
}

IdentityCheck fundamental_relation_check(const HermitianTriple& t, const Connection& lc) {
  const std::size_t d = t.dim();
  const auto& g = t.g();
  Tensor nj = nabla_j(lc, t);
  InvariantForm domega = exterior_derivative(t.algebra(), t.omega_form());
  IdentityCheck check;
  for (std::size_t x = 0; x < d; ++x) {
    Vector ex = unit_vector(d, x);
    Vector jx = t.j().apply(ex);
    for (std::size_t y = 0; y < d; ++y) {
      Vector ey = unit_vector(d, y);
      Vector jy = t.j().apply(ey);
      // (nabla_x J) X_y as a vector
      Vector njy(d);
      for (std::size_t a = 0; a < d; ++a) njy[a] = nj(x, a, y);
      for (std::size_t z = 0; z < d; ++z) {
        Vector ez = unit_vector(d, z);
        Vector jz = t.j().apply(ez);
        Scalar lhs = Scalar(2) * g(njy, ez);
        Scalar rhs = domega.evaluate({ex, ey, ez}) - domega.evaluate({ex, jy, jz}) +
                     g(nijenhuis(t, ey, ez), jx);
        check.record({x, y, z}, std::move(lhs), std::move(rhs));
      }
    }
  }
  return check;
}

IdentityCheck lemma_mixed_derivative_check(const Connection& lc, const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  IdentityCheck check;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector coords = frame.coordinates(lc.apply(frame.vector(n + i), frame.vector(j)));
      for (std::size_t k = 0; k < n; ++k) check.record({i, j, k}, coords[n + k], Scalar{});
    }
  }
  return check;
}

IdentityCheck lemma_holomorphic_derivative_check(const HermitianTriple& t, const Connection& lc,
                                                 const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  const auto& g = t.g();
  IdentityCheck check;
  for (std::size_t i = 0; i < n; ++i) {
    Vector zi = frame.vector(i);
    for (std::size_t j = 0; j < n; ++j) {
      Vector zj = frame.vector(j);
      Vector nab = lc.apply(zi, zj);
      for (std::size_t k = 0; k < n; ++k) {
        Vector zk = frame.vector(k);
        check.record({i, j, k}, g(nab, zk), kQuarter * g(nijenhuis(t, zj, zk), zi));
      }
    }
  }
  return check;
}

IdentityCheck nabla_omega_nijenhuis_check(const HermitianTriple& t, const Connection& lc) {
  const std::size_t d = t.dim();
  Tensor no = nabla_omega(lc, t);
  IdentityCheck check;
  for (std::size_t x = 0; x < d; ++x) {
    Vector jx = t.j().apply(unit_vector(d, x));
    for (std::size_t y = 0; y < d; ++y) {
      for (std::size_t z = 0; z < d; ++z) {
        Scalar rhs = kHalf * t.g()(nijenhuis(t, unit_vector(d, y), unit_vector(d, z)), jx);
        check.record({x, y, z}, no(x, y, z), std::move(rhs));
      }
    }
  }
  return check;
}

}  // namespace qk
