#include "qk/curvature.hpp"

#include "qk/error.hpp"

namespace qk {

std::string to_string(CurvatureFlavor f) { return f == CurvatureFlavor::Riemann ? "riemann" : "hermitian"; }

std::string to_string(TriState s) {
  switch (s) {
    case TriState::True: return "true";
    case TriState::False: return "false";
    case TriState::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(CrossCheckStatus s) {
  switch (s) {
    case CrossCheckStatus::Pass: return "pass";
    case CrossCheckStatus::Skipped: return "skipped";
    case CrossCheckStatus::Fail: return "fail";
  }
  return "skipped";
}

CurvatureTensor curvature(const Connection& conn, const LieAlgebra& alg, const InvariantMetric& g) {
  const std::size_t d = alg.dim();
  const Tensor& gm = conn.gamma;
  const Tensor& c = alg.constants();
  // gg(a, b, c, e) = e-th component of nabla_a nabla_b X_c = sum_m gamma(b,c,m) gamma(a,m,e)
  Tensor gg({d, d, d, d});
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t cc = 0; cc < d; ++cc) {
      for (std::size_t m = 0; m < d; ++m) {
        const Scalar& x = gm(b, cc, m);
        if (x.is_zero()) continue;
        for (std::size_t a = 0; a < d; ++a) {
          for (std::size_t e = 0; e < d; ++e) {
            const Scalar& y = gm(a, m, e);
            if (!y.is_zero()) gg(a, b, cc, e).add_product(x, y);
          }
        }
      }
    }
  }
  Tensor v({d, d, d, d});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t cc = 0; cc < d; ++cc) {
        for (std::size_t e = 0; e < d; ++e) {
          Scalar acc = gg(a, b, cc, e) - gg(b, a, cc, e);
          for (std::size_t k = 0; k < d; ++k) {
            const Scalar& ck = c(a, b, k);
            if (!ck.is_zero()) acc.sub_product(ck, gm(k, cc, e));
          }
          v(a, b, cc, e) = std::move(acc);
        }
      }
    }
  }
  CurvatureTensor out;
  out.r = apply_on_axis(v, 3, g.matrix(), IndexKind::Real);
  out.flavor = conn.flavor == ConnectionFlavor::LeviCivita ? CurvatureFlavor::Riemann : CurvatureFlavor::Hermitian;
  return out;
}

Tensor to_frame(const Tensor& covariant, const ComplexFrame& frame) {
  if (!covariant.is_real() || covariant.rank() == 0) return change_basis_covariant(covariant, frame.basis, IndexKind::Frame);
  // Real tensor: T(Ē_a, ...) = conj T(E_a, ...) with the bar swapping the
  // halves, so the first axis only needs the Z columns.
  const std::size_t n = frame.n;
  const std::size_t d = 2 * n;
  Tensor half_basis({d, n});
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t k = 0; k < n; ++k) half_basis(a, k) = frame.basis(a, k);
  }
  Tensor half = apply_on_axis(covariant, 0, half_basis, IndexKind::Frame);
  for (std::size_t ax = 1; ax < covariant.rank(); ++ax) half = apply_on_axis(half, ax, frame.basis, IndexKind::Frame);
  std::vector<std::size_t> dims(covariant.rank(), d);
  Tensor out(dims, std::vector<IndexKind>(covariant.rank(), IndexKind::Frame));
  auto src = half.entries();
  auto dst = out.entries();
  for (std::size_t flat = 0; flat < half.size(); ++flat) {
    if (src[flat].is_zero()) continue;
    dst[flat] = src[flat];
    std::vector<std::size_t> idx = half.unravel(flat);
    for (auto& i : idx) i = i < n ? i + n : i - n;
    out.at(idx) = src[flat].conj();
  }
  return out;
}

GrayFlags gray_check(const Tensor& rf, std::size_t n) {
  const std::size_t d = 2 * n;
  GrayFlags f;
  f.g3 = true;
  f.g2 = true;
  f.g1 = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          if (!rf(n + i, j, k, l).is_zero()) f.g3 = false;
          if (!rf(i, j, k, l).is_zero()) f.g2 = false;
        }
      }
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          if (!rf(i, j, a, b).is_zero()) f.g1 = false;
        }
      }
    }
  }
  f.g2 = f.g2 && f.g3;
  f.g1 = f.g1 && f.g2;
  return f;
}

Tensor first_bianchi_defect(const Tensor& r) {
  Tensor b(r.dims(), r.kinds());
  const std::size_t d = r.dim(0);
  for (std::size_t v = 0; v < d; ++v) {
    for (std::size_t w = 0; w < d; ++w) {
      for (std::size_t z = 0; z < d; ++z) {
        for (std::size_t u = 0; u < d; ++u) b(v, w, z, u) = r(v, w, z, u) + r(w, z, v, u) + r(z, v, w, u);
      }
    }
  }
  return b;
}

bool has_curvature_antisymmetries(const Tensor& r) {
  const std::size_t d = r.dim(0);
  for (std::size_t v = 0; v < d; ++v) {
    for (std::size_t w = 0; w < d; ++w) {
      for (std::size_t z = 0; z < d; ++z) {
        for (std::size_t u = 0; u < d; ++u) {
          const Scalar& x = r(v, w, z, u);
          if (!(x == -r(w, v, z, u)) || !(x == -r(v, w, u, z))) return false;
        }
      }
    }
  }
  return true;
}

bool has_pair_symmetry(const Tensor& r) {
  const std::size_t d = r.dim(0);
  for (std::size_t v = 0; v < d; ++v) {
    for (std::size_t w = 0; w < d; ++w) {
      for (std::size_t z = 0; z < d; ++z) {
        for (std::size_t u = 0; u < d; ++u) {
          if (!(r(v, w, z, u) == r(z, u, v, w))) return false;
        }
      }
    }
  }
  return true;
}

namespace {

Rational trace_with(const Tensor& ginv, const Tensor& m) {
  Scalar s;
  const std::size_t d = m.dim(0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) s.add_product(ginv(a, b), m(a, b));
  }
  if (!s.is_real()) throw Error(ErrorCode::ShapeMismatch, "trace of a real tensor is not real");
  return s.re();
}

}  // namespace

ScalarInvariants scalar_invariants(const Tensor& riemann, const HermitianTriple& t) {
  const std::size_t d = t.dim();
  const Tensor& ginv = t.g().inverse();
  const Tensor& j = t.j().matrix();
  ScalarInvariants out;
  out.ricci = Tensor({d, d});
  for (std::size_t v = 0; v < d; ++v) {
    for (std::size_t w = 0; w < d; ++w) {
      Scalar acc;
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t e = 0; e < d; ++e) {
          if (!ginv(c, e).is_zero()) acc.add_product(ginv(c, e), riemann(c, v, w, e));
        }
      }
      out.ricci(v, w) = std::move(acc);
    }
  }
  // jj(v, c, e, w) = R(J X_v, J X_c, X_e, X_w)
  Tensor jj = apply_on_axis(apply_on_axis(riemann, 0, j, IndexKind::Real), 1, j, IndexKind::Real);
  out.ricci_star = Tensor({d, d});
  for (std::size_t v = 0; v < d; ++v) {
    for (std::size_t w = 0; w < d; ++w) {
      Scalar acc;
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t e = 0; e < d; ++e) {
          if (!ginv(c, e).is_zero()) acc.add_product(ginv(c, e), jj(v, c, e, w));
        }
      }
      out.ricci_star(v, w) = std::move(acc);
    }
  }
  out.s = trace_with(ginv, out.ricci);
  out.s_star = trace_with(ginv, out.ricci_star);
  return out;
}

Rational nabla_omega_norm(const Connection& lc, const HermitianTriple& t) {
  const Tensor& ginv = t.g().inverse();
  Tensor no = nabla_omega(lc, t);
  // Raise all three indices, then pair entrywise.
  Tensor raised = no;
  for (std::size_t axis = 0; axis < 3; ++axis) raised = apply_on_axis(raised, axis, ginv, IndexKind::Real);
  Scalar acc;
  for (std::size_t i = 0; i < no.size(); ++i) acc.add_product(no.entries()[i], raised.entries()[i]);
  if (!acc.is_real()) throw Error(ErrorCode::ShapeMismatch, "norm of a real tensor is not real");
  return acc.re() * Rational(1, 2);
}

Scalar complex_frame_trace(const Tensor& riemann_frame, const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  const Tensor& m = frame.gram_inverse;
  Scalar acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (m(k, i).is_zero()) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (m(l, j).is_zero()) continue;
          const Scalar& r = riemann_frame(i, j, n + k, n + l);
          if (!r.is_zero()) acc += m(k, i) * m(l, j) * r;
        }
      }
    }
  }
  return Scalar(4) * acc;
}

Rational w4_projection(const Rational& s, const Rational& s_star, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DegenerateDimension, "the W4 projection needs n >= 2");
  const long nn = static_cast<long>(n);
  return (s - s_star) / Rational(16 * nn * (nn - 1));
}

IdentityCheck f_condition_check(const Tensor& riemann_frame, const Tensor& f_frame, std::size_t n) {
  IdentityCheck check;
  const Scalar quarter = Scalar(Rational(1, 4));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          check.record({i, j, k, l}, riemann_frame(i, j, n + k, n + l), quarter * f_frame(n + k, i, j, n + l));
        }
      }
    }
  }
  return check;
}

Tensor antiholomorphic_nijenhuis(const HermitianTriple& t, const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  Tensor out({n, n, n}, {IndexKind::AntiHolomorphic, IndexKind::AntiHolomorphic, IndexKind::Holomorphic});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Vector coords = frame.coordinates(nijenhuis(t, frame.vector(n + a), frame.vector(n + b)));
      for (std::size_t r = 0; r < n; ++r) out(a, b, r) = coords[r];
    }
  }
  return out;
}

TosattiResult tosatti_tensor(const Tensor& hermitian_frame, const Tensor& nbar, const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  const Tensor& m = frame.gram_inverse;
  TosattiResult out;
  out.tensor = Tensor({n, n, n, n}, {IndexKind::Holomorphic, IndexKind::AntiHolomorphic, IndexKind::Holomorphic,
                                     IndexKind::AntiHolomorphic});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Scalar acc;
          for (std::size_t q = 0; q < n; ++q) acc.add_product(hermitian_frame(i, n + q, k, n + l), m(q, j));
          Scalar nn;
          for (std::size_t r = 0; r < n; ++r) nn.add_product(nbar(l, j, r), nbar(r, k, i).conj());
          acc += Scalar(4) * nn;
          out.tensor(i, j, k, l) = std::move(acc);
        }
      }
    }
  }
  out.vanishes = out.tensor.is_zero();
  if (out.vanishes) {
    out.nonnegative = TriState::True;
    return out;
  }
  // Probe vectors: e_a, e_a + e_b, e_a + i e_b.
  std::vector<Vector> probes;
  for (std::size_t a = 0; a < n; ++a) {
    probes.push_back(unit_vector(n, a));
    for (std::size_t b = a + 1; b < n; ++b) {
      probes.push_back(unit_vector(n, a) + unit_vector(n, b));
      probes.push_back(unit_vector(n, a) + Scalar::i() * unit_vector(n, b));
    }
  }
  out.nonnegative = TriState::Unknown;
  for (const auto& v : probes) {
    for (const auto& w : probes) {
      Scalar q;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
              const Scalar& x = out.tensor(i, j, k, l);
              if (!x.is_zero()) q += x * v[i] * v[j].conj() * w[k] * w[l].conj();
            }
          }
        }
      }
      if (!q.is_real() || q.re().sign() < 0) {
        out.nonnegative = TriState::False;
        return out;
      }
    }
  }
  return out;
}

namespace {

bool is_antiholomorphic(const ComplexFrame& frame, std::span<const Scalar> v) {
  Vector c = frame.coordinates(v);
  for (std::size_t k = 0; k < frame.n; ++k) {
    if (!c[k].is_zero()) return false;
  }
  return true;
}

}  // namespace

GnhfCrossChecks gnhf_cross_checks(const HermitianTriple& t, const Connection& lc, const ComplexFrame& frame,
                                  const Tensor& riemann_frame, const Tensor& hermitian_frame, const Tensor& f_frame) {
  const std::size_t n = frame.n;
  const auto& g = t.g();
  const auto& alg = t.algebra();
  GnhfCrossChecks out;
  std::vector<Vector> e(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) e[k] = frame.vector(k);

  out.mixed_derivatives_zero = true;
  out.holomorphic_derivatives_antiholomorphic = true;
  out.second_derivatives_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector mixed = lc.apply(e[n + i], e[j]);
      if (!is_zero(mixed)) out.mixed_derivatives_zero = false;
      if (!is_antiholomorphic(frame, lc.apply(e[i], e[j]))) out.holomorphic_derivatives_antiholomorphic = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_zero(lc.apply(e[i], lc.apply(e[n + j], e[k])))) out.second_derivatives_zero = false;
      }
    }
  }
  if (!(out.mixed_derivatives_zero && out.holomorphic_derivatives_antiholomorphic && out.second_derivatives_zero)) {
    out.status = CrossCheckStatus::Skipped;
    return out;
  }

  auto nab = [&](const Vector& v, const Vector& w) { return lc.apply(v, w); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const Vector &zi = e[i], &zj = e[j], &zk = e[k], &zl = e[l];
          const Vector &zbi = e[n + i], &zbj = e[n + j], &zbl = e[n + l];
          out.hermitian_mixed.record({i, j, k, l}, hermitian_frame(i, n + j, k, n + l),
                                     riemann_frame(i, n + j, k, n + l) - g(nab(zi, zk), nab(zbj, zbl)));

          out.riemann_components.record({0, i, j, k, l}, riemann_frame(i, n + j, k, n + l),
                                        -g(nab(zbj, nab(zi, zk)), zbl));
          out.riemann_components.record({1, i, j, k, l}, riemann_frame(n + i, j, k, l), g(nab(zbi, nab(zj, zk)), zl));
          out.riemann_components.record({2, i, j, k, l}, riemann_frame(n + i, n + j, k, l),
                                        -g(nab(alg.bracket(zbi, zbj), zk), zl));
          out.riemann_components.record({3, i, j, k, l}, riemann_frame(i, j, k, l),
                                        g(nab(zi, nab(zj, zk)), zl) - g(nab(zj, nab(zi, zk)), zl));

          out.f_formula.record({i, j, k, l}, f_frame(n + i, j, k, n + l),
                               Scalar(4) * g(alg.bracket(zj, zk), nab(zbi, zbl)));
        }
      }
    }
  }
  bool ok = out.hermitian_mixed.holds && out.riemann_components.holds && out.f_formula.holds;
  out.status = ok ? CrossCheckStatus::Pass : CrossCheckStatus::Fail;
  return out;
}

IdentityCheck hermitian_type_check(const Tensor& riemann_frame, const Tensor& hermitian_frame, std::size_t n) {
  IdentityCheck check;
  const Tensor& r = riemann_frame;
  const Tensor& h = hermitian_frame;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          check.record({0, i, j, k, l}, h(i, j, k, n + l), r(i, j, k, n + l));
          check.record({1, i, j, k, l}, h(n + i, n + j, k, l), Scalar{});
          check.record({2, i, j, k, l}, h(i, j, k, l), Scalar{});
          check.record({3, i, j, k, l}, h(i, n + j, k, l), Scalar{});
        }
      }
    }
  }
  return check;
}

}  // namespace qk
