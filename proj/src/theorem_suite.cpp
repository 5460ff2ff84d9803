#include "qk/theorem_suite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <sstream>
#include <mutex>
#include <thread>

#include "qk/error.hpp"
#include "qk/linalg.hpp"

namespace qk {

namespace {

std::string index_list(std::span<const std::size_t> idx) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k] + 1;
  os << ")";
  return os.str();
}

bool rtilde_bianchi(const StructureAnalysis& a) { return first_bianchi_defect(a.hermitian.r).is_zero(); }

}  // namespace

TheoremVerdict theorem_main(const StructureAnalysis& a) {
  if (!a.classification.quasi_kahler) throw Error(ErrorCode::NotQuasiKahler, "theorem_main needs a quasi-Kähler structure");
  TheoremVerdict v;
  v.id = "theorem_main";
  const bool bianchi = rtilde_bianchi(a);
  const bool g3 = gray_check(a.riemann_frame, a.frame.n).g3;
  IdentityCheck fc = f_condition_check(a.riemann_frame, a.f_frame, a.frame.n);
  v.facts = {{"bianchi_rtilde", bianchi}, {"g3", g3}, {"f_condition", fc.holds}};
  v.hypotheses_met = true;
  v.conclusion_holds = bianchi == (g3 && fc.holds);
  if (!v.conclusion_holds) {
    v.witness = std::string("Bianchi(R~) = ") + (bianchi ? "0" : "nonzero") + " but G3 = " + (g3 ? "true" : "false") +
                ", F-condition = " + (fc.holds ? "true" : "false");
  }
  return v;
}

TheoremVerdict corollary_almost_kahler(const StructureAnalysis& a) {
  if (!a.classification.almost_kahler) {
    throw Error(ErrorCode::NotAlmostKahler, "corollary_almost_kahler needs an almost Kähler structure");
  }
  TheoremVerdict v;
  v.id = "corollary_almost_kahler";
  v.hypotheses_met = rtilde_bianchi(a);
  v.conclusion_holds = a.nijenhuis.is_zero();
  v.facts = {{"bianchi_rtilde", v.hypotheses_met}, {"integrable", v.conclusion_holds}};
  if (v.counterexample()) v.witness = "Bianchi(R~) = 0 on an almost Kähler structure with N != 0";
  return v;
}

FramePattern rflat_frame_pattern(const LieAlgebra& alg, const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  FramePattern p;
  p.mixed_brackets_zero = true;
  p.holomorphic_brackets_antiholomorphic = true;
  for (std::size_t i = 0; i < n; ++i) {
    Vector zi = frame.vector(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_zero(alg.bracket(zi, frame.vector(n + j)))) p.mixed_brackets_zero = false;
      if (j <= i) continue;
      Vector c = frame.coordinates(alg.bracket(zi, frame.vector(j)));
      for (std::size_t k = 0; k < n; ++k) {
        if (!c[k].is_zero()) p.holomorphic_brackets_antiholomorphic = false;
      }
    }
  }
  return p;
}

Tensor bracket_coefficients(const LieAlgebra& alg, const ComplexFrame& frame) {
  const std::size_t n = frame.n;
  Tensor a({n, n, n}, {IndexKind::Holomorphic, IndexKind::Holomorphic, IndexKind::AntiHolomorphic});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector c = frame.coordinates(alg.bracket(frame.vector(i), frame.vector(j)));
      for (std::size_t k = 0; k < n; ++k) a(i, j, k) = c[n + k];
    }
  }
  return a;
}

FrameChange heisenberg_normalize(const LieAlgebra& alg, const AlmostComplexStructure& j) {
  if (alg.dim() != 6 || j.dim() != 6) throw Error(ErrorCode::WrongDimension, "heisenberg_normalize needs dimension 6");
  const std::size_t n = 3;
  std::vector<Vector> z = greedy_10_vectors(j);
  std::vector<Vector> cols = z;
  for (const auto& v : z) cols.push_back(conj(v));
  Tensor p = Tensor::from_columns(cols);
  Tensor ce = change_frame(alg, FrameChange{p});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      for (std::size_t k = 0; k < 2 * n; ++k) {
        const bool mixed = b >= n;
        const bool holomorphic_part = b < n && k < n;
        if ((mixed || holomorphic_part) && !ce(a, b, k).is_zero()) {
          throw Error(ErrorCode::NotApplicable, "the frame brackets do not have the flat pattern");
        }
      }
    }
  }
  bool any = false;
  for (std::size_t a = 0; a < n && !any; ++a) {
    for (std::size_t b = 0; b < n && !any; ++b) {
      for (std::size_t k = 0; k < n; ++k) any = any || !ce(a, b, n + k).is_zero();
    }
  }
  if (!any) throw Error(ErrorCode::NotApplicable, "J is integrable: no nonzero bracket [Z_i, Z_j]");

  // Pivot: smallest (i, j) whose bracket has a nonzero component along the
  // remaining index m, so W_1, W_2, W_3 stay independent.
  std::optional<std::pair<std::size_t, std::size_t>> pivot;
  for (std::size_t i = 0; i < n && !pivot; ++i) {
    for (std::size_t jj = i + 1; jj < n && !pivot; ++jj) {
      std::size_t m = 3 - i - jj;
      if (!ce(i, jj, n + m).is_zero()) pivot = {i, jj};
    }
  }
  if (!pivot) throw Error(ErrorCode::PivotNotFound, "no bracket [Z_i, Z_j] has a component off span{Z̄_i, Z̄_j}");
  const auto [pi, pj] = *pivot;
  Vector w3(6);
  for (std::size_t k = 0; k < n; ++k) w3 = w3 + ce(pi, pj, n + k).conj() * z[k];
  std::vector<Vector> w = {z[pi], z[pj], w3};
  std::vector<Vector> wcols = w;
  for (const auto& v : w) wcols.push_back(conj(v));
  FrameChange f{Tensor::from_columns(wcols)};
  Tensor cw = change_frame(alg, f);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      for (std::size_t k = 0; k < 6; ++k) {
        Scalar expected = (a == 0 && b == 1 && k == 5) || (a == 3 && b == 4 && k == 2) ? Scalar(1) : Scalar();
        if (!(cw(a, b, k) == expected)) {
          throw Error(ErrorCode::PivotNotFound, "normalized frame does not give the Heisenberg table",
                      index_list(std::vector<std::size_t>{a, b, k}));
        }
      }
    }
  }
  return f;
}

TheoremVerdict two_step_check(const StructureAnalysis& a) {
  if (!a.classification.quasi_kahler) throw Error(ErrorCode::NotQuasiKahler, "two_step_check needs a quasi-Kähler structure");
  if (!a.hermitian.r.is_zero()) throw Error(ErrorCode::HypothesisFailed, "Hermitian curvature is not zero");
  TheoremVerdict v;
  v.id = "two_step";
  v.hypotheses_met = true;
  std::optional<int> step = nilpotency_step(a.triple.algebra());
  v.conclusion_holds = step.has_value() && *step <= 2;
  v.facts = {{"nilpotent", step.has_value()}, {"step_at_most_2", v.conclusion_holds}};
  if (!v.conclusion_holds) {
    v.witness = step ? "nilpotency step " + std::to_string(*step) : std::string("algebra is not nilpotent");
  }
  return v;
}

TheoremVerdict flat_coframe_proposition(const StructureAnalysis& a) {
  if (!a.classification.almost_kahler) {
    throw Error(ErrorCode::NotAlmostKahler, "flat_coframe_proposition needs an almost Kähler structure");
  }
  const auto& alg = a.triple.algebra();
  if (!rflat_frame_pattern(alg, a.frame).holds()) throw Error(ErrorCode::HypothesisFailed, "frame lacks the flat pattern");
  const std::size_t n = a.frame.n;
  const Tensor& gram = a.frame.hermitian_gram;
  Tensor coeff = bracket_coefficients(alg, a.frame);
  // Lowered: low(i, j, k) = g([Z_i, Z_j], Z_k) = sum_m A(i, j, m) G(k, m).
  Tensor low({n, n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) low(i, j, k).add_product(coeff(i, j, m), gram(k, m));
      }
    }
  }
  bool eq_a = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!(low(i, j, k) + low(k, i, j) + low(j, k, i)).is_zero()) eq_a = false;
      }
    }
  }
  bool eq_b = true;
  for (std::size_t i = 0; i < n && eq_b; ++i) {
    for (std::size_t j = 0; j < n && eq_b; ++j) {
      for (std::size_t r = 0; r < n && eq_b; ++r) {
        for (std::size_t s = 0; s < n && eq_b; ++s) {
          Scalar acc;
          for (std::size_t k = 0; k < n; ++k) acc.add_product(coeff(i, j, k), coeff(k, r, s).conj());
          if (!acc.is_zero()) eq_b = false;
        }
      }
    }
  }
  TheoremVerdict v;
  v.id = "flat_coframe";
  v.hypotheses_met = true;
  const bool a_zero = coeff.is_zero();
  const bool n_zero = a.nijenhuis.is_zero();
  v.facts = {{"cyclic_identity", eq_a}, {"jacobi_identity", eq_b}, {"coefficients_zero", a_zero}, {"integrable", n_zero}};
  v.conclusion_holds = eq_a && eq_b && a_zero && n_zero;
  if (!v.conclusion_holds) v.witness = "flat-pattern almost Kähler structure with nonzero bracket coefficients";
  return v;
}

TheoremVerdict cyclic_nabla_n_check(const StructureAnalysis& a) {
  if (!a.classification.quasi_kahler) {
    throw Error(ErrorCode::NotQuasiKahler, "cyclic_nabla_n_check needs a quasi-Kähler structure");
  }
  Tensor dn = nabla_nijenhuis(a.lc, a.triple);
  const std::size_t d = a.triple.dim();
  bool cyclic_zero = true;
  for (std::size_t x = 0; x < d && cyclic_zero; ++x) {
    for (std::size_t y = 0; y < d && cyclic_zero; ++y) {
      for (std::size_t z = 0; z < d && cyclic_zero; ++z) {
        for (std::size_t c = 0; c < d; ++c) {
          if (!(dn(x, y, z, c) + dn(y, z, x, c) + dn(z, x, y, c)).is_zero()) {
            cyclic_zero = false;
            break;
          }
        }
      }
    }
  }
  TheoremVerdict v;
  v.id = "cyclic_nabla_n";
  v.hypotheses_met = cyclic_zero;
  v.conclusion_holds = a.nijenhuis.is_zero();
  v.facts = {{"cyclic_sum_zero", cyclic_zero}, {"integrable", v.conclusion_holds}};
  if (v.counterexample()) v.witness = "cyclic sum of nabla N vanishes but N != 0";
  return v;
}

TamingResult taming_obstruction(const HermitianTriple& t, const ComplexFrame& frame) {
  if (t.dim() != 6) throw Error(ErrorCode::WrongDimension, "taming_obstruction needs dimension 6");
  const auto& alg = t.algebra();
  std::vector<InvariantForm> zeta;
  for (std::size_t k = 0; k < 3; ++k) zeta.push_back(coframe_form(frame.inverse, k));
  const InvariantForm basis[] = {wedge(zeta[0], zeta[1]), wedge(zeta[1], zeta[2]), wedge(zeta[0], zeta[2])};
  const Scalar units[] = {Scalar(1), Scalar::i()};
  InvariantForm domega = exterior_derivative(alg, t.omega_form());
  const auto& masks = domega.masks();

  std::vector<Vector> columns;
  for (const auto& b : basis) {
    for (const auto& u : units) {
      InvariantForm beta = u * b;
      InvariantForm d = exterior_derivative(alg, beta + conjugate(beta));
      Vector col;
      for (auto m : masks) col.push_back(d.component(m));
      columns.push_back(std::move(col));
    }
  }
  TamingResult r;
  for (std::size_t row = 0; row < masks.size(); ++row) {
    Vector line;
    for (const auto& col : columns) line.push_back(col[row]);
    r.system.push_back(std::move(line));
    r.rhs.push_back(-domega.component(masks[row]));
  }
  LinearSolution sol = solve_linear(r.system, r.rhs);
  r.solvable = sol.consistent;
  if (sol.consistent) {
    r.a = sol.x[0] + Scalar::i() * sol.x[1];
    r.b = sol.x[2] + Scalar::i() * sol.x[3];
    r.c = sol.x[4] + Scalar::i() * sol.x[5];
  } else {
    r.certificate = sol.certificate;
  }
  return r;
}

bool certifies_inconsistency(const TamingResult& r) {
  if (r.solvable || r.certificate.size() != r.system.size()) return false;
  const std::size_t ncols = r.system.empty() ? 0 : r.system.front().size();
  for (std::size_t c = 0; c < ncols; ++c) {
    Scalar acc;
    for (std::size_t i = 0; i < r.system.size(); ++i) acc.add_product(r.certificate[i], r.system[i][c]);
    if (!acc.is_zero()) return false;
  }
  Scalar b;
  for (std::size_t i = 0; i < r.rhs.size(); ++i) b.add_product(r.certificate[i], r.rhs[i]);
  return !b.is_zero();
}

std::vector<TheoremVerdict> evaluate_all(const StructureAnalysis& a) {
  using Check = TheoremVerdict (*)(const StructureAnalysis&);
  const std::pair<const char*, Check> checks[] = {
      {"theorem_main", theorem_main},
      {"corollary_almost_kahler", corollary_almost_kahler},
      {"two_step", two_step_check},
      {"flat_coframe", flat_coframe_proposition},
      {"cyclic_nabla_n", cyclic_nabla_n_check},
  };
  std::vector<TheoremVerdict> out;
  for (const auto& [id, check] : checks) {
    try {
      out.push_back(check(a));
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::NotQuasiKahler:
        case ErrorCode::NotAlmostKahler:
        case ErrorCode::HypothesisFailed: {
          TheoremVerdict v;
          v.id = id;
          v.applicable = false;
          out.push_back(std::move(v));
          break;
        }
        default:
          throw;
      }
    }
  }
  return out;
}

std::string to_string(SampleMode m) {
  switch (m) {
    case SampleMode::Generic: return "generic";
    case SampleMode::QuasiKahler: return "quasi_kahler";
    case SampleMode::AlmostKahler: return "almost_kahler";
    case SampleMode::FlatPattern: return "flat_pattern";
    case SampleMode::FlatAlmostKahler: return "flat_almost_kahler";
  }
  return "generic";
}

std::optional<SampleMode> sample_mode_from_string(std::string_view s) {
  for (auto m : {SampleMode::Generic, SampleMode::QuasiKahler, SampleMode::AlmostKahler, SampleMode::FlatPattern,
                 SampleMode::FlatAlmostKahler}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

bool SearchRecord::has_counterexample() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const TheoremVerdict& v) { return v.counterexample(); });
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

long nonzero_small(Rng& rng) {
  static const long values[] = {-2, -1, 1, 2};
  return values[uniform(rng, 0, 3)];
}

// Metric compatible with the standard J: the real form of a random
// positive definite hermitian H = M^* M + I, or the identity.
Tensor random_compatible_metric(std::size_t n, Rng& rng) {
  const std::size_t d = 2 * n;
  if (chance(rng, 0.5)) return Tensor::identity(d);
  Tensor m({n, n});
  for (auto& x : m.entries()) {
    if (chance(rng, 0.4)) x = Scalar(Rational(uniform(rng, -1, 1)), Rational(uniform(rng, -1, 1)));
  }
  Tensor mh({n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mh(i, j) = m(j, i).conj();
  }
  Tensor h = matmul(mh, m) + Tensor::identity(n);
  Tensor g({d, d});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = h(i, j).re();
      g(i + n, j + n) = h(i, j).re();
      g(i + n, j) = h(i, j).im();
      g(i, j + n) = -h(i, j).im();
    }
  }
  return g;
}

Tensor unit_bracket(std::size_t d, std::size_t a, std::size_t b, std::size_t k) {
  Tensor c({d, d, d});
  c(a, b, k) = 1;
  c(b, a, k) = -1;
  return c;
}

// Linear constraints on a bracket table imposed by the mode, as one row per
// scalar equation over the columns (one column per unknown table).
std::vector<Vector> domega_constraints(const std::vector<Tensor>& unknowns, const InvariantForm& omega,
                                   const ComplexFrame* frame, bool almost_kahler) {
  std::vector<Vector> cols;
  const std::size_t d = omega.dim();
  const std::size_t n = d / 2;
  for (const auto& c : unknowns) {
    InvariantForm dw = exterior_derivative(c, omega);
    Vector col;
    if (almost_kahler) {
      for (auto m : dw.masks()) col.push_back(dw.component(m));
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = j + 1; k < n; ++k) {
            Scalar v = dw.evaluate({frame->vector(i), frame->vector(n + j), frame->vector(n + k)});
            col.emplace_back(v.re());
            col.emplace_back(v.im());
          }
        }
      }
    }
    cols.push_back(std::move(col));
  }
  std::vector<Vector> rows;
  if (cols.empty()) return rows;
  for (std::size_t r = 0; r < cols.front().size(); ++r) {
    Vector row;
    for (const auto& col : cols) row.push_back(col[r]);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Random combination of one to three nullspace vectors; when some basis
// vector satisfies `preferred`, one such vector is always included.
std::optional<Vector> random_kernel_element(const std::vector<Vector>& rows, std::size_t nunknowns, Rng& rng,
                                            const std::function<bool(const Vector&)>& preferred = {}) {
  std::vector<Vector> ns;
  if (rows.empty()) {
    for (std::size_t u = 0; u < nunknowns; ++u) ns.push_back(unit_vector(nunknowns, u));
  } else {
    ns = nullspace(rows, nunknowns);
  }
  if (ns.empty()) return std::nullopt;
  static const std::size_t picks[] = {1, 1, 2, 3};
  std::size_t k = std::min(ns.size(), picks[uniform(rng, 0, 3)]);
  std::shuffle(ns.begin(), ns.end(), rng);
  if (preferred) {
    auto it = std::find_if(ns.begin(), ns.end(), preferred);
    if (it != ns.end()) std::iter_swap(ns.begin(), it);
  }
  Vector out(nunknowns);
  for (std::size_t t = 0; t < k; ++t) out = out + Scalar(nonzero_small(rng)) * ns[t];
  return out;
}

// Random integer matrix with determinant +-1: a permutation times unit
// lower and unit upper triangular factors with small entries.
Tensor random_unimodular(std::size_t d, Rng& rng) {
  Tensor l = Tensor::identity(d);
  Tensor u = Tensor::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (chance(rng, 0.25)) l(i, j) = uniform(rng, -1, 1);
      if (chance(rng, 0.25)) u(j, i) = uniform(rng, -1, 1);
    }
  }
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Tensor p({d, d});
  for (std::size_t i = 0; i < d; ++i) p(perm[i], i) = 1;
  return matmul(p, matmul(l, u));
}

struct Candidate {
  Tensor c;
  Tensor g;
};

std::optional<Candidate> draw_candidate(std::size_t d, SampleMode mode, Rng& rng) {
  const std::size_t n = d / 2;
  Candidate cand;
  cand.g = random_compatible_metric(n, rng);
  AlmostComplexStructure j = AlmostComplexStructure::standard(d);
  HermitianTriple gauge = HermitianTriple::create(LieAlgebra::abelian(d), j, InvariantMetric::create(cand.g));
  InvariantForm omega = gauge.omega_form();
  ComplexFrame frame = standard_10_frame(gauge);

  std::vector<Tensor> unknowns;
  Vector values;
  // Brackets [Z_i, Z_j] = sum_m A(i, j, m) Z̄_m, realified through the frame.
  auto add_flat = [&](double p) {
    FrameChange to_real{frame.inverse};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t jj = i + 1; jj < n; ++jj) {
        for (std::size_t m = 0; m < n; ++m) {
          if (!chance(rng, p)) continue;
          for (const Scalar& unit : {Scalar(1), Scalar::i()}) {
            Tensor ce({d, d, d});
            ce(i, jj, n + m) = unit;
            ce(jj, i, n + m) = -unit;
            ce(n + i, n + jj, m) = unit.conj();
            ce(n + jj, n + i, m) = -unit.conj();
            unknowns.push_back(change_frame(ce, to_real));
          }
        }
      }
    }
  };
  // Unit brackets [X_a, X_b] = X_k, strictly increasing in a random order,
  // so every combination is nilpotent.
  auto add_triangular = [&](double p) {
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> pos(d);
    for (std::size_t i = 0; i < d; ++i) pos[perm[i]] = i;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        for (std::size_t k = 0; k < d; ++k) {
          if (pos[k] > std::max(pos[a], pos[b]) && chance(rng, p)) unknowns.push_back(unit_bracket(d, a, b, k));
        }
      }
    }
  };
  const double p_flat = d == 4 ? 0.6 : (d == 6 ? 0.35 : 0.2);
  const double p_tri = d == 4 ? 0.5 : (d == 6 ? 0.3 : 0.12);
  switch (mode) {
    case SampleMode::FlatPattern:
      add_flat(p_flat);
      for (std::size_t u = 0; u < unknowns.size(); ++u) values.emplace_back(uniform(rng, -2, 2));
      break;
    case SampleMode::FlatAlmostKahler:
      add_flat(p_flat);
      break;
    case SampleMode::Generic:
      add_triangular(p_tri);
      for (std::size_t u = 0; u < unknowns.size(); ++u) values.emplace_back(nonzero_small(rng));
      break;
    case SampleMode::QuasiKahler:
      add_triangular(p_tri);
      if (chance(rng, 0.5)) add_flat(p_flat);
      break;
    case SampleMode::AlmostKahler:
      add_triangular(p_tri);
      break;
  }
  auto combine = [&](const Vector& vals) {
    Tensor c({d, d, d});
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if (!vals[u].is_zero()) c += vals[u] * unknowns[u];
    }
    return c;
  };
  const bool forced_abelian_ok = mode == SampleMode::FlatAlmostKahler;
  if (unknowns.empty()) {
    if (!forced_abelian_ok) return std::nullopt;
    cand.c = Tensor({d, d, d});
    return cand;
  }
  if (values.empty()) {
    const bool ak = mode == SampleMode::AlmostKahler || mode == SampleMode::FlatAlmostKahler;
    auto rows = domega_constraints(unknowns, omega, &frame, ak);
    std::function<bool(const Vector&)> strict;
    // Quasi-Kähler mode leans towards structures that are not almost Kähler.
    if (mode == SampleMode::QuasiKahler && chance(rng, 0.7)) {
      strict = [&](const Vector& v) { return !exterior_derivative(combine(v), omega).is_zero(); };
    }
    auto kernel = random_kernel_element(rows, unknowns.size(), rng, strict);
    if (!kernel && !forced_abelian_ok) return std::nullopt;
    values = kernel ? *kernel : Vector(unknowns.size());
  }
  cand.c = combine(values);
  // Abelian draws are only kept where the constraints force them.
  if (cand.c.is_zero() && !forced_abelian_ok) return std::nullopt;
  if (!cand.c.is_real()) throw Error(ErrorCode::ShapeMismatch, "realified bracket table is not real");
  return cand;
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(index));
}

std::optional<HermitianTriple> sample_structure(std::size_t dim, SampleMode mode, std::uint64_t seed,
                                                std::size_t max_attempts, std::size_t* attempts,
                                                std::size_t* jacobi_rejections) {
  if (dim < 2 || dim % 2 != 0) throw Error(ErrorCode::WrongDimension, "sampling needs an even dimension");
  Rng rng(seed);
  std::size_t tries = 0;
  std::size_t rejected = 0;
  std::optional<HermitianTriple> out;
  while (tries < max_attempts && !out) {
    ++tries;
    auto cand = draw_candidate(dim, mode, rng);
    if (!cand) continue;
    if (!jacobi_check(cand->c).empty()) {
      ++rejected;
      continue;
    }
    // Random integral presentation of the same structure.
    Tensor q = random_unimodular(dim, rng);
    Tensor qinv = invert_matrix(q);
    Tensor c = change_frame(cand->c, FrameChange{q});
    Tensor jq = matmul(qinv, matmul(AlmostComplexStructure::standard(dim).matrix(), q));
    Tensor gq = matmul(transpose(q), matmul(cand->g, q));
    auto j = AlmostComplexStructure::create(jq);
    // Recover the metric through the taming route from omega = g(J., .).
    InvariantForm omega = InvariantForm::from_matrix(matmul(transpose(jq), gq));
    InvariantMetric g = metric_from_taming(j, omega);
    if (!(g.matrix() == gq)) throw Error(ErrorCode::NotTamed, "taming route did not reproduce the metric");
    out = HermitianTriple::create(LieAlgebra::from_structure_constants(std::move(c)), std::move(j), std::move(g));
  }
  if (attempts) *attempts = tries;
  if (jacobi_rejections) *jacobi_rejections = rejected;
  return out;
}

std::vector<SearchRecord> random_structure_search(const SearchOptions& opt) {
  if (opt.dim != 4 && opt.dim != 6 && opt.dim != 8) throw Error(ErrorCode::WrongDimension, "search supports dimensions 4, 6, 8");
  std::vector<SearchRecord> records(opt.samples);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < opt.samples; i = next++) {
      try {
        SearchRecord& rec = records[i];
        rec.index = i;
        rec.triple = sample_structure(opt.dim, opt.mode, sample_seed(opt.seed, i), opt.max_attempts, &rec.attempts,
                                      &rec.jacobi_rejections);
        if (!rec.triple) continue;
        StructureAnalysis a = StructureAnalysis::compute(*rec.triple);
        rec.classification = a.classification;
        rec.hermitian_curvature_zero = a.hermitian.r.is_zero();
        rec.frame_pattern = rflat_frame_pattern(a.triple.algebra(), a.frame).holds();
        rec.nilpotency = nilpotency_step(a.triple.algebra());
        rec.verdicts = evaluate_all(a);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t nworkers = std::max<std::size_t>(1, std::min(opt.workers, std::max<std::size_t>(1, opt.samples)));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace qk
