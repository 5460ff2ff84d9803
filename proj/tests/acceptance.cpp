// Acceptance runner: `acceptance <n>` checks criterion n, `acceptance all`
// checks every criterion. Each criterion prints detail lines indented by two
// spaces and then exactly one status line "criterion <n>: PASS|FAIL - ...".
// All comparisons are exact.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qk/analysis.hpp"
#include "qk/error.hpp"
#include "qk/forms.hpp"
#include "qk/linalg.hpp"
#include "qk/theorem_suite.hpp"

using namespace qk;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

void detail(const std::string& s) { std::cout << "  " << s << "\n"; }

std::string str(const Vector& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << "]";
  return os.str();
}

// Frame vector c Z̄_bar for a printed table entry; bar = 0 means zero.
struct Printed {
  int a, b;
  long coeff;
  int bar;
};

Vector printed_value(const ComplexFrame& f, const Printed& p) {
  Vector v(2 * f.n);
  if (p.bar == 0 || p.coeff == 0) return v;
  Vector zb = f.vector(f.n + p.bar - 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Scalar(p.coeff) * zb[i];
  return v;
}

std::vector<SearchRecord> search(std::size_t dim, SampleMode mode, std::size_t samples, std::uint64_t seed) {
  SearchOptions opt;
  opt.dim = dim;
  opt.mode = mode;
  opt.samples = samples;
  opt.seed = seed;
  opt.workers = 1;
  return random_structure_search(opt);
}

const TheoremVerdict* verdict(const SearchRecord& r, const std::string& id) {
  for (const auto& v : r.verdicts)
    if (v.id == id) return &v;
  return nullptr;
}

const char* const kFixtures[] = {"iwasawa_g0", "iwasawa_alt", "kodaira_thurston", "flat_torus_4", "flat_torus_6"};

Outcome criterion_1() {
  auto a = StructureAnalysis::compute(oracle::fixture("iwasawa_g0"));
  const auto& c = a.classification;
  detail("quasi_kahler=" + std::to_string(c.quasi_kahler) + " almost_kahler=" + std::to_string(c.almost_kahler) +
         " integrable=" + std::to_string(c.integrable));
  std::size_t nonzero = 0;
  for (const auto& x : a.hermitian_frame.entries()) nonzero += !x.is_zero();
  detail("Hermitian curvature frame components: " + std::to_string(a.hermitian_frame.size()) + " checked, " +
         std::to_string(nonzero) + " nonzero");
  bool ok = c.quasi_kahler && !c.almost_kahler && !c.integrable && a.hermitian_frame.size() == 1296 && nonzero == 0 &&
            a.hermitian.r.is_zero();
  return {ok, "Iwasawa is quasi-Kähler, not almost Kähler, not integrable, R~ = 0 on all 6^4 components"};
}

Outcome criterion_2() {
  bool ok = true;
  for (const char* name : {"iwasawa_g0", "iwasawa_alt"}) {
    auto a = StructureAnalysis::compute(oracle::fixture(name));
    auto g = gray_check(a.riemann_frame, a.frame.n);
    bool flat = a.hermitian_frame.is_zero();
    detail(std::string(name) + ": G2=" + std::to_string(g.g2) + " R~=0: " + std::to_string(flat));
    ok = ok && g.g2 && flat;
  }
  return {ok, "Riemann curvature satisfies G2 and R~ = 0 on both Iwasawa structures"};
}

Outcome criterion_3() {
  // Tables as printed for the two Iwasawa structures, 1-based:
  // nabla_{Z_a} Z_b = coeff Z̄_bar.
  const std::vector<Printed> iwasawa = {{1, 1, 0, 0}, {2, 1, -1, 3}, {3, 1, 1, 2}, {1, 2, 1, 3}, {2, 2, 0, 0},
                                        {3, 2, 1, 1}, {1, 3, -1, 2}, {2, 3, 1, 1}, {3, 3, 0, 0}};
  const std::vector<Printed> alt = {{1, 1, -2, 2}, {2, 1, -2, 3}, {3, 1, 0, 0}, {1, 2, 2, 1}, {2, 2, 0, 0},
                                    {3, 2, -2, 3}, {1, 3, 2, 1}, {2, 3, 2, 1}, {3, 3, 2, 2}};
  bool ok = true;
  std::size_t matched = 0, total = 0;
  for (const auto& [name, table] : {std::pair{"iwasawa_g0", &iwasawa}, std::pair{"iwasawa_alt", &alt}}) {
    auto t = oracle::fixture(name);
    auto f = standard_10_frame(t);
    auto lc = levi_civita(t);
    const std::size_t n = f.n;
    auto printed = [&](int a, int b) {
      for (const auto& p : *table)
        if (p.a == a && p.b == b) return printed_value(f, p);
      return Vector(2 * n);
    };
    for (const auto& p : *table) {
      ++total;
      Vector got = lc.apply(f.vector(p.a - 1), f.vector(p.b - 1));
      Vector want = printed_value(f, p);
      if (got == want) {
        ++matched;
        continue;
      }
      ok = false;
      detail(std::string(name) + ": nabla_" + std::to_string(p.a) + " Z_" + std::to_string(p.b) + " printed " +
             str(f.coordinates(want)) + ", computed " + str(f.coordinates(got)) + " (frame coordinates Z, Z̄)");
      // Torsion-freeness against the printed table.
      Vector tor = printed(p.a, p.b);
      Vector rev = printed(p.b, p.a);
      for (std::size_t i = 0; i < tor.size(); ++i) tor[i] -= rev[i];
      Vector br = t.algebra().bracket(f.vector(p.a - 1), f.vector(p.b - 1));
      detail("    printed nabla_" + std::to_string(p.a) + " Z_" + std::to_string(p.b) + " - nabla_" +
             std::to_string(p.b) + " Z_" + std::to_string(p.a) + " = " + str(f.coordinates(tor)) + " but [Z_" +
             std::to_string(p.a) + ", Z_" + std::to_string(p.b) + "] = " + str(f.coordinates(br)) +
             (tor == br ? "" : ": printed table is not torsion free"));
      // Metric compatibility: g(Z_b, Z_c) = 0 forces g(nabla_a Z_b, Z_c) + g(Z_b, nabla_a Z_c) = 0.
      for (int c = 1; c <= static_cast<int>(n); ++c) {
        Scalar lhs = oracle::inner(t, printed(p.a, p.b), f.vector(c - 1)) +
                     oracle::inner(t, f.vector(p.b - 1), printed(p.a, c));
        if (!lhs.is_zero()) {
          detail("    printed g(nabla_" + std::to_string(p.a) + " Z_" + std::to_string(p.b) + ", Z_" +
                 std::to_string(c) + ") + g(Z_" + std::to_string(p.b) + ", nabla_" + std::to_string(p.a) + " Z_" +
                 std::to_string(c) + ") = " + lhs.str() + " != 0: printed table is not metric");
        }
      }
    }
    std::size_t mixed_nonzero = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mixed_nonzero += !is_zero(lc.apply(f.vector(n + i), f.vector(j)));
    detail(std::string(name) + ": nabla_{Z̄_i} Z_j nonzero for " + std::to_string(mixed_nonzero) + " of " +
           std::to_string(n * n) + " pairs");
    ok = ok && mixed_nonzero == 0;
  }
  return {ok, std::to_string(matched) + " of " + std::to_string(total) +
                  " printed Levi-Civita entries reproduced; nabla_{Z̄_i} Z_j = 0 checked"};
}

Outcome criterion_4() {
  bool ok = true;
  std::size_t count = 0;
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    if (!classify(t).quasi_kahler) continue;
    ++count;
    auto lc = levi_civita(t);
    auto can = canonical_connection(t, lc);
    bool g = nabla_g(can, t).is_zero();
    bool j = nabla_j(can, t).is_zero();
    bool tor = torsion(can, t.algebra(), standard_10_frame(t)).mixed_zero;
    detail(std::string(name) + ": nabla~g=0 " + std::to_string(g) + ", nabla~J=0 " + std::to_string(j) +
           ", Tor^{1,1}=0 " + std::to_string(tor));
    ok = ok && g && j && tor;
  }
  return {ok && count == 5, "canonical connection metric, J-parallel, (1,1)-torsion free on " + std::to_string(count) +
                                " quasi-Kähler fixtures"};
}

Outcome criterion_5() {
  auto t = oracle::fixture("kodaira_thurston");
  auto a = StructureAnalysis::compute(t);
  auto rep = curvature_report(a);
  Scalar diff(rep.s_star - rep.s);
  Scalar trace = complex_frame_trace(a.riemann_frame, a.frame);
  Scalar gamma = oracle::gamma_sum(t, a.frame);
  auto o = oracle::scalar_curvatures(t);
  detail("s = " + rep.s.str() + ", s* = " + rep.s_star.str() + ", |nabla omega|^2 = " + rep.nabla_omega_sq.str());
  detail("complex frame trace = " + trace.str() + ", Gamma-sum oracle = " + gamma.str() + ", oracle s* - s = " +
         (o.s_star - o.s).str());
  bool ok = diff == Scalar(rep.nabla_omega_sq) && diff == trace && diff == gamma && o.s_star - o.s == diff &&
            o.s == Scalar(rep.s);
  return {ok, "Kodaira-Thurston: s* - s = |nabla omega|^2 = 4 sum R_{i j ibar jbar} = Gamma-sum"};
}

Outcome criterion_6() {
  std::size_t checked = 0, disagreements = 0, bianchi_true = 0;
  for (const char* name : kFixtures) {
    auto a = StructureAnalysis::compute(oracle::fixture(name));
    if (!a.classification.quasi_kahler) continue;
    auto v = theorem_main(a);
    ++checked;
    bianchi_true += v.facts.at("bianchi_rtilde");
    disagreements += !v.conclusion_holds;
  }
  std::size_t fixtures = checked;
  for (std::size_t dim : {4, 6}) {
    std::size_t produced = 0, strict = 0;
    for (const auto& r : search(dim, SampleMode::QuasiKahler, 500, 600 + dim)) {
      if (!r.triple) continue;
      ++produced;
      strict += !r.classification.almost_kahler;
      const auto* v = verdict(r, "theorem_main");
      if (!v || !v->applicable) {
        ++disagreements;
        continue;
      }
      ++checked;
      bianchi_true += v->facts.at("bianchi_rtilde");
      disagreements += !v->conclusion_holds;
    }
    detail("dim " + std::to_string(dim) + ": " + std::to_string(produced) + " quasi-Kähler samples, " +
           std::to_string(strict) + " not almost Kähler");
    if (produced < 500) ++disagreements;
  }
  detail(std::to_string(fixtures) + " fixtures; Bianchi(R~) = 0 on " + std::to_string(bianchi_true) + " of " +
         std::to_string(checked) + " structures");
  return {disagreements == 0, "Bianchi(R~) = 0 <=> (G3 and F-condition): " + std::to_string(checked) +
                                  " structures, " + std::to_string(disagreements) + " disagreements"};
}

Outcome criterion_7() {
  std::size_t checked = 0, bad = 0, hyp = 0;
  for (const char* name : kFixtures) {
    auto a = StructureAnalysis::compute(oracle::fixture(name));
    if (!a.classification.almost_kahler) continue;
    auto v = corollary_almost_kahler(a);
    ++checked;
    hyp += v.hypotheses_met;
    bad += v.counterexample();
  }
  std::size_t produced = 0;
  for (std::size_t dim : {4, 6}) {
    for (const auto& r : search(dim, SampleMode::AlmostKahler, 250, 700 + dim)) {
      if (!r.triple) continue;
      ++produced;
      const auto* v = verdict(r, "corollary_almost_kahler");
      if (!v || !v->applicable) {
        ++bad;
        continue;
      }
      ++checked;
      hyp += v->hypotheses_met;
      bad += v->counterexample();
    }
  }
  detail(std::to_string(produced) + " random almost Kähler samples (dims 4 and 6); Bianchi(R~) = 0 on " +
         std::to_string(hyp) + " of " + std::to_string(checked));
  return {bad == 0 && produced >= 500,
          "no almost Kähler structure with Bianchi(R~) = 0 and N != 0 (" + std::to_string(bad) + " found)"};
}

Outcome criterion_8() {
  bool ok = true;
  for (const char* name : {"iwasawa_g0", "iwasawa_alt"}) {
    auto a = StructureAnalysis::compute(oracle::fixture(name));
    auto tos = tosatti_tensor(a.hermitian_frame, antiholomorphic_nijenhuis(a.triple, a.frame), a.frame);
    detail(std::string(name) + ": tensor zero " + std::to_string(tos.vanishes));
    ok = ok && tos.vanishes && tos.tensor.is_zero();
  }
  return {ok, "curvature tensor R~ + N-term vanishes on both Iwasawa structures"};
}

Outcome criterion_9() {
  bool ok = true;
  for (const char* name : {"iwasawa_g0", "iwasawa_alt"}) {
    auto t = oracle::fixture(name);
    auto f = heisenberg_normalize(t.algebra(), t.j());
    // Brackets of the new columns computed directly, then expressed in them.
    Tensor inv = invert_matrix(f.matrix);
    std::size_t wrong = 0;
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) {
        Vector br = oracle::bracket(t, f.matrix.column(a), f.matrix.column(b));
        Vector want(6);
        if (a == 0 && b == 1) want[5] = 1;
        if (a == 1 && b == 0) want[5] = -1;
        if (a == 3 && b == 4) want[2] = 1;
        if (a == 4 && b == 3) want[2] = -1;
        Vector coords(6);
        for (std::size_t k = 0; k < 6; ++k)
          for (std::size_t m = 0; m < 6; ++m) coords[k] += inv(k, m) * br[m];
        wrong += !(coords == want);
      }
    std::size_t type = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      Vector w = f.matrix.column(k);
      type += !(oracle::apply_j(t, w) == oracle::scale(Scalar::i(), w)) || !(f.matrix.column(k + 3) == conj(w));
    }
    detail(std::string(name) + ": " + std::to_string(wrong) + " of 36 brackets off the table, " +
           std::to_string(type) + " columns not (1,0)/conjugate");
    ok = ok && wrong == 0 && type == 0;
  }
  return {ok, "normalized frame gives [W1, W2] = W̄3 with all other basis brackets zero"};
}

Outcome criterion_10() {
  std::size_t flat = 0, bad = 0;
  for (const char* name : kFixtures) {
    auto a = StructureAnalysis::compute(oracle::fixture(name));
    if (!a.classification.quasi_kahler || !a.hermitian.r.is_zero()) continue;
    ++flat;
    auto step = nilpotency_step(a.triple.algebra());
    detail(std::string(name) + ": step " + (step ? std::to_string(*step) : std::string("not nilpotent")));
    bad += !(step && *step <= 2);
  }
  std::size_t from_search = 0, strict = 0;
  auto tally = [&](const std::vector<SearchRecord>& recs) {
    for (const auto& r : recs) {
      if (!r.triple || !r.classification.quasi_kahler || !r.hermitian_curvature_zero) continue;
      ++from_search;
      strict += !r.classification.almost_kahler;
      bad += !(r.nilpotency && *r.nilpotency <= 2);
      const auto* v = verdict(r, "two_step");
      bad += !v || v->counterexample();
    }
  };
  tally(search(6, SampleMode::QuasiKahler, 200, 1006));
  tally(search(6, SampleMode::FlatPattern, 60, 1106));
  tally(search(4, SampleMode::QuasiKahler, 200, 1004));
  detail(std::to_string(flat) + " R~-flat quasi-Kähler fixtures, " + std::to_string(from_search) +
         " from search (" + std::to_string(strict) + " not almost Kähler)");
  return {bad == 0 && strict > 0, "every R~-flat quasi-Kähler structure found is at most 2-step nilpotent (" +
                                      std::to_string(bad) + " exceptions)"};
}

Outcome criterion_11() {
  auto t = oracle::fixture("iwasawa_g0");
  auto r = taming_obstruction(t, standard_10_frame(t));
  bool ok = !r.solvable && r.certificate.size() == r.system.size();
  std::size_t cols = r.system.empty() ? 0 : r.system.front().size();
  bool annihilates = ok;
  for (std::size_t c = 0; c < cols && ok; ++c) {
    Scalar acc;
    for (std::size_t i = 0; i < r.system.size(); ++i) acc += r.certificate[i] * r.system[i][c];
    annihilates = annihilates && acc.is_zero();
  }
  Scalar pairing;
  for (std::size_t i = 0; i < r.rhs.size() && ok; ++i) pairing += r.certificate[i] * r.rhs[i];
  detail(std::to_string(r.system.size()) + " equations in " + std::to_string(cols) +
         " real unknowns; certificate y with y^T M = 0 " + (annihilates ? "verified" : "FAILED") +
         ", y^T b = " + pairing.str());
  ok = ok && annihilates && !pairing.is_zero();
  return {ok, "no taming beta on Iwasawa, exact inconsistency certificate"};
}

Outcome criterion_12() {
  std::size_t produced = 0, abelian = 0, bad = 0, rejections = 0, pattern = 0;
  for (std::size_t dim : {4, 6}) {
    for (const auto& r : search(dim, SampleMode::FlatAlmostKahler, dim == 4 ? 120 : 100, 1200 + dim)) {
      rejections += r.jacobi_rejections;
      if (!r.triple) continue;
      ++produced;
      abelian += r.triple->algebra().constants().is_zero();
      auto a = StructureAnalysis::compute(*r.triple);
      if (!a.classification.almost_kahler) {
        ++bad;
        continue;
      }
      pattern += rflat_frame_pattern(a.triple.algebra(), a.frame).holds();
      auto v = flat_coframe_proposition(a);
      bool eqs = v.facts.at("cyclic_identity") && v.facts.at("jacobi_identity");
      bad += !eqs || !a.nijenhuis.is_zero() || v.counterexample();
    }
  }
  detail(std::to_string(produced) + " almost Kähler samples with the flat frame pattern (" + std::to_string(pattern) +
         " confirmed), " + std::to_string(abelian) + " abelian");
  detail(std::to_string(rejections) + " nonzero flat-pattern candidates rejected by Jacobi");
  return {bad == 0 && produced >= 200 && pattern == produced,
          "cyclic and Jacobi identities hold and N = 0 on every sample (" + std::to_string(bad) + " failures)"};
}

// Structure in the basis given by the columns of p.
HermitianTriple transformed(const HermitianTriple& t, const Tensor& p) {
  Tensor pinv = invert_matrix(p);
  Tensor j = matmul(pinv, matmul(t.j().matrix(), p));
  Tensor g = matmul(transpose(p), matmul(t.g().matrix(), p));
  return HermitianTriple::create(LieAlgebra::from_structure_constants(change_frame(t.algebra(), FrameChange{p})),
                                 AlmostComplexStructure::create(j), InvariantMetric::create(g));
}

Tensor random_real_invertible(std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-2, 2);
  Tensor p({d, d});
  do {
    for (auto& x : p.entries()) x = Scalar(u(rng));
  } while (determinant(p).is_zero());
  return p;
}

struct Scalars {
  Rational s, s_star, nabla_omega_sq;
  bool operator==(const Scalars&) const = default;
};

Scalars scalars_of(const HermitianTriple& t) {
  auto lc = levi_civita(t);
  auto si = scalar_invariants(curvature(lc, t.algebra(), t.g()).r, t);
  return {si.s, si.s_star, nabla_omega_norm(lc, t)};
}

Outcome criterion_13() {
  std::mt19937_64 rng(1313);
  std::size_t cases = 0;
  std::size_t fails[6] = {};
  const char* names[6] = {"curvature antisymmetries", "Riemann pair symmetry and first Bianchi", "G1 => G2 => G3",
                          "d o d = 0", "frame-change invariance of s, s*, |nabla omega|^2", "sampling"};
  auto one_case = [&](const HermitianTriple& t) {
    ++cases;
    auto a = StructureAnalysis::compute(t);
    fails[0] += !has_curvature_antisymmetries(a.riemann.r) || !has_curvature_antisymmetries(a.hermitian.r);
    fails[1] += !has_pair_symmetry(a.riemann.r) || !first_bianchi_defect(a.riemann.r).is_zero();
    for (const Tensor* rf : {&a.riemann_frame, &a.hermitian_frame}) {
      auto g = gray_check(*rf, a.frame.n);
      fails[2] += (g.g1 && !g.g2) || (g.g2 && !g.g3);
    }
    const std::size_t d = t.dim();
    std::uniform_int_distribution<int> u(-3, 3);
    for (std::size_t p = 1; p + 1 < d && p <= 2; ++p) {
      InvariantForm phi(d, p);
      for (auto m : phi.masks()) phi.set_component(m, Scalar(Rational(u(rng)), Rational(u(rng))));
      fails[3] += !exterior_derivative(t.algebra(), exterior_derivative(t.algebra(), phi)).is_zero();
    }
    auto rep = curvature_report(a);
    Scalars base{rep.s, rep.s_star, rep.nabla_omega_sq};
    fails[4] += !(scalars_of(transformed(t, random_real_invertible(d, rng))) == base);
  };
  std::size_t fixture_changes = 0;
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    one_case(t);
    auto base = scalars_of(t);
    for (int k = 0; k < 20; ++k) {
      ++fixture_changes;
      fails[4] += !(scalars_of(transformed(t, random_real_invertible(t.dim(), rng))) == base);
    }
  }
  struct Batch {
    std::size_t dim;
    SampleMode mode;
    std::size_t count;
  };
  const Batch batches[] = {{4, SampleMode::Generic, 500}, {4, SampleMode::QuasiKahler, 250},
                           {4, SampleMode::AlmostKahler, 150}, {6, SampleMode::QuasiKahler, 95}};
  std::size_t idx = 0;
  for (const auto& b : batches) {
    for (std::size_t i = 0; i < b.count; ++i, ++idx) {
      auto t = sample_structure(b.dim, b.mode, sample_seed(1313, idx), 400);
      if (!t) {
        ++fails[5];
        continue;
      }
      one_case(*t);
    }
  }
  bool ok = true;
  for (int k = 0; k < 6; ++k) {
    detail(std::string(names[k]) + ": " + std::to_string(fails[k]) + " failures");
    ok = ok && fails[k] == 0;
  }
  detail(std::to_string(fixture_changes) + " extra frame changes on fixtures");
  return {ok && cases >= 1000, "structural invariants on " + std::to_string(cases) + " randomized cases"};
}

const std::function<Outcome()> kCriteria[] = {criterion_1, criterion_2,  criterion_3,  criterion_4, criterion_5,
                                              criterion_6, criterion_7,  criterion_8,  criterion_9, criterion_10,
                                              criterion_11, criterion_12, criterion_13};

bool run(int id) {
  Outcome o;
  try {
    o = kCriteria[id - 1]();
  } catch (const Error& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.summary << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int count = static_cast<int>(std::size(kCriteria));
  if (argc != 2) {
    std::cerr << "usage: acceptance <1-" << count << "|all>\n";
    return 64;
  }
  std::string arg = argv[1];
  if (arg == "all") {
    bool ok = true;
    for (int i = 1; i <= count; ++i) ok = run(i) && ok;
    return ok ? 0 : 1;
  }
  int id = std::atoi(arg.c_str());
  if (id < 1 || id > count) {
    std::cerr << "usage: acceptance <1-" << count << "|all>\n";
    return 64;
  }
  return run(id) ? 0 : 1;
}
