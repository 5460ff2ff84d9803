#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qk/connections.hpp"
#include "qk/error.hpp"
#include "qk/theorem_suite.hpp"

using namespace qk;

namespace {

const char* const kFixtures[] = {"iwasawa_g0", "iwasawa_alt", "kodaira_thurston", "flat_torus_4", "flat_torus_6"};

// Expected nabla_{Z_a} Z_b as (index into Z̄, coefficient) with 0-based Z̄ index.
struct Entry {
  std::size_t a, b;
  long coeff;
  std::size_t bar;
};

void check_frame_table(const char* name, const std::vector<Entry>& table) {
  auto t = oracle::fixture(name);
  auto f = standard_10_frame(t);
  auto lc = levi_civita(t);
  const std::size_t n = f.n;
  for (const auto& e : table) {
    Vector got = f.coordinates(lc.apply(f.vector(e.a), f.vector(e.b)));
    Vector want(2 * n);
    if (e.coeff != 0) want[n + e.bar] = e.coeff;
    INFO(name << " nabla_" << e.a + 1 << " Z_" << e.b + 1);
    CHECK(got == want);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(is_zero(lc.apply(f.vector(n + i), f.vector(j))));
}

}  // namespace

TEST_CASE("Levi-Civita agrees with the Koszul oracle") {
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    auto lc = levi_civita(t);
    const std::size_t d = t.dim();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Vector want = oracle::levi_civita(t, unit_vector(d, a), unit_vector(d, b));
        for (std::size_t c = 0; c < d; ++c) CHECK(lc.gamma(a, b, c) == want[c]);
      }
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto t = sample_structure(6, SampleMode::Generic, sample_seed(99, s), 400);
    REQUIRE(t);
    auto lc = levi_civita(*t);
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b)
        CHECK(lc.apply(unit_vector(6, a), unit_vector(6, b)) == oracle::levi_civita(*t, unit_vector(6, a), unit_vector(6, b)));
  }
}

TEST_CASE("Levi-Civita is torsion free and metric") {
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    auto lc = levi_civita(t);
    auto f = standard_10_frame(t);
    CHECK(torsion(lc, t.algebra(), f).full.is_zero());
    CHECK(nabla_g(lc, t).is_zero());
  }
}

TEST_CASE("Levi-Civita tables on the Iwasawa fixtures") {
  // Hand values from the Koszul formula on the frame Z_k = X_k - i X_{k+3}.
  check_frame_table("iwasawa_g0", {{0, 0, 0, 0},
                                   {0, 1, 1, 2},
                                   {0, 2, -1, 1},
                                   {1, 0, -1, 2},
                                   {1, 1, 0, 0},
                                   {1, 2, 1, 0},
                                   {2, 0, -1, 1},
                                   {2, 1, 1, 0},
                                   {2, 2, 0, 0}});
  auto t = oracle::fixture("iwasawa_alt");
  auto f = standard_10_frame(t);
  auto lc = levi_civita(t);
  // nabla_1 Z_1 = -2 Z̄_2, nabla_1 Z_2 = 2 Z̄_1, nabla_1 Z_3 = 0
  check_frame_table("iwasawa_alt", {{0, 0, -2, 1},
                                    {0, 1, 2, 0},
                                    {0, 2, 0, 0},
                                    {1, 0, -2, 2},
                                    {1, 1, 0, 0},
                                    {1, 2, 2, 0},
                                    {2, 0, 0, 0},
                                    {2, 1, -2, 2},
                                    {2, 2, 2, 1}});
  // Torsion-freeness forces nabla_1 Z_3 = nabla_3 Z_1 since [Z_1, Z_3] = 0.
  CHECK(is_zero(t.algebra().bracket(f.z[0], f.z[2])));
  CHECK(lc.apply(f.z[0], f.z[2]) == lc.apply(f.z[2], f.z[0]));
}

TEST_CASE("canonical connection is Hermitian with vanishing (1,1) torsion") {
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    auto lc = levi_civita(t);
    auto can = canonical_connection(t, lc);
    CHECK(can.canonical_certified);
    CHECK(nabla_g(can, t).is_zero());
    CHECK(nabla_j(can, t).is_zero());
    auto f = standard_10_frame(t);
    CHECK(torsion(can, t.algebra(), f).mixed_zero);
    const std::size_t d = t.dim();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        CHECK(can.apply(unit_vector(d, a), unit_vector(d, b)) == oracle::canonical(t, unit_vector(d, a), unit_vector(d, b)));
  }
}

TEST_CASE("canonical formula off the quasi-Kähler class") {
  Tensor j({6, 6});
  j(1, 0) = 1, j(0, 1) = -1, j(4, 3) = 1, j(3, 4) = -1, j(5, 2) = 1, j(2, 5) = -1;
  auto iw = oracle::fixture("iwasawa_g0");
  auto t = HermitianTriple::create(iw.algebra(), AlmostComplexStructure::create(j), InvariantMetric::identity(6));
  auto lc = levi_civita(t);
  auto can = canonical_connection(t, lc);
  CHECK_FALSE(can.canonical_certified);
  // Still metric and J-parallel, but the (1,1) torsion no longer vanishes.
  CHECK(nabla_j(can, t).is_zero());
  CHECK_FALSE(torsion(can, t.algebra(), standard_10_frame(t)).mixed_zero);
}

TEST_CASE("fundamental relation between nabla J, d omega and N") {
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    auto chk = fundamental_relation_check(t, levi_civita(t));
    CHECK(chk.holds);
    CHECK(chk.checked == t.dim() * t.dim() * t.dim());
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto t = sample_structure(6, SampleMode::Generic, sample_seed(5, s), 400);
    REQUIRE(t);
    CHECK(fundamental_relation_check(*t, levi_civita(*t)).holds);
  }
}

TEST_CASE("quasi-Kähler derivative lemmas") {
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    auto lc = levi_civita(t);
    auto f = standard_10_frame(t);
    CHECK(lemma_mixed_derivative_check(lc, f).holds);
    // The holomorphic formula needs d omega = 0; on Iwasawa it fails.
    CHECK(lemma_holomorphic_derivative_check(t, lc, f).holds == classify(t).almost_kahler);
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto t = sample_structure(6, SampleMode::AlmostKahler, sample_seed(3, s), 400);
    REQUIRE(t);
    CHECK(lemma_holomorphic_derivative_check(*t, levi_civita(*t), standard_10_frame(*t)).holds);
    CHECK(nabla_omega_nijenhuis_check(*t, levi_civita(*t)).holds);
  }
  for (const char* name : kFixtures) {
    auto t = oracle::fixture(name);
    CHECK(nabla_omega_nijenhuis_check(t, levi_civita(t)).holds == classify(t).almost_kahler);
  }
  // Not quasi-Kähler: the mixed lemma fails.
  Tensor j({6, 6});
  j(1, 0) = 1, j(0, 1) = -1, j(4, 3) = 1, j(3, 4) = -1, j(5, 2) = 1, j(2, 5) = -1;
  auto iw = oracle::fixture("iwasawa_g0");
  auto t = HermitianTriple::create(iw.algebra(), AlmostComplexStructure::create(j), InvariantMetric::identity(6));
  CHECK_FALSE(lemma_mixed_derivative_check(levi_civita(t), standard_10_frame(t)).holds);
}

TEST_CASE("covariant derivative shapes and errors") {
  auto t = oracle::fixture("kodaira_thurston");
  auto lc = levi_civita(t);
  const Variance v4[] = {Variance::Covariant, Variance::Covariant, Variance::Covariant, Variance::Covariant};
  try {
    covariant_derivative(lc, Tensor({4, 4, 4, 4}), v4);
    FAIL("expected UnsupportedField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedField);
  }
  // nabla of a vector field X_b with the contravariant rule gives gamma.
  const Variance v1[] = {Variance::Contravariant};
  Tensor x = Tensor::vector(unit_vector(4, 1));
  Tensor dx = covariant_derivative(lc, x, v1);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = 0; c < 4; ++c) CHECK(dx(a, c) == lc.gamma(a, 1, c));
  CHECK(nabla_omega(lc, t).dims() == std::vector<std::size_t>{4, 4, 4});
  CHECK_FALSE(nabla_omega(lc, t).is_zero());
}
