#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qk/error.hpp"
#include "qk/hermitian.hpp"
#include "qk/linalg.hpp"

using namespace qk;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Singular;
}

}  // namespace

TEST_CASE("almost complex structure validation") {
  auto j = AlmostComplexStructure::standard(4);
  CHECK(matmul(j.matrix(), j.matrix()) == Scalar(-1) * Tensor::identity(4));
  CHECK(j.apply(unit_vector(4, 0)) == unit_vector(4, 2));
  CHECK(code_of([] { AlmostComplexStructure::create(Tensor::identity(4)); }) == ErrorCode::JSquaredNotMinusIdentity);
  CHECK(code_of([] { AlmostComplexStructure::create(Tensor::identity(3)); }) == ErrorCode::OddDimension);
  CHECK(code_of([] { AlmostComplexStructure::create(Tensor({2, 3})); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([] { AlmostComplexStructure::standard(5); }) == ErrorCode::OddDimension);
}

TEST_CASE("metric and triple validation") {
  CHECK(code_of([] { InvariantMetric::create(Tensor::from_rows({{1, 2}, {2, 1}})); }) ==
        ErrorCode::MetricNotPositiveDefinite);
  CHECK(code_of([] { InvariantMetric::create(Tensor::from_rows({{1, 1}, {0, 1}})); }) ==
        ErrorCode::MetricNotPositiveDefinite);
  auto g = InvariantMetric::create(Tensor::diagonal({1, 2, 1, 1}));
  CHECK(code_of([&] { HermitianTriple::create(LieAlgebra::abelian(4), AlmostComplexStructure::standard(4), g); }) ==
        ErrorCode::MetricNotHermitian);
  CHECK(code_of([] {
          HermitianTriple::create(LieAlgebra::abelian(3), AlmostComplexStructure::standard(4), InvariantMetric::identity(3));
        }) == ErrorCode::OddDimension);
  auto t = HermitianTriple::create(LieAlgebra::abelian(4), AlmostComplexStructure::standard(4),
                                   InvariantMetric::create(Tensor::diagonal({2, 3, 2, 3})));
  // omega(X_1, X_3) = g(J X_1, X_3) = g(X_3, X_3)
  CHECK(t.omega()(0, 2) == Scalar(2));
  CHECK(t.omega()(2, 0) == Scalar(-2));
}

TEST_CASE("taming route reproduces the identity metric on Kodaira-Thurston") {
  auto t = oracle::fixture("kodaira_thurston");
  CHECK(t.g().matrix() == Tensor::identity(4));
  InvariantForm omega = wedge(InvariantForm::basis_form(4, {0}), InvariantForm::basis_form(4, {2})) +
                        wedge(InvariantForm::basis_form(4, {1}), InvariantForm::basis_form(4, {3}));
  CHECK(t.omega_form() == omega);
  // -omega does not tame J
  CHECK(code_of([&] { metric_from_taming(t.j(), Scalar(-1) * omega); }) == ErrorCode::NotTamed);
  CHECK(code_of([&] { metric_from_taming(t.j(), InvariantForm::basis_form(4, {0, 2})); }) == ErrorCode::NotTamed);
}

TEST_CASE("complex frame") {
  for (const char* name : {"iwasawa_g0", "kodaira_thurston", "flat_torus_4"}) {
    auto t = oracle::fixture(name);
    auto f = standard_10_frame(t);
    for (std::size_t k = 0; k < f.n; ++k) {
      CHECK(t.j().apply(f.z[k]) == Scalar::i() * f.z[k]);
      CHECK(f.vector(f.n + k) == conj(f.z[k]));
    }
    CHECK(matmul(f.basis, f.inverse) == Tensor::identity(t.dim()));
    CHECK(is_hermitian(f.hermitian_gram));
    CHECK(matmul(f.hermitian_gram, f.gram_inverse) == Tensor::identity(f.n));
    // g(Z_i, Z_j) = 0 for a Hermitian metric
    for (std::size_t a = 0; a < f.n; ++a)
      for (std::size_t b = 0; b < f.n; ++b) CHECK(t.g()(f.z[a], f.z[b]).is_zero());
  }
  auto t = oracle::fixture("kodaira_thurston");
  auto f = standard_10_frame(t);
  // Z_1 = X_1 - i X_3, Z_2 = X_2 - i X_4
  CHECK(f.z[0] == Vector{1, 0, -Scalar::i(), 0});
  CHECK(f.z[1] == Vector{0, 1, 0, -Scalar::i()});
  CHECK(code_of([&] { make_frame(t, {conj(f.z[0]), f.z[1]}); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("Nijenhuis tensor by hand") {
  auto t = oracle::fixture("kodaira_thurston");
  // N(X_1, X_2) = [X_3, X_4] - J[X_3, X_2] - J[X_1, X_4] - [X_1, X_2] = -X_3
  CHECK(nijenhuis(t, unit_vector(4, 0), unit_vector(4, 1)) == Vector{0, 0, -1, 0});
  // N(X_2, X_3) = [X_4, -X_1] - J[X_4, X_3] - J[X_2, -X_1] - [X_2, X_3] = -J X_3 = X_1
  CHECK(nijenhuis(t, unit_vector(4, 1), unit_vector(4, 2)) == Vector{1, 0, 0, 0});
  Tensor n = nijenhuis_tensor(t);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      CHECK(nijenhuis(t, unit_vector(4, a), unit_vector(4, b)) == Vector{n(a, b, 0), n(a, b, 1), n(a, b, 2), n(a, b, 3)});
  // N(JX, Y) = -J N(X, Y)
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      CHECK(nijenhuis(t, t.j().apply(unit_vector(4, a)), unit_vector(4, b)) ==
            Scalar(-1) * t.j().apply(nijenhuis(t, unit_vector(4, a), unit_vector(4, b))));
}

TEST_CASE("classification of the fixtures") {
  auto iw = classify(oracle::fixture("iwasawa_g0"));
  CHECK(iw.quasi_kahler);
  CHECK_FALSE(iw.almost_kahler);
  CHECK_FALSE(iw.integrable);
  CHECK_FALSE(iw.kahler);
  auto alt = classify(oracle::fixture("iwasawa_alt"));
  CHECK(alt.quasi_kahler);
  CHECK_FALSE(alt.almost_kahler);
  CHECK_FALSE(alt.integrable);
  auto kt = classify(oracle::fixture("kodaira_thurston"));
  CHECK(kt.almost_kahler);
  CHECK(kt.quasi_kahler);
  CHECK_FALSE(kt.integrable);
  auto flat = classify(oracle::fixture("flat_torus_6"));
  CHECK(flat.kahler);
  CHECK(flat.integrable);
  // Pairing (1,2), (4,5), (3,6) gives Z_1 = X_1 - i X_2, Z_2 = X_4 - i X_5,
  // Z_3 = X_3 - i X_6 with [Z_1, Z_2] = 0 and Z_3 central: integrable. Then
  // quasi-Kähler would force Kähler, and d omega contains -e_12 ^ e_6 != 0.
  Tensor j({6, 6});
  j(1, 0) = 1, j(0, 1) = -1, j(4, 3) = 1, j(3, 4) = -1, j(5, 2) = 1, j(2, 5) = -1;
  auto t = oracle::fixture("iwasawa_g0");
  auto h = HermitianTriple::create(t.algebra(), AlmostComplexStructure::create(j), InvariantMetric::identity(6));
  auto c = classify(h);
  CHECK(c.integrable);
  CHECK_FALSE(c.almost_kahler);
  CHECK_FALSE(c.quasi_kahler);
}
