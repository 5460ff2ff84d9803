#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qk/cli_io.hpp"
#include "qk/error.hpp"
#include "qk/forms.hpp"

using namespace qk;
namespace fs = std::filesystem;

namespace {

Error error_of(std::string_view text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error thrown");
  return Error(ErrorCode::Singular, "");
}

const char* kTorus = R"({"name": "t", "dim": 4, "brackets": {}, "J": [["0","0","-1","0"],["0","0","0","-1"],["1","0","0","0"],["0","1","0","0"]], "g": "identity"})";

std::string torus_with(const std::string& from, const std::string& to) {
  std::string s = kTorus;
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

fs::path scratch_dir() {
  fs::path p = fs::temp_directory_path() / "qk_cli_test";
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  std::string cmd = std::string(QK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

}  // namespace

TEST_CASE("fixtures round-trip through the canonical emitter") {
  for (const auto& name : builtin_names()) {
    auto doc = builtin_example(name);
    std::string text = emit_document(doc);
    auto back = parse_document(text);
    CHECK(emit_document(back) == text);
    REQUIRE(back.triple);
    CHECK(back.triple->algebra().constants() == doc.triple->algebra().constants());
    CHECK(back.triple->j().matrix() == doc.triple->j().matrix());
    CHECK(back.triple->g().matrix() == doc.triple->g().matrix());
  }
  CHECK(builtin_names().size() == 5);
  try {
    builtin_example("heisenberg");
    FAIL("expected UnknownExample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownExample);
  }
}

TEST_CASE("fixture contents") {
  auto iw = builtin_example("iwasawa_g0");
  CHECK(iw.brackets.size() == 4);
  CHECK(iw.brackets.at({0, 1}).at(2) == Rational(1));
  CHECK(iw.brackets.at({3, 4}).at(2) == Rational(-1));
  CHECK(iw.brackets.at({1, 3}).at(5) == Rational(1));
  CHECK(iw.brackets.at({0, 4}).at(5) == Rational(-1));
  CHECK(classify(*iw.triple).quasi_kahler);

  auto alt = builtin_example("iwasawa_alt");
  const auto& t = *alt.triple;
  auto f = standard_10_frame(t);
  // [Z_1, Z_2] = [Z_2, Z_3] = 2(Z̄_1 + Z̄_3), [Z_1, Z_3] = 0
  Vector target = Scalar(2) * (f.vector(3) + f.vector(5));
  CHECK(oracle::bracket(t, f.z[0], f.z[1]) == target);
  CHECK(oracle::bracket(t, f.z[1], f.z[2]) == target);
  CHECK(is_zero(oracle::bracket(t, f.z[0], f.z[2])));
  // coframe consistency: d alpha_2 = d alpha_5 = 0
  CHECK(exterior_derivative(t.algebra(), InvariantForm::basis_form(6, {1})).is_zero());
  CHECK(exterior_derivative(t.algebra(), InvariantForm::basis_form(6, {4})).is_zero());

  auto flat = builtin_example("flat_torus_4");
  CHECK(flat.brackets.empty());
  CHECK(flat.j == AlmostComplexStructure::standard(4).matrix());
  auto kt = builtin_example("kodaira_thurston");
  CHECK(kt.metric_source == MetricSource::Omega);
  CHECK(kt.triple->j().apply(unit_vector(4, 0)) == unit_vector(4, 2));
}

TEST_CASE("parse errors carry locations") {
  auto e = error_of(torus_with(R"(,["0","1","0","0"]])", R"(])"));
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.where().find("/J") != std::string::npos);

  e = error_of(torus_with(R"("brackets": {})", R"("brackets": {"[1,1]": {"2": "1"}})"));
  CHECK(e.code() == ErrorCode::NotAntisymmetric);
  CHECK(e.where().find("[1,1]") != std::string::npos);

  // [X1,X2] = X1, [X2,X3] = X2, [X3,X1] = X3 breaks Jacobi
  e = error_of(torus_with(R"("brackets": {})", R"("brackets": {"[1,2]": {"1": "1"}, "[2,3]": {"2": "1"}, "[3,1]": {"3": "1"}})"));
  CHECK(e.code() == ErrorCode::JacobiViolation);

  e = error_of(torus_with(R"("dim": 4)", R"("dim": 3)"));
  CHECK(e.code() == ErrorCode::OddDimension);

  e = error_of(torus_with(R"("0","0","-1","0")", R"("0","0","1","0")"));
  CHECK(e.code() == ErrorCode::JSquaredNotMinusIdentity);

  e = error_of(torus_with(R"("g": "identity")", R"("g": [["1","2","0","0"],["2","1","0","0"],["0","0","1","0"],["0","0","0","1"]])"));
  CHECK(e.code() == ErrorCode::MetricNotPositiveDefinite);

  e = error_of(torus_with(R"("g": "identity")", R"("omega": [["0","0","-1","0"],["0","0","0","-1"],["1","0","0","0"],["0","1","0","0"]])"));
  CHECK(e.code() == ErrorCode::NotTamed);

  e = error_of(torus_with(R"("g": "identity")", R"("g": "identity", "colour": "red")"));
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = error_of(torus_with(R"("brackets": {})", R"("brackets": {"[1,2]": {"3": "1/0"}})"));
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = error_of("{\"name\": ");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.where().rfind("byte", 0) == 0);
}

TEST_CASE("bracket keys are normalized") {
  auto a = parse_document(torus_with(R"("brackets": {})", R"("brackets": {"[2,1]": {"3": "-1/2"}})"));
  CHECK(a.brackets.at({0, 1}).at(2) == Rational(1, 2));
  auto b = parse_document(torus_with(R"("brackets": {})", R"("brackets": {"[1,2]": {"3": "2/4"}})"));
  CHECK(emit_document(a) == emit_document(b));
}

TEST_CASE("reports are deterministic") {
  auto doc = builtin_example("iwasawa_g0");
  std::string text = emit_document(doc);
  auto r1 = report_json(parse_document(text), text).dump(2);
  auto r2 = report_json(parse_document(text), text).dump(2);
  CHECK(r1 == r2);
  auto r = report_json(doc, text);
  CHECK(r["input"]["sha256"] == sha256_hex(text));
  CHECK(r["engine"]["version"] == std::string(kEngineVersion));
  CHECK(r["curvature"]["s"] == "-2");
  CHECK(r["curvature"]["hermitian_curvature_zero"] == true);
  CHECK(r["curvature"]["riemann"]["g2"] == true);
  CHECK(r["components"]["hermitian_frame_nonzero"] == 0);
  CHECK(r["components"]["hermitian"].empty());
  CHECK(report_text(r) == report_text(r));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("command line exit codes") {
  fs::path dir = scratch_dir();
  fs::path good = dir / "iwasawa.json";
  fs::path bad = dir / "bad.json";
  write_file(good, emit_document(builtin_example("iwasawa_g0")));
  write_file(bad, torus_with(R"("brackets": {})", R"("brackets": {"[1,1]": {"2": "1"}})"));
  CHECK(run("validate " + good.string()) == 0);
  CHECK(run("classify " + good.string()) == 0);
  CHECK(run("report " + good.string() + " --format json") == 0);
  CHECK(run("theorems " + good.string()) == 0);
  CHECK(run("example flat_torus_6 --emit") == 0);
  CHECK(run("validate " + bad.string()) == 2);
  CHECK(run("validate " + (dir / "missing.json").string()) == 2);
  CHECK(run("") == 64);
  CHECK(run("frobnicate") == 64);
  CHECK(run("example nosuch") == 64);
  CHECK(run("search --dim 5 --samples 1 --seed 1") == 64);
  CHECK(run("report " + good.string() + " --format yaml") == 64);
  CHECK(run("search --dim 4 --samples 100 --seed 7") == 0);
}
