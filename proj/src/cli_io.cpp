#include "qk/cli_io.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <charconv>
#include <iomanip>
#include <sstream>

#include "qk/error.hpp"
#include "qk/linalg.hpp"

namespace qk {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void syntax(const std::string& msg, const std::string& where) {
  throw Error(ErrorCode::SyntaxError, msg, where);
}

// Re-throws an engine error with a document location prefixed.
template <class F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::string at = e.where().empty() ? where : where + " " + e.where();
    throw Error(e.code(), e.detail(), at);
  }
}

Rational parse_rational(const json& v, const std::string& where) {
  if (v.is_string()) {
    return located(where, [&] { return Rational::parse(v.get<std::string>()); });
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  syntax("expected a rational string \"p/q\" or an integer", where);
}

std::size_t parse_index(std::string_view s, std::size_t dim, const std::string& where) {
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size() || k < 1 || k > dim) {
    syntax("index '" + std::string(s) + "' is not in 1.." + std::to_string(dim), where);
  }
  return k - 1;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& key, std::size_t dim, const std::string& where) {
  std::string s;
  for (char ch : key) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto comma = s.find(',');
  if (s.size() < 5 || s.front() != '[' || s.back() != ']' || comma == std::string::npos) {
    syntax("bracket key must look like \"[a,b]\"", where);
  }
  std::string_view sv(s);
  return {parse_index(sv.substr(1, comma - 1), dim, where), parse_index(sv.substr(comma + 1, s.size() - comma - 2), dim, where)};
}

Tensor parse_matrix(const json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array() || v.size() != dim) syntax("expected " + std::to_string(dim) + " rows", where);
  Tensor m({dim, dim});
  for (std::size_t a = 0; a < dim; ++a) {
    const std::string rw = where + "/" + std::to_string(a);
    if (!v[a].is_array() || v[a].size() != dim) syntax("expected " + std::to_string(dim) + " entries", rw);
    for (std::size_t b = 0; b < dim; ++b) m(a, b) = parse_rational(v[a][b], rw + "/" + std::to_string(b));
  }
  return m;
}

ordered_json matrix_json(const Tensor& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t a = 0; a < m.dim(0); ++a) {
    ordered_json row = ordered_json::array();
    for (std::size_t b = 0; b < m.dim(1); ++b) row.push_back(m(a, b).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string tuple_key(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (auto i : idx) {
    s += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

std::string frame_label(std::size_t k, std::size_t n) {
  return k < n ? "Z" + std::to_string(k + 1) : "Zb" + std::to_string(k - n + 1);
}

ordered_json connection_table(const Connection& c) {
  const std::size_t d = c.dim();
  ordered_json t = ordered_json::object();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      ordered_json row = ordered_json::object();
      for (std::size_t k = 0; k < d; ++k) {
        if (!c.gamma(a, b, k).is_zero()) row[std::to_string(k + 1)] = c.gamma(a, b, k).str();
      }
      if (!row.empty()) t[tuple_key({a, b})] = std::move(row);
    }
  }
  return t;
}

// nabla_{E_a} E_b expanded on the frame E.
ordered_json frame_connection_table(const Connection& c, const ComplexFrame& f) {
  const std::size_t d = 2 * f.n;
  ordered_json t = ordered_json::object();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      Vector v = f.coordinates(c.apply(f.vector(a), f.vector(b)));
      ordered_json row = ordered_json::object();
      for (std::size_t k = 0; k < d; ++k) {
        if (!v[k].is_zero()) row[frame_label(k, f.n)] = v[k].str();
      }
      if (!row.empty()) t["nabla_" + frame_label(a, f.n) + " " + frame_label(b, f.n)] = std::move(row);
    }
  }
  return t;
}

ordered_json curvature_components(const Tensor& r) {
  const std::size_t d = r.dim(0);
  ordered_json t = ordered_json::object();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t e = c + 1; e < d; ++e) {
          if (!r(a, b, c, e).is_zero()) t[tuple_key({a, b, c, e})] = r(a, b, c, e).str();
        }
      }
    }
  }
  return t;
}

std::size_t count_nonzero(const Tensor& t) {
  std::size_t k = 0;
  for (const auto& x : t.entries()) k += x.is_zero() ? 0 : 1;
  return k;
}

ordered_json flavor_json(const FlavorFlags& f) {
  return ordered_json{{"g1", f.gray.g1}, {"g2", f.gray.g2}, {"g3", f.gray.g3}, {"first_bianchi", f.bianchi_defect_zero}};
}

}  // namespace

HermitianTriple build_triple(const StructureDocument& doc) {
  const std::size_t d = doc.dim;
  if (d == 0) syntax("dimension must be positive", "/dim");
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "almost Hermitian structures need even dimension", "/dim");
  Tensor c({d, d, d});
  for (const auto& [ab, row] : doc.brackets) {
    for (const auto& [k, v] : row) {
      c(ab.first, ab.second, k) = v;
      c(ab.second, ab.first, k) = -v;
    }
  }
  LieAlgebra alg = located("/brackets", [&] { return LieAlgebra::from_structure_constants(std::move(c)); });
  AlmostComplexStructure j = located("/J", [&] { return AlmostComplexStructure::create(doc.j); });
  switch (doc.metric_source) {
    case MetricSource::Identity:
      return located("/g", [&] { return HermitianTriple::create(std::move(alg), std::move(j), InvariantMetric::identity(d)); });
    case MetricSource::Matrix:
      return located("/g", [&] { return HermitianTriple::create(std::move(alg), std::move(j), InvariantMetric::create(doc.metric)); });
    case MetricSource::Omega: {
      InvariantForm omega = located("/omega", [&] { return InvariantForm::from_matrix(doc.metric); });
      InvariantMetric g = located("/omega", [&] { return metric_from_taming(j, omega); });
      return located("/omega", [&] { return HermitianTriple::create(std::move(alg), std::move(j), std::move(g)); });
    }
  }
  syntax("unknown metric source", "/g");
}

StructureDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, e.what(), "byte " + std::to_string(e.byte));
  }
  if (!root.is_object()) syntax("document must be a JSON object", "/");
  for (const auto& [key, _] : root.items()) {
    if (key != "name" && key != "dim" && key != "brackets" && key != "J" && key != "g" && key != "omega") {
      syntax("unknown field '" + key + "'", "/" + key);
    }
  }
  StructureDocument doc;
  if (root.contains("name")) {
    if (!root["name"].is_string()) syntax("name must be a string", "/name");
    doc.name = root["name"].get<std::string>();
  }
  if (!root.contains("dim") || !root["dim"].is_number_unsigned()) syntax("dim must be a positive integer", "/dim");
  doc.dim = root["dim"].get<std::size_t>();
  const std::size_t d = doc.dim;
  if (d == 0 || d > InvariantForm::kMaxDim) syntax("dim must be in 1.." + std::to_string(InvariantForm::kMaxDim), "/dim");
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "almost Hermitian structures need even dimension", "/dim");

  if (root.contains("brackets")) {
    const json& br = root["brackets"];
    if (!br.is_object()) syntax("brackets must be an object", "/brackets");
    for (const auto& [key, row] : br.items()) {
      const std::string where = "/brackets/" + key;
      auto [a, b] = parse_pair(key, d, where);
      if (!row.is_object()) syntax("bracket value must map basis indices to rationals", where);
      for (const auto& [kk, v] : row.items()) {
        std::size_t k = parse_index(kk, d, where + "/" + kk);
        Rational value = parse_rational(v, where + "/" + kk);
        if (value.is_zero()) continue;
        if (a == b) throw Error(ErrorCode::NotAntisymmetric, "[X_a, X_a] must vanish", where + "/" + kk);
        auto lo = std::min(a, b);
        auto hi = std::max(a, b);
        if (a > b) value = -value;
        auto& slot = doc.brackets[{lo, hi}];
        auto it = slot.find(k);
        if (it != slot.end() && !(it->second == value)) {
          throw Error(ErrorCode::NotAntisymmetric, "[X_a, X_b] and [X_b, X_a] are not opposite", where + "/" + kk);
        }
        slot[k] = value;
      }
    }
  }
  if (!root.contains("J")) syntax("missing field", "/J");
  doc.j = parse_matrix(root["J"], d, "/J");

  const bool has_g = root.contains("g");
  const bool has_omega = root.contains("omega");
  if (has_g == has_omega) syntax("exactly one of g or omega is required", has_g ? "/omega" : "/g");
  if (has_g) {
    const json& g = root["g"];
    if (g.is_string()) {
      if (g.get<std::string>() != "identity") syntax("g must be a matrix or \"identity\"", "/g");
      doc.metric_source = MetricSource::Identity;
    } else {
      doc.metric_source = MetricSource::Matrix;
      doc.metric = parse_matrix(g, d, "/g");
    }
  } else {
    doc.metric_source = MetricSource::Omega;
    doc.metric = parse_matrix(root["omega"], d, "/omega");
    if (!is_antisymmetric(doc.metric)) throw Error(ErrorCode::NotAntisymmetric, "omega must be antisymmetric", "/omega");
  }
  doc.triple = build_triple(doc);
  return doc;
}

std::string emit_document(const StructureDocument& doc) {
  ordered_json root;
  root["name"] = doc.name;
  root["dim"] = doc.dim;
  ordered_json br = ordered_json::object();
  for (const auto& [ab, row] : doc.brackets) {
    ordered_json r = ordered_json::object();
    for (const auto& [k, v] : row) {
      if (!v.is_zero()) r[std::to_string(k + 1)] = v.str();
    }
    if (!r.empty()) br["[" + std::to_string(ab.first + 1) + "," + std::to_string(ab.second + 1) + "]"] = std::move(r);
  }
  root["brackets"] = std::move(br);
  root["J"] = matrix_json(doc.j);
  switch (doc.metric_source) {
    case MetricSource::Identity: root["g"] = "identity"; break;
    case MetricSource::Matrix: root["g"] = matrix_json(doc.metric); break;
    case MetricSource::Omega: root["omega"] = matrix_json(doc.metric); break;
  }
  return root.dump(2) + "\n";
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"iwasawa_g0", "iwasawa_alt", "kodaira_thurston", "flat_torus_4",
                                                 "flat_torus_6"};
  return names;
}

StructureDocument builtin_example(std::string_view name) {
  StructureDocument doc;
  doc.name = std::string(name);
  // 1-based helper: [X_a, X_b] gets v X_k.
  auto add = [&](std::size_t a, std::size_t b, std::size_t k, long v) {
    if (a < b) {
      doc.brackets[{a - 1, b - 1}][k - 1] = Rational(v);
    } else {
      doc.brackets[{b - 1, a - 1}][k - 1] = Rational(-v);
    }
  };
  if (name == "iwasawa_g0") {
    doc.dim = 6;
    add(1, 2, 3, 1);
    add(4, 5, 3, -1);
    add(2, 4, 6, 1);
    add(5, 1, 6, 1);
  } else if (name == "iwasawa_alt") {
    // Real form of [Z1,Z2] = [Z2,Z3] = 2(Z̄1 + Z̄3), [Z1,Z3] = 0 with Z_k = X_k - i X_{k+3}.
    doc.dim = 6;
    for (std::size_t k : {1, 3}) {
      add(1, 2, k, 1);
      add(4, 5, k, -1);
      add(2, 3, k, 1);
      add(5, 6, k, -1);
    }
    for (std::size_t k : {4, 6}) {
      add(2, 4, k, 1);
      add(1, 5, k, -1);
      add(3, 5, k, 1);
      add(2, 6, k, -1);
    }
  } else if (name == "kodaira_thurston") {
    doc.dim = 4;
    add(1, 2, 3, 1);
    doc.j = Tensor({4, 4});
    doc.j(2, 0) = 1;
    doc.j(0, 2) = -1;
    doc.j(3, 1) = 1;
    doc.j(1, 3) = -1;
    doc.metric_source = MetricSource::Omega;
    doc.metric = Tensor({4, 4});
    doc.metric(0, 2) = 1;
    doc.metric(2, 0) = -1;
    doc.metric(1, 3) = 1;
    doc.metric(3, 1) = -1;
  } else if (name == "flat_torus_4") {
    doc.dim = 4;
  } else if (name == "flat_torus_6") {
    doc.dim = 6;
  } else {
    throw Error(ErrorCode::UnknownExample, "no built-in example named '" + std::string(name) + "'");
  }
  if (doc.j.dims().empty() || doc.j.dim(0) != doc.dim) doc.j = AlmostComplexStructure::standard(doc.dim).matrix();
  doc.triple = build_triple(doc);
  return doc;
}

StructureDocument document_from_triple(const HermitianTriple& t, std::string name) {
  StructureDocument doc;
  doc.name = std::move(name);
  doc.dim = t.dim();
  const Tensor& c = t.algebra().constants();
  for (std::size_t a = 0; a < doc.dim; ++a) {
    for (std::size_t b = a + 1; b < doc.dim; ++b) {
      for (std::size_t k = 0; k < doc.dim; ++k) {
        if (!c(a, b, k).is_zero()) doc.brackets[{a, b}][k] = c(a, b, k).re();
      }
    }
  }
  doc.j = t.j().matrix();
  doc.metric_source = MetricSource::Matrix;
  doc.metric = t.g().matrix();
  doc.triple = t;
  return doc;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

ordered_json classification_json(const Classification& c) {
  return ordered_json{{"integrable", c.integrable},
                      {"kahler", c.kahler},
                      {"almost_kahler", c.almost_kahler},
                      {"quasi_kahler", c.quasi_kahler}};
}

ordered_json verdicts_json(const std::vector<TheoremVerdict>& vs) {
  ordered_json out = ordered_json::array();
  for (const auto& v : vs) {
    ordered_json j;
    j["id"] = v.id;
    j["applicable"] = v.applicable;
    j["hypotheses_met"] = v.hypotheses_met;
    j["conclusion_holds"] = v.conclusion_holds;
    j["counterexample"] = v.counterexample();
    ordered_json facts = ordered_json::object();
    for (const auto& [k, b] : v.facts) facts[k] = b;
    j["facts"] = std::move(facts);
    if (v.witness) j["witness"] = *v.witness;
    out.push_back(std::move(j));
  }
  return out;
}

ordered_json report_json(const StructureDocument& doc, std::string_view input_bytes) {
  const HermitianTriple t = doc.triple ? *doc.triple : build_triple(doc);
  StructureAnalysis a = StructureAnalysis::compute(t);
  CurvatureReport cr = curvature_report(a);

  ordered_json r;
  r["engine"] = {{"version", std::string(kEngineVersion)}, {"schema", kReportSchema}};
  r["input"] = {{"name", doc.name}, {"sha256", sha256_hex(input_bytes)}, {"dim", doc.dim}};
  r["classification"] = classification_json(a.classification);

  ordered_json frame = ordered_json::array();
  for (const auto& z : a.frame.z) {
    ordered_json v = ordered_json::array();
    for (const auto& x : z) v.push_back(x.str());
    frame.push_back(std::move(v));
  }
  r["frame"] = std::move(frame);
  r["connections"] = {{"levi_civita", connection_table(a.lc)},
                      {"canonical", connection_table(a.canonical)},
                      {"levi_civita_frame", frame_connection_table(a.lc, a.frame)},
                      {"canonical_frame", frame_connection_table(a.canonical, a.frame)}};

  ordered_json cj;
  cj["s"] = cr.s.str();
  cj["s_star"] = cr.s_star.str();
  cj["ricci"] = matrix_json(cr.ricci);
  cj["ricci_star"] = matrix_json(cr.ricci_star);
  cj["nabla_omega_sq"] = cr.nabla_omega_sq.str();
  cj["riemann"] = flavor_json(cr.riemann);
  cj["hermitian"] = flavor_json(cr.hermitian);
  cj["w4"] = cr.w4 ? ordered_json(cr.w4->str()) : ordered_json(nullptr);
  cj["hermitian_curvature_zero"] = cr.hermitian_curvature_zero;
  cj["f_condition"] = cr.f_condition;
  cj["tosatti_vanishes"] = cr.tosatti_vanishes;
  cj["tosatti_nonneg"] = to_string(cr.tosatti_nonneg);
  r["curvature"] = std::move(cj);

  r["components"] = {{"riemann", curvature_components(a.riemann.r)},
                     {"hermitian", curvature_components(a.hermitian.r)},
                     {"riemann_frame_nonzero", count_nonzero(a.riemann_frame)},
                     {"hermitian_frame_nonzero", count_nonzero(a.hermitian_frame)}};
  r["theorems"] = verdicts_json(evaluate_all(a));
  return r;
}

namespace {

void print_text(std::ostream& os, const ordered_json& j, const std::string& prefix) {
  if (j.is_object()) {
    if (j.empty()) os << prefix << ": {}\n";
    for (const auto& [k, v] : j.items()) print_text(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const ordered_json& x) { return x.is_primitive(); });
    if (flat) {
      os << prefix << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      os << "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) {
        std::string label = j[i].is_object() && j[i].contains("id") ? j[i]["id"].get<std::string>() : std::to_string(i);
        print_text(os, j[i], prefix + "[" + label + "]");
      }
    }
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string report_text(const ordered_json& report) {
  std::ostringstream os;
  print_text(os, report, "");
  return os.str();
}

}  // namespace qk
