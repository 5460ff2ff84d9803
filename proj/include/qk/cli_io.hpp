#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qk/analysis.hpp"
#include "qk/hermitian.hpp"
#include "qk/theorem_suite.hpp"

namespace qk {

inline constexpr std::string_view kEngineVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

enum class MetricSource { Identity, Matrix, Omega };

/// A structure file. Bracket keys are 0-based pairs (a < b) internally and
/// "[a,b]" with 1-based indices on disk.
struct StructureDocument {
  std::string name;
  std::size_t dim = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Rational>> brackets;
  Tensor j;
  MetricSource metric_source = MetricSource::Identity;
  /// g for Matrix, omega for Omega, empty for Identity.
  Tensor metric;
  /// Filled by parse_document and builtin_example.
  std::optional<HermitianTriple> triple;
};

/// Throws Error with a JSON-path location: SyntaxError, NotAntisymmetric,
/// JacobiViolation, JSquaredNotMinusIdentity, MetricNotPositiveDefinite,
/// MetricNotHermitian, NotTamed, OddDimension.
StructureDocument parse_document(std::string_view text);

/// Validates the raw fields and builds the triple.
HermitianTriple build_triple(const StructureDocument& doc);

/// Canonical JSON: fixed key order, sorted brackets, zero entries dropped.
std::string emit_document(const StructureDocument& doc);

/// Throws UnknownExample.
StructureDocument builtin_example(std::string_view name);
const std::vector<std::string>& builtin_names();

/// Document with an explicit metric matrix for a triple (used for witnesses).
StructureDocument document_from_triple(const HermitianTriple& t, std::string name);

std::string sha256_hex(std::string_view bytes);

nlohmann::ordered_json classification_json(const Classification& c);
nlohmann::ordered_json verdicts_json(const std::vector<TheoremVerdict>& v);

/// Full report: classification, connection tables, every CurvatureReport
/// field, nonzero curvature components and theorem verdicts.
nlohmann::ordered_json report_json(const StructureDocument& doc, std::string_view input_bytes);
std::string report_text(const nlohmann::ordered_json& report);

}  // namespace qk
