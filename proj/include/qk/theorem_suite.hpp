#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qk/analysis.hpp"
#include "qk/lie_algebra.hpp"

namespace qk {

struct TheoremVerdict {
  std::string id;
  /// False when the statement's standing assumptions (e.g. quasi-Kähler)
  /// do not hold, so the statement says nothing about this structure.
  bool applicable = true;
  bool hypotheses_met = false;
  bool conclusion_holds = false;
  /// Named intermediate truth values, e.g. both sides of an equivalence.
  std::map<std::string, bool> facts;
  std::optional<std::string> witness;

  bool counterexample() const { return applicable && hypotheses_met && !conclusion_holds; }
};

/// Bianchi(R~) = 0 <=> (G3 and R(Z_i,Z_j,Z̄_k,Z̄_l) = F(Z̄_k,Z_i,Z_j,Z̄_l)/4).
/// The verdict's hypotheses are always met; the conclusion is agreement.
/// Throws NotQuasiKahler.
TheoremVerdict theorem_main(const StructureAnalysis& a);

/// Almost Kähler and Bianchi(R~) = 0 imply N = 0. Throws NotAlmostKahler.
TheoremVerdict corollary_almost_kahler(const StructureAnalysis& a);

struct FramePattern {
  bool mixed_brackets_zero = false;
  bool holomorphic_brackets_antiholomorphic = false;
  bool holds() const { return mixed_brackets_zero && holomorphic_brackets_antiholomorphic; }
};

/// [Z_i, Z̄_j] = 0 and [Z_i, Z_j] of type (0,1) on the given frame.
FramePattern rflat_frame_pattern(const LieAlgebra& alg, const ComplexFrame& frame);

/// Columns W_1, W_2, W_3, W̄_1, W̄_2, W̄_3 with [W_1, W_2] = W̄_3,
/// [W̄_1, W̄_2] = W_3 and every other basis bracket zero.
/// Throws WrongDimension, NotApplicable, PivotNotFound.
FrameChange heisenberg_normalize(const LieAlgebra& alg, const AlmostComplexStructure& j);

/// R~ = 0 implies nilpotency step <= 2. Throws NotQuasiKahler, HypothesisFailed.
TheoremVerdict two_step_check(const StructureAnalysis& a);

/// A(i, j, k): coefficient of Z̄_k in [Z_i, Z_j].
Tensor bracket_coefficients(const LieAlgebra& alg, const ComplexFrame& frame);

/// Almost Kähler with the flat frame pattern: checks the cyclic identity
/// g([Z_i,Z_j],Z_k) + g([Z_k,Z_i],Z_j) + g([Z_j,Z_k],Z_i) = 0, the Jacobi
/// consequence sum_k A(i,j,k) conj(A(k,r,s)) = 0, and then A = 0, N = 0.
/// Throws NotAlmostKahler, HypothesisFailed.
TheoremVerdict flat_coframe_proposition(const StructureAnalysis& a);

/// Quasi-Kähler and cyclic sum of (nabla_X N)(Y, Z) zero imply N = 0.
/// Throws NotQuasiKahler.
TheoremVerdict cyclic_nabla_n_check(const StructureAnalysis& a);

struct TamingResult {
  bool solvable = false;
  /// Coefficients of beta = a zeta_12 + b zeta_23 + c zeta_13 when solvable.
  Scalar a, b, c;
  /// When unsolvable: y with y^T M = 0 and y^T rhs != 0 for the real system
  /// M x = rhs written over the 3-form components.
  Vector certificate;
  std::vector<Vector> system;
  Vector rhs;
};

/// Searches a constant beta = a zeta_12 + b zeta_23 + c zeta_13 with
/// d(omega + beta + conj beta) = 0. Throws WrongDimension.
TamingResult taming_obstruction(const HermitianTriple& t, const ComplexFrame& frame);

/// True when `certificate` proves the system inconsistent.
bool certifies_inconsistency(const TamingResult& r);

/// Runs every theorem; preconditions that fail give applicable = false.
std::vector<TheoremVerdict> evaluate_all(const StructureAnalysis& a);

enum class SampleMode { Generic, QuasiKahler, AlmostKahler, FlatPattern, FlatAlmostKahler };

std::string to_string(SampleMode m);
std::optional<SampleMode> sample_mode_from_string(std::string_view s);

struct SearchOptions {
  std::size_t dim = 4;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  SampleMode mode = SampleMode::QuasiKahler;
  /// Candidate draws allowed per sample before giving up on it.
  std::size_t max_attempts = 400;
};

struct SearchRecord {
  std::size_t index = 0;
  std::size_t attempts = 0;
  /// Candidates drawn for this sample whose brackets were nonzero but broke Jacobi.
  std::size_t jacobi_rejections = 0;
  std::optional<HermitianTriple> triple;
  Classification classification;
  bool hermitian_curvature_zero = false;
  bool frame_pattern = false;
  std::optional<int> nilpotency;
  std::vector<TheoremVerdict> verdicts;

  bool has_counterexample() const;
};

/// Draws one structure; nullopt when max_attempts candidates all fail.
std::optional<HermitianTriple> sample_structure(std::size_t dim, SampleMode mode, std::uint64_t sample_seed,
                                                std::size_t max_attempts, std::size_t* attempts = nullptr,
                                                std::size_t* jacobi_rejections = nullptr);

/// Seed of sample `index`; depends only on (seed, index), never on workers.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

/// Deterministic search; records are ordered by index whatever the worker
/// count. Throws WrongDimension for odd or unsupported dimensions.
std::vector<SearchRecord> random_structure_search(const SearchOptions& opt);

}  // namespace qk
