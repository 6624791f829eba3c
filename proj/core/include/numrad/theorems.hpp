#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/engine.hpp"
#include "numrad/operators.hpp"
#include "numrad/relations.hpp"
#include "numrad/spaces.hpp"

namespace numrad {

/// One assertion inside a verification run. A failed check keeps the
/// operators that violated it.
struct SubCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;  // the measured quantity
  double bound = 0.0;  // what it was compared against
  std::string detail;
  std::vector<Operator> instance;
};

struct VerificationOutcome {
  std::string id;
  std::string space;
  bool passed = true;
  std::vector<SubCheck> checks;
  std::vector<std::uint64_t> seeds;

  void add(SubCheck c);
  std::size_t failures() const;
};

/// T || alpha I for seeded random T and alpha (trial 0 uses alpha = 0).
VerificationOutcome verify_parallel_to_identity(const NormedSpace& space, int trials, std::uint64_t seed,
                                                const EngineConfig& cfg = {});

/// A = x*(.)x and B = y*(.)y with x smooth and x*(y) = 0 satisfy
/// A || I, I || B and not A || B. `x` defaults to the first basis vector.
/// Throws UsageError when x is not smooth.
VerificationOutcome nontransitivity_witness(const NormedSpace& space, std::optional<Vector> x = std::nullopt,
                                            const EngineConfig& cfg = {});

/// Right and left non-additivity of nr-Birkhoff orthogonality built from the
/// rank-one projection P = x*(.)x at x = e1.
VerificationOutcome nonadditivity_witness(const NormedSpace& space, const EngineConfig& cfg = {});

/// Rank-one parallelism forces vector parallelism; on Lp spaces the converse
/// also holds. On L1 the converse is shown to fail at (1,0), (0,1).
VerificationOutcome verify_rank_one_parallelism(const NormedSpace& space, int trials, std::uint64_t seed,
                                                const EngineConfig& cfg = {});

/// The l4 shift/swap example, the l1 rank-one example and the mixed-norm
/// classification of (-1, 1).
VerificationOutcome run_reference_examples(const EngineConfig& cfg = {});

/// I is nr-Birkhoff orthogonal to any non-injective T. Throws UsageError when
/// T has a trivial kernel.
RelationReport noninjective_orthogonality(const NormedSpace& space, const Operator& t,
                                          const EngineConfig& cfg = {});

VerificationOutcome verify_noninjective(const NormedSpace& space, std::uint64_t seed,
                                        const EngineConfig& cfg = {});

/// nr_parallel agrees with nr_parallel_via_orthogonality.
VerificationOutcome verify_parallel_orthogonality_equivalence(const NormedSpace& space, int trials,
                                                              std::uint64_t seed,
                                                              const EngineConfig& cfg = {});

/// Orthogonal pairs admit attained certificates for every tested lambda; on
/// real spaces a certified non-orthogonal pair lacks one for some lambda.
VerificationOutcome verify_orthogonality_certificates(const NormedSpace& space, int trials,
                                                      std::uint64_t seed, const EngineConfig& cfg = {});

/// The norm equation and v(T) = ||T|| give the same answer.
VerificationOutcome verify_daugavet(const NormedSpace& space, int trials, std::uint64_t seed,
                                    const EngineConfig& cfg = {});

struct SuiteOptions {
  std::uint64_t seed = 42;
  EngineConfig cfg;
};

/// Stable verifier ids: pvi, tpt, pva, pnv, examples, noninj, final-thm, vo1,
/// daugavet.
const std::vector<std::string>& verifier_ids();

/// Runs one verifier id (or "all") over its standard spaces. Outcomes come
/// back in registry order. Throws UsageError for an unknown id.
std::vector<VerificationOutcome> run_verifier(std::string_view id, const SuiteOptions& opts);

}  // namespace numrad
