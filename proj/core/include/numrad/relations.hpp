#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numrad/engine.hpp"
#include "numrad/operators.hpp"
#include "numrad/radius.hpp"
#include "numrad/spaces.hpp"

namespace numrad {

struct RelationWitness {
  std::optional<Vector> x;
  std::optional<Functional> xstar;
  Scalar coefficient{1.0, 0.0};  // the unimodular lambda or the scalar alpha
  std::vector<Scalar> attained;  // values realised at (x, xstar), relation specific
};

struct SweepPoint {
  Scalar param;
  double value;
};

/// Outcome of a relation decision.
///
/// gap = achieved - required. A relation holds when gap >= -tol; a "false"
/// verdict counts as certified only when gap <= -margin, since the searches
/// under-estimate suprema.
struct RelationReport {
  std::string relation;
  bool verdict = false;
  double achieved = 0.0;
  double required = 0.0;
  double gap = 0.0;
  double tol = 0.0;
  double margin = kStrictMargin;
  std::optional<RelationWitness> witness;
  std::vector<SweepPoint> sweep;

  bool strictly_false() const { return !verdict && gap <= -margin; }
};

/// x || y: max over unimodular lambda of ||x + lambda y|| reaches ||x|| + ||y||.
RelationReport norm_parallel_vectors(const NormedSpace& space, const Vector& x, const Vector& y,
                                     const EngineConfig& cfg = {});

/// Birkhoff orthogonality: ||x + alpha y|| >= ||x|| for every scalar alpha.
RelationReport birkhoff_vectors(const NormedSpace& space, const Vector& x, const Vector& y,
                                const EngineConfig& cfg = {});

/// x is Birkhoff orthogonal to ||y|| x + lambda ||x|| y for some unimodular
/// lambda. Equivalent to x || y.
RelationReport parallel_via_birkhoff(const NormedSpace& space, const Vector& x, const Vector& y,
                                     const EngineConfig& cfg = {});

/// Numerical-radius parallelism: v(T + lambda S) = v(T) + v(S) for some lambda.
RelationReport nr_parallel(const NormedSpace& space, const Operator& t, const Operator& s,
                           const EngineConfig& cfg = {});

/// Numerical-radius Birkhoff orthogonality: v(T + alpha S) >= v(T) for all alpha.
RelationReport nr_birkhoff(const NormedSpace& space, const Operator& t, const Operator& s,
                           const EngineConfig& cfg = {});

struct OrthogonalityCertificate {
  Vector x;
  Functional xstar;
  Scalar t_value;    // xstar(Tx)
  Scalar s_value;    // xstar(Sx)
  double real_part;  // Re[lambda conj(xstar(Tx)) xstar(Sx)]
};

/// A feasible pair with |x*(Tx)| >= v(T) - tol and
/// Re[lambda conj(x*(Tx)) x*(Sx)] >= -tol, if the search finds one.
std::optional<OrthogonalityCertificate> orthogonality_certificate(const NormedSpace& space, const Operator& t,
                                                                  const Operator& s, Scalar lambda,
                                                                  const EngineConfig& cfg = {});

/// T is nr-Birkhoff orthogonal to v(S) T + lambda v(T) S for some lambda.
/// Equivalent to nr_parallel(T, S).
RelationReport nr_parallel_via_orthogonality(const NormedSpace& space, const Operator& t, const Operator& s,
                                             const EngineConfig& cfg = {});

struct DaugavetReport {
  RelationReport equation;  // max_lambda ||I + lambda T|| >= 1 + ||T||
  double radius = 0.0;      // v(T)
  double norm = 0.0;        // ||T||
  bool radius_equals_norm = false;
  bool agree = false;
};

DaugavetReport daugavet_check(const NormedSpace& space, const Operator& t, const EngineConfig& cfg = {});

}  // namespace numrad
