#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "numrad/spaces.hpp"
#include "numrad/types.hpp"

namespace numrad {

/// Search budgets shared by every sphere optimization.
struct EngineConfig {
  int grid_size = 2048;   // angle samples for 2-D spaces
  int refine_rounds = 3;  // zoom rounds around each grid candidate
  int multistarts = 64;   // random starts for dim >= 3
  std::uint64_t seed = 0;
  std::optional<double> tol;  // unset: 1e-7 in the plane, 1e-5 above
  int lambda_grid = 720;      // unimodular samples for complex relation searches
  bool record_sweep = false;  // keep the lambda / alpha evaluation trace

  void validate() const;

  /// Verdict tolerance for searched quantities in a space of this dimension.
  double tolerance_for(int dim) const;

  /// Same config with the sphere budgets divided by `factor` (floored at the
  /// validated minimums). Used for coarse scans ahead of a full refinement.
  EngineConfig coarse(int factor) const;
};

using SphereObjective = std::function<double(const Vector&)>;

struct SphereCandidate {
  Vector x;
  double value;
};

struct SphereArgmax {
  Vector x;
  double value;
  /// Refined local maxima, best first; candidates.front() matches (x, value).
  std::vector<SphereCandidate> candidates;
};

/// Maximizes an objective over the unit sphere of `space`.
///
/// Real plane: uniform angle grid, zoom refinement around the best local
/// maxima, then a golden-section polish. Complex plane: the same on the
/// (modulus angle, relative phase) rectangle, polished by compass search.
/// dim >= 3: compass search from seeded random starts plus the coordinate
/// axes. Each start draws from its own stream derived from (seed, index).
///
/// The returned value is always attained at the returned x.
SphereArgmax sphere_argmax(const NormedSpace& space, const SphereObjective& objective,
                           const EngineConfig& cfg = {});

struct LineOptimum {
  double arg;
  double value;
};

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Returns the best point evaluated.
LineOptimum golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                            int iterations = 80);
LineOptimum golden_maximize(const std::function<double(double)>& f, double lo, double hi,
                            int iterations = 80);

/// Stream seed for start `index` of a run seeded with `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace numrad
