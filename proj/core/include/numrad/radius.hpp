#pragma once

#include <vector>

#include "numrad/engine.hpp"
#include "numrad/operators.hpp"
#include "numrad/spaces.hpp"

namespace numrad {

/// A feasible pair for the numerical radius: x on the unit sphere, xstar in
/// J(x), and the attained value xstar(Tx).
struct RadiusWitness {
  Vector x;
  Functional xstar;
  Scalar attained;
};

struct RadiusResult {
  double value = 0.0;                    // certified lower bound for v(T)
  std::vector<RadiusWitness> witnesses;  // best first, each within tol of value
};

/// The largest |x*(Tx)| over members of J(x), together with the functional.
Support radius_integrand(const NormedSpace& space, const Operator& op, const Vector& x);

/// v(T) = sup { |x*(Tx)| : ||x|| = 1, x* in J(x) }.
RadiusResult numerical_radius(const NormedSpace& space, const Operator& op, const EngineConfig& cfg = {});

/// v(T + lambda S).
double radius_of_combination(const NormedSpace& space, const Operator& t, const Operator& s, Scalar lambda,
                             const EngineConfig& cfg = {});

}  // namespace numrad
