#include "numrad/radius.hpp"

#include <cmath>

namespace numrad {

Support radius_integrand(const NormedSpace& space, const Operator& op, const Vector& x) {
  return supporting_functional(space, x, op.apply(x.coords));
}

RadiusResult numerical_radius(const NormedSpace& space, const Operator& op, const EngineConfig& cfg) {
  check_operator(space, op);
  const auto best = sphere_argmax(
      space, [&](const Vector& x) { return std::abs(radius_integrand(space, op, x).value); }, cfg);

  const double tol = cfg.tolerance_for(space.dim());
  RadiusResult out;
  out.value = best.value;
  for (const auto& cand : best.candidates) {
    if (cand.value < best.value - tol) break;
    const Support s = radius_integrand(space, op, cand.x);
    out.witnesses.push_back({cand.x, s.xstar, s.value});
  }
  return out;
}

double radius_of_combination(const NormedSpace& space, const Operator& t, const Operator& s, Scalar lambda,
                             const EngineConfig& cfg) {
  if (space.is_real() && lambda.imag() != 0.0) {
    throw UsageError("complex coefficient for operators on a real space");
  }
  return numerical_radius(space, t + lambda * s, cfg).value;
}

}  // namespace numrad
