#include "numrad/sampling.hpp"

#include <numbers>

#include "numrad/engine.hpp"

namespace numrad {

Sampler::Sampler(std::uint64_t seed, std::uint64_t stream) : gen_(derive_seed(seed, stream)) {}

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

Scalar Sampler::scalar(Field field, double radius) {
  const double re = uniform(-radius, radius);
  const double im = field == Field::Complex ? uniform(-radius, radius) : 0.0;
  return {re, im};
}

Scalar Sampler::unimodular(Field field) {
  if (field == Field::Real) return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi));
}

Operator Sampler::op(const NormedSpace& space) {
  const int n = space.dim();
  MatrixData m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = scalar(space.field());
  }
  return Operator(m);
}

Vector Sampler::unit_vector(const NormedSpace& space) {
  Coords c(space.dim());
  do {
    for (int i = 0; i < space.dim(); ++i) c(i) = scalar(space.field());
  } while (space.norm(c) < 1e-3);
  return space.normalize(Vector(c));
}

}  // namespace numrad
