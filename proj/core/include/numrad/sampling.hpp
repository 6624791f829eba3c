#pragma once

#include <random>

#include "numrad/operators.hpp"
#include "numrad/spaces.hpp"

namespace numrad {

/// Random fixtures for the verification suites. Operator entries are i.i.d.
/// uniform on [-1, 1], independently for the real and imaginary parts in the
/// complex case, so any failing instance can be replayed from its seed.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream);

  Scalar scalar(Field field, double radius = 1.0);
  Scalar unimodular(Field field);
  Operator op(const NormedSpace& space);
  Vector unit_vector(const NormedSpace& space);
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 gen_;
};

}  // namespace numrad
