#pragma once

#include <optional>

#include "numrad/engine.hpp"
#include "numrad/spaces.hpp"
#include "numrad/types.hpp"

namespace numrad {

/// Dense linear operator on F^n, stored row-major-agnostic as a small matrix.
class Operator {
 public:
  Operator() = default;
  explicit Operator(MatrixData m);

  static Operator identity(int dim);
  static Operator zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const MatrixData& matrix() const { return m_; }
  Scalar operator()(int row, int col) const { return m_(row, col); }

  Coords apply(const Coords& x) const { return m_ * x; }
  Vector apply(const Vector& x) const { return Vector(m_ * x.coords); }

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(const Operator& a) { return Operator(-a.m_); }
  friend Operator operator*(Scalar c, const Operator& a) { return Operator(c * a.m_); }

  bool operator==(const Operator& other) const { return m_ == other.m_; }

 private:
  MatrixData m_;
};

/// Throws UsageError on a shape mismatch or complex entries in a real space.
void check_operator(const NormedSpace& space, const Operator& op, const char* what = "operator");

/// z -> xstar(z) x.
Operator rank_one(const Functional& xstar, const Vector& x);

/// sup ||Tx|| over the unit sphere (a certified lower bound).
double operator_norm(const NormedSpace& space, const Operator& op, const EngineConfig& cfg = {});

/// A unit-norm kernel vector when rank(op) < dim, judged with a relative pivot
/// threshold.
std::optional<Vector> kernel_vector(const NormedSpace& space, const Operator& op,
                                    double rel_tol = kClosedFormTol);

namespace fixtures {

/// (x, y) -> (0, x)
Operator shift();
/// (x, y) -> (y, x)
Operator swap();
Operator rotation(double theta);
Operator diagonal(std::initializer_list<Scalar> entries);

}  // namespace fixtures

}  // namespace numrad
