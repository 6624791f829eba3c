#include "numrad/operators.hpp"

#include <Eigen/LU>
#include <cmath>

namespace numrad {

Operator::Operator(MatrixData m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw UsageError("operator matrix must be square");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = 0; j < m_.cols(); ++j) {
      if (!std::isfinite(m_(i, j).real()) || !std::isfinite(m_(i, j).imag())) {
        throw UsageError("operator matrix has a non-finite entry");
      }
    }
  }
}

Operator Operator::identity(int dim) { return Operator(MatrixData::Identity(dim, dim)); }
Operator Operator::zero(int dim) { return Operator(MatrixData::Zero(dim, dim)); }

Operator& Operator::operator+=(const Operator& other) {
  if (other.dim() != dim()) throw UsageError("operator dimensions differ");
  m_ += other.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  if (other.dim() != dim()) throw UsageError("operator dimensions differ");
  m_ -= other.m_;
  return *this;
}

void check_operator(const NormedSpace& space, const Operator& op, const char* what) {
  if (op.dim() != space.dim()) {
    throw UsageError(std::string(what) + " is " + std::to_string(op.dim()) + "x" + std::to_string(op.dim()) +
                     ", space dimension is " + std::to_string(space.dim()));
  }
  if (space.is_real() && !op.matrix().imag().isZero(0.0)) {
    throw UsageError(std::string(what) + " has complex entries in a real space");
  }
}

Operator rank_one(const Functional& xstar, const Vector& x) {
  if (xstar.dim() != x.dim()) {
    throw UsageError("rank_one: functional has " + std::to_string(xstar.dim()) + " coordinates, vector has " +
                     std::to_string(x.dim()));
  }
  return Operator(x.coords * xstar.coords.transpose());
}

double operator_norm(const NormedSpace& space, const Operator& op, const EngineConfig& cfg) {
  check_operator(space, op);
  auto best = sphere_argmax(space, [&](const Vector& x) { return space.norm(op.apply(x.coords)); }, cfg);
  return best.value;
}

std::optional<Vector> kernel_vector(const NormedSpace& space, const Operator& op, double rel_tol) {
  check_operator(space, op);
  Eigen::FullPivLU<MatrixData> lu(op.matrix());
  lu.setThreshold(rel_tol);
  if (lu.rank() == op.dim()) return std::nullopt;
  const MatrixData ker = lu.kernel();
  return space.normalize(Vector(Coords(ker.col(0))));
}

namespace fixtures {

Operator shift() {
  MatrixData m(2, 2);
  m << 0.0, 0.0, 1.0, 0.0;
  return Operator(m);
}

Operator swap() {
  MatrixData m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return Operator(m);
}

Operator rotation(double theta) {
  MatrixData m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return Operator(m);
}

Operator diagonal(std::initializer_list<Scalar> entries) {
  const int n = static_cast<int>(entries.size());
  MatrixData m = MatrixData::Zero(n, n);
  int i = 0;
  for (Scalar e : entries) {
    m(i, i) = e;
    ++i;
  }
  return Operator(m);
}

}  // namespace fixtures

}  // namespace numrad
