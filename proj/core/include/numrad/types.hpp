#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace numrad {

/// Largest supported ambient dimension. Global searches beyond this are not
/// trustworthy at default budgets.
inline constexpr int kMaxDim = 8;

/// Equality tolerance for closed-form checks (duality membership, norms).
inline constexpr double kClosedFormTol = 1e-9;

/// Margin used when certifying a strict inequality from searched suprema.
inline constexpr double kStrictMargin = 1e-3;

using Scalar = std::complex<double>;

// Fixed-capacity storage: no heap traffic inside the search loops.
using Coords = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using MatrixData = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

enum class Field { Real, Complex };

std::string to_string(Field f);
Field parse_field(const std::string& s);

/// Raised for violated preconditions and malformed inputs.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// z/|z|, or 1 when z is (numerically) zero.
inline Scalar unit_phase(Scalar z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Scalar{1.0, 0.0};
}

/// A point of the ambient space F^n.
struct Vector {
  Coords coords;

  Vector() = default;
  explicit Vector(Coords c) : coords(std::move(c)) {}
  Vector(std::initializer_list<Scalar> values);

  int dim() const { return static_cast<int>(coords.size()); }
  Scalar operator[](int i) const { return coords(i); }

  static Vector zero(int dim);
  static Vector basis(int dim, int index);
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(Scalar c, const Vector& v);

/// A dual vector acting by plain coordinate pairing x*(z) = sum_i a_i z_i.
/// No conjugation is applied.
struct Functional {
  Coords coords;

  Functional() = default;
  explicit Functional(Coords c) : coords(std::move(c)) {}
  Functional(std::initializer_list<Scalar> values);

  int dim() const { return static_cast<int>(coords.size()); }
  Scalar operator()(const Vector& z) const { return apply(z.coords); }
  Scalar apply(const Coords& z) const { return (coords.array() * z.array()).sum(); }
};

/// True when every coordinate has zero imaginary part.
bool is_real(const Coords& c);

}  // namespace numrad
