#include "numrad/types.hpp"

namespace numrad {

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Field parse_field(const std::string& s) {
  if (s == "real" || s == "R") return Field::Real;
  if (s == "complex" || s == "C") return Field::Complex;
  throw UsageError("unknown field '" + s + "' (expected real or complex)");
}

namespace {
Coords from_list(std::initializer_list<Scalar> values) {
  Coords c(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Scalar v : values) c(i++) = v;
  return c;
}
}  // namespace

Vector::Vector(std::initializer_list<Scalar> values) : coords(from_list(values)) {}

Vector Vector::zero(int dim) { return Vector(Coords::Zero(dim)); }

Vector Vector::basis(int dim, int index) {
  Coords c = Coords::Zero(dim);
  c(index) = 1.0;
  return Vector(c);
}

Vector operator+(const Vector& a, const Vector& b) { return Vector(a.coords + b.coords); }
Vector operator-(const Vector& a, const Vector& b) { return Vector(a.coords - b.coords); }
Vector operator*(Scalar c, const Vector& v) { return Vector(c * v.coords); }

Functional::Functional(std::initializer_list<Scalar> values) : coords(from_list(values)) {}

bool is_real(const Coords& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c(i).imag() != 0.0) return false;
  }
  return true;
}

}  // namespace numrad
