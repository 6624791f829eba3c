#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "numrad/types.hpp"

namespace numrad {

enum class NormKind {
  Lp,            // (sum |x_i|^p)^(1/p), 1 < p < inf
  L1,            // sum |x_i|
  Linf,          // max |x_i|
  MixedQuadMax,  // real plane: euclidean on x1*x2 >= 0, max-norm on x1*x2 <= 0
};

/// A finite-dimensional normed space drawn from a fixed catalog of norms.
class NormedSpace {
 public:
  static NormedSpace lp(int dim, double p, Field field = Field::Real);
  static NormedSpace l1(int dim, Field field = Field::Real);
  static NormedSpace linf(int dim, Field field = Field::Real);
  static NormedSpace mixed();

  /// Parses "lp:<p>", "l1", "linf", "l2", "mixed".
  static NormedSpace parse(std::string_view kind, int dim, Field field = Field::Real);

  int dim() const { return dim_; }
  Field field() const { return field_; }
  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  bool is_real() const { return field_ == Field::Real; }

  /// Catalog name, round-trips through parse().
  std::string name() const;

  double norm(const Vector& x) const;
  double norm(const Coords& x) const;

  /// Norm of a functional in the dual space.
  double dual_norm(const Functional& f) const;

  /// x / ||x||. Throws on the zero vector.
  Vector normalize(const Vector& x) const;

  /// Throws UsageError unless x has this space's dimension and a real-valued
  /// space only gets real coordinates.
  void check_vector(const Coords& x, const char* what = "vector") const;

  bool operator==(const NormedSpace&) const = default;

 private:
  NormedSpace(int dim, Field field, NormKind kind, double p);

  int dim_;
  Field field_;
  NormKind kind_;
  double p_;  // meaningful for Lp only
};

/// J(x) for a unit vector x: either the unique supporting functional (smooth
/// point) or the extreme points of the supporting face.
///
/// For a complex L1 space the face at a point with vanishing coordinates is a
/// torus of free phases. Its extreme set is a continuum; the list then holds a
/// phase-grid sample of it (see supporting_functional for the exact maximizer).
struct DualitySet {
  std::variant<Functional, std::vector<Functional>> rep;

  bool is_singleton() const { return std::holds_alternative<Functional>(rep); }
  std::span<const Functional> members() const&;
  // A temporary set hands out a copy so range-for over it stays valid.
  std::vector<Functional> members() &&;
};

DualitySet duality_set(const NormedSpace& space, const Vector& x);

struct Support {
  Functional xstar;
  Scalar value;  // xstar(w)
};

/// The member of J(x) maximizing |x*(w)|, computed exactly for every catalog
/// norm. The result is always an extreme point of J(x).
Support supporting_functional(const NormedSpace& space, const Vector& x, const Coords& w);

/// dual_norm(f) <= 1 + tol and |f(x) - ||x||| <= tol.
bool in_duality_set(const NormedSpace& space, const Vector& x, const Functional& f,
                    double tol = kClosedFormTol);

bool is_smooth_point(const NormedSpace& space, const Vector& x);

/// Midpoint criterion: x is rotund iff no unit y with ||y - x|| above the
/// separation threshold has ||(x + y) / 2|| = 1. Lp spaces answer without
/// searching; real planes are searched on an angle grid; other cases use the
/// catalog rule (polyhedral unit spheres have no rotund points).
bool is_rotund_point(const NormedSpace& space, const Vector& x);

/// For a smooth unit x in a 2-D space, a unit y with x*(y) = 0 where J(x) = {x*}.
Vector annihilated_direction(const NormedSpace& space, const Vector& x);

}  // namespace numrad
