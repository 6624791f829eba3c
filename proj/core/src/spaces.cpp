#include "numrad/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace numrad {

namespace {

// Coordinates at or below this magnitude are treated as lying on a face
// boundary (L1 zero coordinate, Linf / mixed corner).
constexpr double kFaceTol = 1e-10;

// Minimum distance between x and a second sphere point in the rotund test.
constexpr double kRotundSeparation = 1e-3;
constexpr int kRotundGrid = 4096;

// Upper bound on the number of sampled phase completions for complex L1 faces.
constexpr int kMaxPhaseSamples = 4096;

double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }

double lp_sum(const Coords& x, double p) {
  double s = 0.0;
  if (p == 2.0) {
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::norm(x(i));
  } else if (p == 4.0) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double a = std::norm(x(i));
      s += a * a;
    }
  } else {
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  }
  return s;
}

double lp_norm(const Coords& x, double p) {
  const double s = lp_sum(x, p);
  if (p == 2.0) return std::sqrt(s);
  if (p == 4.0) return std::sqrt(std::sqrt(s));
  return std::pow(s, 1.0 / p);
}

std::string format_p(double p) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, res.ptr);
}

void require_unit(const NormedSpace& space, const Vector& x) {
  space.check_vector(x.coords);
  const double n = space.norm(x);
  if (std::abs(n - 1.0) > kClosedFormTol) {
    std::ostringstream os;
    os << "expected a unit vector, got norm " << n;
    throw UsageError(os.str());
  }
}

Functional basis_functional(int dim, int index, Scalar value) {
  Coords c = Coords::Zero(dim);
  c(index) = value;
  return Functional(c);
}

bool mixed_on_euclidean_part(const Coords& x) {
  const double a = x(0).real();
  const double b = x(1).real();
  return a * b >= 0.0 || std::abs(a) <= kFaceTol || std::abs(b) <= kFaceTol;
}

}  // namespace

NormedSpace::NormedSpace(int dim, Field field, NormKind kind, double p)
    : dim_(dim), field_(field), kind_(kind), p_(p) {
  if (dim < 2 || dim > kMaxDim) {
    throw UsageError("dimension must lie in [2, " + std::to_string(kMaxDim) + "], got " +
                     std::to_string(dim));
  }
  if (kind == NormKind::Lp && !(p > 1.0 && std::isfinite(p))) {
    throw UsageError("lp exponent must lie in (1, inf), got " + format_p(p) +
                     " (use l1 / linf for the endpoints)");
  }
  if (kind == NormKind::MixedQuadMax && (dim != 2 || field != Field::Real)) {
    throw UsageError("the mixed norm is defined on the real plane only (dim 2, real field)");
  }
}

NormedSpace NormedSpace::lp(int dim, double p, Field field) {
  return NormedSpace(dim, field, NormKind::Lp, p);
}
NormedSpace NormedSpace::l1(int dim, Field field) { return NormedSpace(dim, field, NormKind::L1, 1.0); }
NormedSpace NormedSpace::linf(int dim, Field field) {
  return NormedSpace(dim, field, NormKind::Linf, std::numeric_limits<double>::infinity());
}
NormedSpace NormedSpace::mixed() { return NormedSpace(2, Field::Real, NormKind::MixedQuadMax, 2.0); }

NormedSpace NormedSpace::parse(std::string_view kind, int dim, Field field) {
  if (kind == "l1") return l1(dim, field);
  if (kind == "linf") return linf(dim, field);
  if (kind == "l2") return lp(dim, 2.0, field);
  if (kind == "mixed") return NormedSpace(dim, field, NormKind::MixedQuadMax, 2.0);
  if (kind.starts_with("lp:")) {
    const std::string_view num = kind.substr(3);
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      throw UsageError("bad lp exponent in space '" + std::string(kind) + "'");
    }
    return lp(dim, p, field);
  }
  throw UsageError("unknown space '" + std::string(kind) + "' (expected lp:<p>, l1, linf, l2 or mixed)");
}

std::string NormedSpace::name() const {
  switch (kind_) {
    case NormKind::Lp:
      return p_ == 2.0 ? "l2" : "lp:" + format_p(p_);
    case NormKind::L1:
      return "l1";
    case NormKind::Linf:
      return "linf";
    case NormKind::MixedQuadMax:
      return "mixed";
  }
  return "?";
}

double NormedSpace::norm(const Vector& x) const {
  check_vector(x.coords);
  return norm(x.coords);
}

double NormedSpace::norm(const Coords& x) const {
  switch (kind_) {
    case NormKind::Lp:
      return lp_norm(x, p_);
    case NormKind::L1: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) s += std::abs(x(i));
      return s;
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x(i)));
      return m;
    }
    case NormKind::MixedQuadMax: {
      const double a = x(0).real();
      const double b = x(1).real();
      if (a * b >= 0.0) return std::hypot(a, b);
      return std::max(std::abs(a), std::abs(b));
    }
  }
  return 0.0;
}

double NormedSpace::dual_norm(const Functional& f) const {
  const Coords& a = f.coords;
  switch (kind_) {
    case NormKind::Lp:
      return lp_norm(a, p_ / (p_ - 1.0));
    case NormKind::L1: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a(i)));
      return m;
    }
    case NormKind::Linf: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < a.size(); ++i) s += std::abs(a(i));
      return s;
    }
    case NormKind::MixedQuadMax: {
      // Support function of the unit ball: two quarter discs and the two
      // square corners (-1, 1), (1, -1).
      const double a1 = a(0).real();
      const double a2 = a(1).real();
      const double pos = std::hypot(std::max(a1, 0.0), std::max(a2, 0.0));
      const double neg = std::hypot(std::max(-a1, 0.0), std::max(-a2, 0.0));
      return std::max({pos, neg, std::abs(a2 - a1)});
    }
  }
  return 0.0;
}

Vector NormedSpace::normalize(const Vector& x) const {
  const double n = norm(x);
  if (!(n > 0.0)) throw UsageError("cannot normalize the zero vector");
  return Vector(x.coords / n);
}

void NormedSpace::check_vector(const Coords& x, const char* what) const {
  if (x.size() != dim_) {
    throw UsageError(std::string(what) + " has " + std::to_string(x.size()) +
                     " coordinates, space dimension is " + std::to_string(dim_));
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i).real()) || !std::isfinite(x(i).imag())) {
      throw UsageError(std::string(what) + " has a non-finite coordinate");
    }
  }
  if (field_ == Field::Real && !numrad::is_real(x)) {
    throw UsageError(std::string(what) + " has complex coordinates in a real space");
  }
}

std::span<const Functional> DualitySet::members() const& {
  if (const auto* f = std::get_if<Functional>(&rep)) return {f, 1};
  return std::get<std::vector<Functional>>(rep);
}

std::vector<Functional> DualitySet::members() && {
  const auto m = static_cast<const DualitySet&>(*this).members();
  return {m.begin(), m.end()};
}

DualitySet duality_set(const NormedSpace& space, const Vector& x) {
  require_unit(space, x);
  const int n = space.dim();
  const Coords& c = x.coords;

  switch (space.kind()) {
    case NormKind::Lp: {
      // Equality case of Hoelder: a_i = |x_i|^(p-1) conj(sgn x_i).
      const double p = space.p();
      Coords a(n);
      for (int i = 0; i < n; ++i) {
        const double r = std::abs(c(i));
        const double mag = p == 2.0 ? r : (p == 4.0 ? r * r * r : std::pow(r, p - 1.0));
        a(i) = mag * std::conj(unit_phase(c(i)));
      }
      return {Functional(a)};
    }
    case NormKind::L1: {
      Coords base = Coords::Zero(n);
      std::vector<int> free;
      for (int i = 0; i < n; ++i) {
        if (std::abs(c(i)) <= kFaceTol) {
          free.push_back(i);
        } else {
          base(i) = std::conj(unit_phase(c(i)));
        }
      }
      if (free.empty()) return {Functional(base)};
      const int k = static_cast<int>(free.size());
      std::vector<Scalar> choices;
      if (space.is_real()) {
        choices = {1.0, -1.0};
      } else {
        int m = 8;
        while (m > 2 && std::pow(static_cast<double>(m), k) > kMaxPhaseSamples) --m;
        for (int j = 0; j < m; ++j) {
          choices.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / m));
        }
      }
      const int m = static_cast<int>(choices.size());
      std::size_t total = 1;
      for (int j = 0; j < k; ++j) total *= static_cast<std::size_t>(m);
      std::vector<Functional> out;
      out.reserve(total);
      for (std::size_t code = 0; code < total; ++code) {
        Coords a = base;
        std::size_t rest = code;
        for (int j = 0; j < k; ++j) {
          a(free[j]) = choices[rest % m];
          rest /= m;
        }
        out.emplace_back(a);
      }
      return {std::move(out)};
    }
    case NormKind::Linf: {
      const double top = space.norm(x);
      std::vector<Functional> out;
      for (int i = 0; i < n; ++i) {
        if (std::abs(c(i)) >= top - kFaceTol) {
          out.push_back(basis_functional(n, i, std::conj(unit_phase(c(i)))));
        }
      }
      if (out.size() == 1) return {out.front()};
      return {std::move(out)};
    }
    case NormKind::MixedQuadMax: {
      if (mixed_on_euclidean_part(c)) {
        Coords a(2);
        a << c(0).real(), c(1).real();
        return {Functional(a)};
      }
      const double a1 = c(0).real();
      const double a2 = c(1).real();
      const bool first = std::abs(a1) >= 1.0 - kFaceTol;
      const bool second = std::abs(a2) >= 1.0 - kFaceTol;
      if (first && second) {
        return {std::vector<Functional>{basis_functional(2, 0, sign_or_one(a1)),
                                        basis_functional(2, 1, sign_or_one(a2))}};
      }
      if (std::abs(a1) > std::abs(a2)) return {basis_functional(2, 0, sign_or_one(a1))};
      return {basis_functional(2, 1, sign_or_one(a2))};
    }
  }
  throw UsageError("unsupported norm kind");
}

Support supporting_functional(const NormedSpace& space, const Vector& x, const Coords& w) {
  if (space.kind() == NormKind::L1) {
    // max |c + sum_free a_j w_j| over |a_j| <= 1 equals |c| + sum |w_j|,
    // attained by rotating each free a_j onto the phase of c.
    require_unit(space, x);
    const Coords& c = x.coords;
    const int n = space.dim();
    Coords a(n);
    Scalar fixed{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      if (std::abs(c(i)) > kFaceTol) {
        a(i) = std::conj(unit_phase(c(i)));
        fixed += a(i) * w(i);
      } else {
        a(i) = 0.0;
      }
    }
    const Scalar align = unit_phase(fixed);
    for (int i = 0; i < n; ++i) {
      if (std::abs(c(i)) <= kFaceTol) a(i) = align * std::conj(unit_phase(w(i)));
    }
    Functional f(a);
    return {f, f.apply(w)};
  }

  DualitySet set = duality_set(space, x);
  const auto members = set.members();
  const Functional* best = &members.front();
  Scalar best_value = best->apply(w);
  for (const Functional& f : members.subspan(1)) {
    const Scalar v = f.apply(w);
    if (std::abs(v) > std::abs(best_value)) {
      best = &f;
      best_value = v;
    }
  }
  return {*best, best_value};
}

bool in_duality_set(const NormedSpace& space, const Vector& x, const Functional& f, double tol) {
  if (f.dim() != space.dim() || x.dim() != space.dim()) return false;
  if (space.dual_norm(f) > 1.0 + tol) return false;
  return std::abs(f(x) - Scalar{space.norm(x), 0.0}) <= tol;
}

bool is_smooth_point(const NormedSpace& space, const Vector& x) {
  return duality_set(space, x).is_singleton();
}

bool is_rotund_point(const NormedSpace& space, const Vector& x) {
  require_unit(space, x);
  if (space.kind() == NormKind::Lp) return true;
  if (space.dim() != 2 || !space.is_real()) {
    // Catalog rule: every point of a polyhedral sphere is on a segment.
    return false;
  }

  auto midpoint_norm = [&](double theta) -> std::pair<double, double> {
    Vector y = space.normalize(Vector{std::cos(theta), std::sin(theta)});
    const double sep = space.norm(y - x);
    const double mid = space.norm(Vector(0.5 * (x.coords + y.coords)));
    return {sep, mid};
  };

  double best_mid = -1.0;
  int best_k = -1;
  const double step = 2.0 * std::numbers::pi / kRotundGrid;
  for (int k = 0; k < kRotundGrid; ++k) {
    auto [sep, mid] = midpoint_norm(k * step);
    if (sep <= kRotundSeparation) continue;
    if (mid >= 1.0 - kClosedFormTol) return false;
    if (mid > best_mid) {
      best_mid = mid;
      best_k = k;
    }
  }
  if (best_k < 0) return true;

  // Refine around the best separated grid point.
  double lo = (best_k - 1) * step;
  double hi = (best_k + 1) * step;
  constexpr double kInvPhi = 0.6180339887498949;
  auto score = [&](double t) {
    auto [sep, mid] = midpoint_norm(t);
    return sep > kRotundSeparation ? mid : -1.0;
  };
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = score(c);
  double fd = score(d);
  for (int it = 0; it < 60; ++it) {
    if (std::max(fc, fd) >= 1.0 - kClosedFormTol) return false;
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = score(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = score(d);
    }
  }
  return std::max(fc, fd) < 1.0 - kClosedFormTol;
}

Vector annihilated_direction(const NormedSpace& space, const Vector& x) {
  if (space.dim() != 2) throw UsageError("annihilated direction needs a 2-dimensional space");
  DualitySet set = duality_set(space, x);
  if (!set.is_singleton()) {
    throw UsageError("x is not a smooth point: its duality set is not a singleton");
  }
  const Coords& a = std::get<Functional>(set.rep).coords;
  return space.normalize(Vector{-a(1), a(0)});
}

}  // namespace numrad
