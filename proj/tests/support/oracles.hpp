#pragma once

// Reference computations that share no code with the library. They use brute
// force grids and Eigen spectral solvers, so they are slow but easy to trust.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2d;

inline double lp_norm2(double x, double y, double p) {
  return std::pow(std::pow(std::abs(x), p) + std::pow(std::abs(y), p), 1.0 / p);
}

/// v(T) on the real plane with the p-norm, 1 < p < inf: the unit vector at
/// angle t is paired with its unique supporting functional
/// (sign(x)|x|^(p-1), sign(y)|y|^(p-1)).
inline double lp_radius_grid(const Mat2& t, double p, int samples) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double th = 2.0 * std::numbers::pi * k / samples;
    const double n = lp_norm2(std::cos(th), std::sin(th), p);
    const double x = std::cos(th) / n;
    const double y = std::sin(th) / n;
    const double a = std::copysign(std::pow(std::abs(x), p - 1.0), x);
    const double b = std::copysign(std::pow(std::abs(y), p - 1.0), y);
    const double tx = t(0, 0) * x + t(0, 1) * y;
    const double ty = t(1, 0) * x + t(1, 1) * y;
    best = std::max(best, std::abs(a * tx + b * ty));
  }
  return best;
}

/// sup ||Tx||_p over the real unit circle of the p-norm.
inline double lp_operator_norm_grid(const Mat2& t, double p, int samples) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double th = 2.0 * std::numbers::pi * k / samples;
    const double n = lp_norm2(std::cos(th), std::sin(th), p);
    const double x = std::cos(th) / n;
    const double y = std::sin(th) / n;
    best = std::max(best, lp_norm2(t(0, 0) * x + t(0, 1) * y, t(1, 0) * x + t(1, 1) * y, p));
  }
  return best;
}

/// Real Euclidean numerical radius: spectral radius of the symmetric part.
inline double euclid_radius_real(const Eigen::MatrixXd& t) {
  const Eigen::MatrixXd h = 0.5 * (t + t.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Complex Euclidean numerical radius: max over theta of the top eigenvalue of
/// Re(e^{i theta} T) = (e^{i theta} T + e^{-i theta} T^H) / 2.
inline double euclid_radius_complex(const Eigen::MatrixXcd& t, int thetas) {
  double best = 0.0;
  for (int k = 0; k < thetas; ++k) {
    const cd w = std::polar(1.0, 2.0 * std::numbers::pi * k / thetas);
    const Eigen::MatrixXcd h = 0.5 * (w * t + std::conj(w) * t.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

/// min over alpha in [-bound, bound] of norm(x + alpha y), on a uniform grid.
template <class Norm>
double min_along_line(const Eigen::Vector2d& x, const Eigen::Vector2d& y, Norm&& norm, double bound,
                      int samples) {
  double best = norm(x);
  auto visit = [&](double a) {
    if (std::abs(a) <= bound) best = std::min(best, norm(Eigen::Vector2d(x + a * y)));
  };
  for (int k = 0; k <= samples; ++k) visit(-bound + 2.0 * bound * k / samples);
  // Kinks of the l1 and linf norms along the line, and the Euclidean foot point.
  for (int i = 0; i < 2; ++i) {
    if (y(i) != 0.0) visit(-x(i) / y(i));
  }
  for (const double s : {1.0, -1.0}) {
    const double d = y(0) - s * y(1);
    if (d != 0.0) visit(-(x(0) - s * x(1)) / d);
  }
  if (y.squaredNorm() > 0.0) visit(-x.dot(y) / y.squaredNorm());
  return best;
}

inline double l1(const Eigen::Vector2d& v) { return std::abs(v(0)) + std::abs(v(1)); }
inline double linf(const Eigen::Vector2d& v) { return std::max(std::abs(v(0)), std::abs(v(1))); }
inline double l2(const Eigen::Vector2d& v) { return v.norm(); }

}  // namespace oracle
