#include "numrad/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace numrad {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr int kCandidates = 8;
constexpr int kZoomSamples = 33;   // per round, real plane
constexpr int kZoomSamples2D = 9;  // per axis and round, complex plane
constexpr double kMinStep = 1e-11;
constexpr int kMaxCompassEvals = 20000;

struct Tracker {
  Vector x;
  double value = -std::numeric_limits<double>::infinity();

  void offer(const Vector& candidate, double v) {
    if (v > value) {
      value = v;
      x = candidate;
    }
  }
};

// Compass (coordinate pattern) search maximizing f over R^m. `step` holds the
// initial step per coordinate; all steps halve together on a failed poll.
template <class F>
void compass_maximize(F&& f, std::vector<double>& p, double& fp, std::vector<double> step, bool renormalize) {
  const std::size_t m = p.size();
  int evals = 0;
  while (evals < kMaxCompassEvals) {
    bool improved = false;
    for (std::size_t k = 0; k < m && evals < kMaxCompassEvals; ++k) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> trial = p;
        trial[k] += sgn * step[k];
        const double ft = f(trial);
        ++evals;
        if (ft > fp) {
          p = std::move(trial);
          fp = ft;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      double largest = 0.0;
      for (double& s : step) {
        s *= 0.5;
        largest = std::max(largest, s);
      }
      if (renormalize) {
        double n2 = 0.0;
        for (double v : p) n2 += v * v;
        const double n = std::sqrt(n2);
        if (n > 0.0) {
          for (double& v : p) v /= n;
        }
      }
      if (largest < kMinStep) break;
    }
  }
}

std::vector<SphereCandidate> dedupe_sorted(std::vector<SphereCandidate> cands) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const SphereCandidate& a, const SphereCandidate& b) { return a.value > b.value; });
  std::vector<SphereCandidate> out;
  for (auto& c : cands) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const SphereCandidate& o) {
      return (o.x.coords - c.x.coords).norm() < 1e-7;
    });
    if (!dup) out.push_back(std::move(c));
  }
  return out;
}

SphereArgmax finish(std::vector<SphereCandidate> cands) {
  cands = dedupe_sorted(std::move(cands));
  SphereArgmax out{cands.front().x, cands.front().value, std::move(cands)};
  return out;
}

// Indices of the best grid local maxima, best first.
std::vector<int> top_local_maxima(const std::vector<double>& vals,
                                  const std::function<std::vector<int>(int)>& neighbours) {
  std::vector<int> idx;
  for (int k = 0; k < static_cast<int>(vals.size()); ++k) {
    bool is_max = true;
    for (int nb : neighbours(k)) {
      if (vals[nb] > vals[k]) {
        is_max = false;
        break;
      }
    }
    if (is_max) idx.push_back(k);
  }
  if (idx.empty()) {
    idx.push_back(static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin()));
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] > vals[b]; });
  if (idx.size() > kCandidates) idx.resize(kCandidates);
  return idx;
}

SphereArgmax argmax_real_plane(const NormedSpace& space, const SphereObjective& f, const EngineConfig& cfg) {
  auto point = [&](double theta) { return space.normalize(Vector{std::cos(theta), std::sin(theta)}); };
  const int n = cfg.grid_size;
  const double step = 2.0 * std::numbers::pi / n;
  std::vector<double> vals(n);
  for (int k = 0; k < n; ++k) vals[k] = f(point(k * step));

  const auto seeds =
      top_local_maxima(vals, [n](int k) { return std::vector<int>{(k + n - 1) % n, (k + 1) % n}; });

  std::vector<SphereCandidate> cands;
  for (int k : seeds) {
    double center = k * step;
    double h = step;
    double best_theta = center;
    double best = vals[k];
    for (int round = 0; round < cfg.refine_rounds; ++round) {
      const double spacing = 2.0 * h / (kZoomSamples - 1);
      for (int j = 0; j < kZoomSamples; ++j) {
        const double t = center - h + j * spacing;
        const double v = f(point(t));
        if (v > best) {
          best = v;
          best_theta = t;
        }
      }
      center = best_theta;
      h = spacing;
    }
    auto polish = golden_maximize([&](double t) { return f(point(t)); }, center - h, center + h, 60);
    if (polish.value > best) {
      best = polish.value;
      best_theta = polish.arg;
    }
    cands.push_back({point(best_theta), best});
  }
  return finish(std::move(cands));
}

SphereArgmax argmax_complex_plane(const NormedSpace& space, const SphereObjective& f,
                                  const EngineConfig& cfg) {
  // Modulo a global phase, every direction of C^2 is (cos t, sin t e^{i phi}).
  auto point = [&](double t, double phi) {
    return space.normalize(Vector{Scalar{std::cos(t), 0.0}, std::sin(t) * std::polar(1.0, phi)});
  };
  const int nt = std::max(8, cfg.grid_size / 32);
  const int np = std::max(16, cfg.grid_size / 16);
  const double ht = 0.5 * std::numbers::pi / nt;
  const double hp = 2.0 * std::numbers::pi / np;
  const int rows = nt + 1;
  std::vector<double> vals(static_cast<std::size_t>(rows) * np);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < np; ++j) vals[i * np + j] = f(point(i * ht, j * hp));
  }

  const auto seeds = top_local_maxima(vals, [&](int k) {
    const int i = k / np;
    const int j = k % np;
    std::vector<int> nb;
    for (int di = -1; di <= 1; ++di) {
      const int ii = i + di;
      if (ii < 0 || ii >= rows) continue;
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        nb.push_back(ii * np + (j + dj + np) % np);
      }
    }
    return nb;
  });

  std::vector<SphereCandidate> cands;
  for (int k : seeds) {
    double ct = (k / np) * ht;
    double cp = (k % np) * hp;
    double best = vals[k];
    double wt = ht;
    double wp = hp;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
      const double st = 2.0 * wt / (kZoomSamples2D - 1);
      const double sp = 2.0 * wp / (kZoomSamples2D - 1);
      double bt = ct;
      double bp = cp;
      for (int a = 0; a < kZoomSamples2D; ++a) {
        for (int b = 0; b < kZoomSamples2D; ++b) {
          const double t = ct - wt + a * st;
          const double phi = cp - wp + b * sp;
          const double v = f(point(t, phi));
          if (v > best) {
            best = v;
            bt = t;
            bp = phi;
          }
        }
      }
      ct = bt;
      cp = bp;
      wt = st;
      wp = sp;
    }
    std::vector<double> p{ct, cp};
    compass_maximize([&](const std::vector<double>& q) { return f(point(q[0], q[1])); }, p, best, {wt, wp},
                     false);
    cands.push_back({point(p[0], p[1]), best});
  }
  return finish(std::move(cands));
}

SphereArgmax argmax_multistart(const NormedSpace& space, const SphereObjective& f, const EngineConfig& cfg) {
  const int n = space.dim();
  const bool real = space.is_real();
  const std::size_t m = real ? n : 2 * n;

  auto to_vector = [&](const std::vector<double>& p) -> std::optional<Vector> {
    Coords c(n);
    for (int i = 0; i < n; ++i) c(i) = real ? Scalar{p[i], 0.0} : Scalar{p[i], p[n + i]};
    const double nn = space.norm(c);
    if (!(nn > 0.0)) return std::nullopt;
    return Vector(c / nn);
  };
  auto objective = [&](const std::vector<double>& p) {
    auto x = to_vector(p);
    return x ? f(*x) : -std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> starts;
  for (int i = 0; i < n; ++i) {
    std::vector<double> p(m, 0.0);
    p[i] = 1.0;
    starts.push_back(std::move(p));
  }
  for (int s = 0; s < cfg.multistarts; ++s) {
    std::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> p(m);
    double n2 = 0.0;
    for (double& v : p) {
      v = normal(gen);
      n2 += v * v;
    }
    for (double& v : p) v /= std::sqrt(n2);
    starts.push_back(std::move(p));
  }

  std::vector<SphereCandidate> cands;
  for (auto& p : starts) {
    double fp = objective(p);
    compass_maximize(objective, p, fp, std::vector<double>(m, 0.5), true);
    if (auto x = to_vector(p)) cands.push_back({*x, fp});
  }
  return finish(std::move(cands));
}

}  // namespace

void EngineConfig::validate() const {
  if (grid_size < 16) throw UsageError("grid_size must be at least 16");
  if (refine_rounds < 0) throw UsageError("refine_rounds must be non-negative");
  if (multistarts < 1) throw UsageError("multistarts must be at least 1");
  if (lambda_grid < 4) throw UsageError("lambda_grid must be at least 4");
  if (tol && !(*tol > 0.0)) throw UsageError("tol must be positive");
}

double EngineConfig::tolerance_for(int dim) const { return tol.value_or(dim <= 2 ? 1e-7 : 1e-5); }

EngineConfig EngineConfig::coarse(int factor) const {
  EngineConfig c = *this;
  c.grid_size = std::max(16, grid_size / factor);
  c.multistarts = std::max(1, multistarts / factor);
  return c;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SphereArgmax sphere_argmax(const NormedSpace& space, const SphereObjective& objective,
                           const EngineConfig& cfg) {
  cfg.validate();
  if (space.dim() == 2) {
    return space.is_real() ? argmax_real_plane(space, objective, cfg)
                           : argmax_complex_plane(space, objective, cfg);
  }
  return argmax_multistart(space, objective, cfg);
}

LineOptimum golden_minimize(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  LineOptimum best = fc <= fd ? LineOptimum{c, fc} : LineOptimum{d, fd};
  for (int it = 0; it < iterations && hi - lo > 0.0; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

LineOptimum golden_maximize(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  auto r = golden_minimize([&](double t) { return -f(t); }, lo, hi, iterations);
  return {r.arg, -r.value};
}

}  // namespace numrad
