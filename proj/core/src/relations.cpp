#include "numrad/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace numrad {

namespace {

constexpr int kRealLineIterations = 90;
constexpr int kComplexLineIterations = 40;
constexpr int kArcIterations = 40;

struct Recorder {
  std::vector<SweepPoint>* sink = nullptr;
  void add(Scalar p, double v) const {
    if (sink) sink->push_back({p, v});
  }
};

struct ScalarOptimum {
  Scalar arg;
  double value;
};

/// max over the unimodular set. Real field: exactly {+1, -1}. Complex field:
/// `grid` angles scanned with `scan`, then a golden-section search with
/// `fine` on the arc around the best sample.
template <class Scan, class Fine>
ScalarOptimum maximize_unimodular(bool real, int grid, Scan&& scan, Fine&& fine, const Recorder& rec) {
  if (real) {
    const double plus = fine(Scalar{1.0, 0.0});
    const double minus = fine(Scalar{-1.0, 0.0});
    rec.add(1.0, plus);
    rec.add(-1.0, minus);
    return plus >= minus ? ScalarOptimum{1.0, plus} : ScalarOptimum{-1.0, minus};
  }
  const double step = 2.0 * std::numbers::pi / grid;
  int best_k = 0;
  double best_scan = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const Scalar lam = std::polar(1.0, k * step);
    const double v = scan(lam);
    rec.add(lam, v);
    if (v > best_scan) {
      best_scan = v;
      best_k = k;
    }
  }
  ScalarOptimum best{std::polar(1.0, best_k * step), best_scan};
  auto on_arc = [&](double theta) {
    const Scalar lam = std::polar(1.0, theta);
    const double v = fine(lam);
    rec.add(lam, v);
    if (v > best.value) best = {lam, v};
    return v;
  };
  on_arc(best_k * step);
  golden_maximize(on_arc, (best_k - 1) * step, (best_k + 1) * step, kArcIterations);
  return best;
}

/// min of a convex function of the scalar alpha over |Re|, |Im| <= bound.
/// Complex fields use a nested golden-section search (the inner minimum of a
/// jointly convex function is convex in the outer variable).
template <class F>
ScalarOptimum minimize_scalar(bool real, double bound, F&& f, const Recorder& rec) {
  ScalarOptimum best{0.0, f(Scalar{0.0, 0.0})};
  rec.add(0.0, best.value);
  auto eval = [&](Scalar a) {
    const double v = f(a);
    rec.add(a, v);
    if (v < best.value) best = {a, v};
    return v;
  };
  if (real) {
    golden_minimize([&](double a) { return eval(Scalar{a, 0.0}); }, -bound, bound, kRealLineIterations);
    return best;
  }
  golden_minimize(
      [&](double re) {
        return golden_minimize([&](double im) { return eval(Scalar{re, im}); }, -bound, bound,
                               kComplexLineIterations)
            .value;
      },
      -bound, bound, kComplexLineIterations);
  return best;
}

void finalize(RelationReport& r) {
  r.gap = r.achieved - r.required;
  r.verdict = r.gap >= -r.tol;
}

void check_pair(const NormedSpace& space, const Vector& x, const Vector& y) {
  space.check_vector(x.coords, "x");
  space.check_vector(y.coords, "y");
}

void check_pair(const NormedSpace& space, const Operator& t, const Operator& s) {
  check_operator(space, t, "first operator");
  check_operator(space, s, "second operator");
}

/// The Birkhoff search bracket: outside |alpha| <= 2 a / b the reverse triangle
/// inequality gives |alpha| b - a > a, so the minimum lies inside.
double birkhoff_bracket(double a, double b) { return 2.0 * a / b * (1.0 + 1e-9) + 1e-12; }

struct JointWitness {
  Vector x;
  Functional xstar;
  Scalar t_value;
  Scalar s_value;
  double value;  // |t_value| + |s_value|
};

/// sup over feasible (x, x*) of |x*(Tx)| + |x*(Sx)|. For each pair,
/// max_lambda |x*(Tx) + lambda x*(Sx)| equals this sum, so the supremum equals
/// max_lambda v(T + lambda S).
JointWitness joint_radius(const NormedSpace& space, const Operator& t, const Operator& s,
                          const EngineConfig& cfg) {
  auto best_pair = [&](const Vector& x) {
    const Coords tx = t.apply(x.coords);
    const Coords sx = s.apply(x.coords);
    DualitySet set = duality_set(space, x);
    JointWitness w{x, {}, 0.0, 0.0, -1.0};
    for (const Functional& f : set.members()) {
      const Scalar a = f.apply(tx);
      const Scalar b = f.apply(sx);
      const double v = std::abs(a) + std::abs(b);
      if (v > w.value) w = {x, f, a, b, v};
    }
    return w;
  };
  const auto arg = sphere_argmax(space, [&](const Vector& x) { return best_pair(x).value; }, cfg);
  return best_pair(arg.x);
}

RelationWitness radius_witness(const NormedSpace& space, const Operator& op, Scalar coefficient,
                               const EngineConfig& cfg) {
  const RadiusResult r = numerical_radius(space, op, cfg);
  const RadiusWitness& w = r.witnesses.front();
  return {w.x, w.xstar, coefficient, {w.attained}};
}

}  // namespace

RelationReport norm_parallel_vectors(const NormedSpace& space, const Vector& x, const Vector& y,
                                     const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, x, y);
  RelationReport r;
  r.relation = "parallel";
  r.tol = cfg.tolerance_for(space.dim());
  r.required = space.norm(x) + space.norm(y);
  auto f = [&](Scalar lam) { return space.norm(Vector(x.coords + lam * y.coords)); };
  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};
  const auto best = maximize_unimodular(space.is_real(), cfg.lambda_grid, f, f, rec);
  r.achieved = best.value;
  r.witness = RelationWitness{x, std::nullopt, best.arg, {Scalar{best.value, 0.0}}};
  finalize(r);
  return r;
}

RelationReport birkhoff_vectors(const NormedSpace& space, const Vector& x, const Vector& y,
                                const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, x, y);
  RelationReport r;
  r.relation = "birkhoff";
  r.tol = cfg.tolerance_for(space.dim());
  const double nx = space.norm(x);
  const double ny = space.norm(y);
  r.required = nx;
  if (ny == 0.0 || nx == 0.0) {
    r.achieved = nx;
    r.witness = RelationWitness{x, std::nullopt, 0.0, {Scalar{nx, 0.0}}};
    finalize(r);
    return r;
  }
  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};
  const auto best = minimize_scalar(
      space.is_real(), birkhoff_bracket(nx, ny),
      [&](Scalar a) { return space.norm(Vector(x.coords + a * y.coords)); }, rec);
  r.achieved = best.value;
  r.witness = RelationWitness{x, std::nullopt, best.arg, {Scalar{best.value, 0.0}}};
  finalize(r);
  return r;
}

RelationReport parallel_via_birkhoff(const NormedSpace& space, const Vector& x, const Vector& y,
                                     const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, x, y);
  const double nx = space.norm(x);
  const double ny = space.norm(y);
  const double tol = cfg.tolerance_for(space.dim());
  EngineConfig inner = cfg;
  inner.record_sweep = false;
  auto report_at = [&](Scalar lam) {
    Coords w = ny * x.coords + lam * nx * y.coords;
    // A cancelled combination is zero up to rounding; any residual direction is noise.
    if (space.norm(w) <= tol * nx * ny) w.setZero();
    return birkhoff_vectors(space, x, Vector(w), inner);
  };
  auto gap_at = [&](Scalar lam) { return report_at(lam).gap; };

  RelationReport r;
  r.relation = "parallel-via-birkhoff";
  r.tol = tol;
  r.required = nx;
  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};
  auto best = maximize_unimodular(space.is_real(), cfg.lambda_grid, gap_at, gap_at, rec);
  // The phase that would cancel y against x on its largest coordinate.
  Eigen::Index i = 0;
  x.coords.cwiseAbs().maxCoeff(&i);
  if (x.coords(i) != 0.0 && y.coords(i) != 0.0) {
    const Scalar c = y.coords(i) / x.coords(i);
    const Scalar lam = -std::abs(c) / c;
    const double g = gap_at(lam);
    rec.add(lam, g);
    if (g > best.value) best = {lam, g};
  }
  const RelationReport inner_report = report_at(best.arg);
  r.achieved = inner_report.achieved;
  r.witness = RelationWitness{
      x, std::nullopt, best.arg, {inner_report.witness ? inner_report.witness->coefficient : 0.0}};
  finalize(r);
  return r;
}

RelationReport nr_parallel(const NormedSpace& space, const Operator& t, const Operator& s,
                           const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, t, s);
  RelationReport r;
  r.relation = "nr-parallel";
  r.tol = cfg.tolerance_for(space.dim());
  const RadiusResult rt = numerical_radius(space, t, cfg);
  const RadiusResult rs = numerical_radius(space, s, cfg);
  r.required = rt.value + rs.value;

  if (rt.value <= r.tol || rs.value <= r.tol) {
    // v(T) v(S) = 0: v(T + S) >= |v(T) - v(S)| = v(T) + v(S).
    const RadiusResult sum = numerical_radius(space, t + s, cfg);
    const RadiusWitness& w = sum.witnesses.front();
    r.achieved = sum.value;
    r.witness = RelationWitness{
        w.x, w.xstar, 1.0, {w.xstar.apply(t.apply(w.x.coords)), w.xstar.apply(s.apply(w.x.coords))}};
    r.gap = r.achieved - r.required;
    r.verdict = true;
    return r;
  }

  // Attained witness: a single (x, x*) realising |x*(Tx)| = v(T) and
  // |x*(Sx)| = v(S) when the operators are parallel. At that pair,
  // |x*((T + lambda S)x)| = |x*(Tx)| + |x*(Sx)| for the aligning lambda.
  const JointWitness joint = joint_radius(space, t, s, cfg);
  const Scalar joint_lambda = unit_phase(joint.t_value) * std::conj(unit_phase(joint.s_value));
  if (!cfg.record_sweep && joint.value >= r.required - r.tol) {
    r.achieved = joint.value;
    r.witness = RelationWitness{joint.x, joint.xstar, joint_lambda, {joint.t_value, joint.s_value}};
    finalize(r);
    return r;
  }

  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};
  const EngineConfig scan_cfg = cfg.coarse(4);
  const auto by_lambda = maximize_unimodular(
      space.is_real(), cfg.lambda_grid,
      [&](Scalar lam) { return radius_of_combination(space, t, s, lam, scan_cfg); },
      [&](Scalar lam) { return radius_of_combination(space, t, s, lam, cfg); }, rec);

  if (joint.value >= by_lambda.value) {
    r.achieved = joint.value;
    r.witness = RelationWitness{joint.x, joint.xstar, joint_lambda, {joint.t_value, joint.s_value}};
  } else {
    r.achieved = by_lambda.value;
    r.witness = RelationWitness{joint.x, joint.xstar, by_lambda.arg, {joint.t_value, joint.s_value}};
  }
  finalize(r);
  return r;
}

RelationReport nr_birkhoff(const NormedSpace& space, const Operator& t, const Operator& s,
                           const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, t, s);
  RelationReport r;
  r.relation = "nr-birkhoff";
  r.tol = cfg.tolerance_for(space.dim());
  const double vt = numerical_radius(space, t, cfg).value;
  const double vs = numerical_radius(space, s, cfg).value;
  r.required = vt;
  if (vt <= r.tol || vs <= r.tol) {
    r.achieved = vt;
    r.witness = radius_witness(space, t, 0.0, cfg);
    finalize(r);
    r.verdict = true;
    return r;
  }
  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};
  auto f = [&](Scalar a) { return a == Scalar{0.0, 0.0} ? vt : radius_of_combination(space, t, s, a, cfg); };
  const auto best = minimize_scalar(space.is_real(), birkhoff_bracket(vt, vs), f, rec);
  r.achieved = best.value;
  r.witness = radius_witness(space, t + best.arg * s, best.arg, cfg);
  finalize(r);
  return r;
}

std::optional<OrthogonalityCertificate> orthogonality_certificate(const NormedSpace& space, const Operator& t,
                                                                  const Operator& s, Scalar lambda,
                                                                  const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, t, s);
  if (std::abs(std::abs(lambda) - 1.0) > kClosedFormTol) {
    throw UsageError("an orthogonality certificate needs a unimodular lambda");
  }
  if (space.is_real() && lambda.imag() != 0.0) {
    throw UsageError("lambda must be real (+1 or -1) in a real space");
  }
  const double tol = cfg.tolerance_for(space.dim());
  const double vt = numerical_radius(space, t, cfg).value;

  // Both conditions hold iff the smaller slack is non-negative.
  auto best_at = [&](const Vector& x) {
    const Coords tx = t.apply(x.coords);
    const Coords sx = s.apply(x.coords);
    DualitySet set = duality_set(space, x);
    std::optional<OrthogonalityCertificate> best;
    double best_slack = -std::numeric_limits<double>::infinity();
    for (const Functional& f : set.members()) {
      const Scalar a = f.apply(tx);
      const Scalar b = f.apply(sx);
      const double re = (lambda * std::conj(a) * b).real();
      const double slack = std::min(std::abs(a) - vt + tol, re + tol);
      if (slack > best_slack) {
        best_slack = slack;
        best = OrthogonalityCertificate{x, f, a, b, re};
      }
    }
    return std::pair{best_slack, *best};
  };
  const auto arg = sphere_argmax(space, [&](const Vector& x) { return best_at(x).first; }, cfg);
  auto [slack, cert] = best_at(arg.x);
  if (slack < 0.0) return std::nullopt;
  return cert;
}

RelationReport nr_parallel_via_orthogonality(const NormedSpace& space, const Operator& t, const Operator& s,
                                             const EngineConfig& cfg) {
  cfg.validate();
  check_pair(space, t, s);
  RelationReport r;
  r.relation = "nr-parallel-via-orthogonality";
  r.tol = cfg.tolerance_for(space.dim());
  const double vt = numerical_radius(space, t, cfg).value;
  const double vs = numerical_radius(space, s, cfg).value;
  r.required = vt;
  if (vt <= r.tol || vs <= r.tol) {
    r.achieved = vt;
    r.witness = radius_witness(space, t, 1.0, cfg);
    finalize(r);
    r.verdict = true;
    return r;
  }

  EngineConfig inner = cfg;
  inner.record_sweep = false;
  auto report_at = [&](Scalar lam, const EngineConfig& c) {
    return nr_birkhoff(space, t, vs * t + (lam * vt) * s, c);
  };
  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};

  std::optional<std::pair<Scalar, RelationReport>> chosen;
  auto consider = [&](Scalar lam, RelationReport rep) {
    rec.add(lam, rep.gap);
    if (!chosen || rep.gap > chosen->second.gap) chosen = {lam, std::move(rep)};
  };

  if (space.is_real()) {
    consider(1.0, report_at(1.0, inner));
    consider(-1.0, report_at(-1.0, inner));
  } else {
    // Candidate from the parallel construction: lambda = -v(S) a / (v(T) b)
    // at a common maximizing pair.
    const JointWitness joint = joint_radius(space, t, s, inner);
    if (std::abs(joint.s_value) > r.tol) {
      const Scalar lam = -unit_phase(joint.t_value) * std::conj(unit_phase(joint.s_value));
      consider(lam, report_at(lam, inner));
    }
    if (!chosen || !chosen->second.verdict) {
      const EngineConfig scan_cfg = inner.coarse(4);
      const int grid = std::max(8, cfg.lambda_grid / 30);
      const auto best = maximize_unimodular(
          false, grid, [&](Scalar lam) { return report_at(lam, scan_cfg).gap; },
          [&](Scalar lam) { return report_at(lam, scan_cfg).gap; }, Recorder{});
      consider(best.arg, report_at(best.arg, inner));
    }
  }

  const auto& [lam, rep] = *chosen;
  r.achieved = rep.achieved;
  RelationWitness w = rep.witness.value_or(RelationWitness{});
  const Scalar alpha = w.coefficient;
  w.coefficient = lam;
  w.attained.insert(w.attained.begin(), alpha);
  r.witness = std::move(w);
  finalize(r);
  return r;
}

DaugavetReport daugavet_check(const NormedSpace& space, const Operator& t, const EngineConfig& cfg) {
  cfg.validate();
  check_operator(space, t);
  DaugavetReport out;
  RelationReport& r = out.equation;
  r.relation = "daugavet";
  r.tol = cfg.tolerance_for(space.dim());
  out.norm = operator_norm(space, t, cfg);
  r.required = 1.0 + out.norm;
  const Operator id = Operator::identity(space.dim());
  const EngineConfig scan_cfg = cfg.coarse(4);
  const Recorder rec{cfg.record_sweep ? &r.sweep : nullptr};
  const auto best = maximize_unimodular(
      space.is_real(), cfg.lambda_grid,
      [&](Scalar lam) { return operator_norm(space, id + lam * t, scan_cfg); },
      [&](Scalar lam) { return operator_norm(space, id + lam * t, cfg); }, rec);
  r.achieved = best.value;
  finalize(r);

  const RadiusResult rad = numerical_radius(space, t, cfg);
  out.radius = rad.value;
  out.radius_equals_norm = out.radius >= out.norm - r.tol;
  out.agree = out.radius_equals_norm == r.verdict;
  const RadiusWitness& w = rad.witnesses.front();
  r.witness = RelationWitness{w.x, w.xstar, best.arg, {w.attained}};
  return out;
}

}  // namespace numrad
