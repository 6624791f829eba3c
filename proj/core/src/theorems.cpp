#include "numrad/theorems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "numrad/radius.hpp"
#include "numrad/sampling.hpp"

namespace numrad {

namespace {

VerificationOutcome start(const char* id, const NormedSpace& space) {
  VerificationOutcome out;
  out.id = id;
  out.space = space.name() + "/" + to_string(space.field());
  return out;
}

std::string describe(const RelationReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << r.relation << ": achieved=" << r.achieved << " required=" << r.required << " gap=" << r.gap;
  return os.str();
}

SubCheck holds(std::string name, const RelationReport& r, std::vector<Operator> instance = {}) {
  SubCheck c{std::move(name), r.verdict, r.gap, -r.tol, describe(r), {}};
  if (!c.passed) c.instance = std::move(instance);
  return c;
}

SubCheck fails_strictly(std::string name, const RelationReport& r, std::vector<Operator> instance = {}) {
  SubCheck c{std::move(name), r.strictly_false(), r.gap, -r.margin, describe(r), {}};
  if (!c.passed) c.instance = std::move(instance);
  return c;
}

SubCheck near(std::string name, double value, double expected, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << "value=" << value << " expected=" << expected << " tol=" << tol;
  return {std::move(name), std::abs(value - expected) <= tol, value, expected, os.str(), {}};
}

SubCheck below(std::string name, double value, double limit) {
  std::ostringstream os;
  os.precision(17);
  os << "value=" << value << " limit=" << limit;
  return {std::move(name), value <= limit, value, limit, os.str(), {}};
}

SubCheck flag(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail), {}};
}

std::string trial_name(std::string_view what, int trial) {
  return std::string(what) + "[" + std::to_string(trial) + "]";
}

Vector first_basis_unit(const NormedSpace& space) { return space.normalize(Vector::basis(space.dim(), 0)); }

/// An element of J(x) (the member that supports x itself).
Functional some_support(const NormedSpace& space, const Vector& x) {
  return supporting_functional(space, x, x.coords).xstar;
}

}  // namespace

void VerificationOutcome::add(SubCheck c) {
  passed = passed && c.passed;
  checks.push_back(std::move(c));
}

std::size_t VerificationOutcome::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

VerificationOutcome verify_parallel_to_identity(const NormedSpace& space, int trials, std::uint64_t seed,
                                                const EngineConfig& cfg) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  VerificationOutcome out = start("pvi", space);
  out.seeds.push_back(seed);
  const Operator id = Operator::identity(space.dim());
  for (int i = 0; i < trials; ++i) {
    Sampler rng(seed, static_cast<std::uint64_t>(i));
    const Operator t = rng.op(space);
    const Scalar alpha = i == 0 ? Scalar{0.0, 0.0} : rng.scalar(space.field(), 2.0);
    const Operator s = alpha * id;
    out.add(holds(trial_name("T || alpha I", i), nr_parallel(space, t, s, cfg), {t, s}));
  }
  return out;
}

VerificationOutcome nontransitivity_witness(const NormedSpace& space, std::optional<Vector> x_opt,
                                            const EngineConfig& cfg) {
  if (space.dim() != 2) throw UsageError("the non-transitivity construction needs a 2-D space");
  const Vector x = space.normalize(x_opt.value_or(Vector::basis(2, 0)));
  const Vector y = annihilated_direction(space, x);  // throws unless x is smooth
  const Functional xs = std::get<Functional>(duality_set(space, x).rep);
  const Functional ys = some_support(space, y);
  const Operator a = rank_one(xs, x);
  const Operator b = rank_one(ys, y);
  const Operator id = Operator::identity(2);

  VerificationOutcome out = start("tpt", space);
  out.add(near("x*(y) = 0", std::abs(xs(y)), 0.0, kClosedFormTol));
  out.add(fails_strictly("x not parallel to y", norm_parallel_vectors(space, x, y, cfg)));
  out.add(holds("A || I", nr_parallel(space, a, id, cfg), {a, id}));
  out.add(holds("I || B", nr_parallel(space, id, b, cfg), {id, b}));
  out.add(fails_strictly("A not || B", nr_parallel(space, a, b, cfg), {a, b}));
  return out;
}

VerificationOutcome nonadditivity_witness(const NormedSpace& space, const EngineConfig& cfg) {
  const Vector x = first_basis_unit(space);
  const Functional xs = some_support(space, x);
  const Operator p = rank_one(xs, x);
  const Operator id = Operator::identity(space.dim());
  const Operator q = id - p;

  VerificationOutcome out = start("pva", space);
  out.add(flag("x* in J(x)", in_duality_set(space, x, xs)));
  // Right: I _|_ P and I _|_ (I - P), yet I is not _|_ to their sum I.
  out.add(holds("I _|_ P", nr_birkhoff(space, id, p, cfg), {id, p}));
  out.add(holds("I _|_ I-P", nr_birkhoff(space, id, q, cfg), {id, q}));
  out.add(fails_strictly("I not _|_ I", nr_birkhoff(space, id, id, cfg), {id, id}));
  // Left: -P _|_ (I - P) and I _|_ (I - P), yet their sum I - P is not.
  out.add(holds("-P _|_ I-P", nr_birkhoff(space, -p, q, cfg), {-p, q}));
  out.add(holds("I _|_ I-P (left)", nr_birkhoff(space, id, q, cfg), {id, q}));
  out.add(fails_strictly("I-P not _|_ I-P", nr_birkhoff(space, q, q, cfg), {q, q}));
  return out;
}

VerificationOutcome verify_rank_one_parallelism(const NormedSpace& space, int trials, std::uint64_t seed,
                                                const EngineConfig& cfg) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  VerificationOutcome out = start("pnv", space);
  out.seeds.push_back(seed);
  const bool converse_applies = space.kind() == NormKind::Lp;
  int parallel_pairs = 0;
  for (int i = 0; i < trials; ++i) {
    Sampler rng(seed, static_cast<std::uint64_t>(i));
    const Vector x = rng.unit_vector(space);
    // Every third pair is collinear so that both implications get exercised.
    const Vector y = i % 3 == 0 ? rng.unimodular(space.field()) * x : rng.unit_vector(space);
    const Functional xs = supporting_functional(space, x, rng.unit_vector(space).coords).xstar;
    const Functional ys = supporting_functional(space, y, rng.unit_vector(space).coords).xstar;
    const Operator a = rank_one(xs, x);
    const Operator b = rank_one(ys, y);
    const RelationReport rank_ones = nr_parallel(space, a, b, cfg);
    const RelationReport vectors = norm_parallel_vectors(space, x, y, cfg);
    if (vectors.verdict) ++parallel_pairs;
    if (rank_ones.verdict) {
      out.add({trial_name("rank-ones || => x || y", i), vectors.verdict, vectors.gap, -vectors.tol,
               describe(vectors), vectors.verdict ? std::vector<Operator>{} : std::vector{a, b}});
    }
    if (converse_applies && vectors.verdict) {
      out.add(holds(trial_name("x || y => rank-ones ||", i), rank_ones, {a, b}));
    }
  }
  out.add(flag("collinear pairs exercised", parallel_pairs > 0,
               std::to_string(parallel_pairs) + " parallel pairs"));

  if (space.kind() == NormKind::L1 && space.dim() == 2) {
    const Vector x = Vector::basis(2, 0);
    const Vector y = Vector::basis(2, 1);
    const Functional xs{1.0, 0.0};
    const Functional ys{0.0, 1.0};
    out.add(holds("l1: (1,0) || (0,1)", norm_parallel_vectors(space, x, y, cfg)));
    out.add(
        fails_strictly("l1: rank-ones not ||", nr_parallel(space, rank_one(xs, x), rank_one(ys, y), cfg)));
  }
  return out;
}

VerificationOutcome run_reference_examples(const EngineConfig& cfg) {
  VerificationOutcome out;
  out.id = "examples";
  out.space = "lp:4,l1,mixed";
  constexpr double kRadiusTol = 1e-6;
  const double v_shift = std::pow(3.0, 0.75) / 4.0;

  {
    const NormedSpace l4 = NormedSpace::lp(2, 4.0);
    const Operator t = fixtures::shift();
    const Operator s = fixtures::swap();
    const Operator id = Operator::identity(2);
    const double vt = numerical_radius(l4, t, cfg).value;
    const double vs = numerical_radius(l4, s, cfg).value;
    const double v_plus = numerical_radius(l4, t + s, cfg).value;
    const double v_minus = numerical_radius(l4, t - s, cfg).value;
    out.add(near("l4: v(T) = 3^(3/4)/4", vt, v_shift, kRadiusTol));
    out.add(near("l4: v(T-S) = 3^(3/4)/4", v_minus, v_shift, kRadiusTol));
    out.add(near("l4: v(S) = 1", vs, 1.0, kRadiusTol));
    out.add(below("l4: v(T+S) < v(T)+v(S)", v_plus, vt + vs - kStrictMargin));
    out.add(below("l4: v(T-S) < v(T)+v(S)", v_minus, vt + vs - kStrictMargin));
    out.add(fails_strictly("l4: T not ||_v S", nr_parallel(l4, t, s, cfg), {t, s}));
    out.add(near("l4: ||T|| = 1", operator_norm(l4, t, cfg), 1.0, kRadiusTol));
    out.add(near("l4: ||S|| = 1", operator_norm(l4, s, cfg), 1.0, kRadiusTol));
    out.add(near("l4: ||T+S|| = 2", operator_norm(l4, t + s, cfg), 2.0, kClosedFormTol));
    out.add(below("l4: ||T+I|| < 2", operator_norm(l4, t + id, cfg), 2.0 - kStrictMargin));
    out.add(below("l4: ||T-I|| < 2", operator_norm(l4, t - id, cfg), 2.0 - kStrictMargin));
    out.add(fails_strictly("l4: T not || I (Daugavet equation)", daugavet_check(l4, t, cfg).equation, {t}));
    out.add(holds("l4: T ||_v I", nr_parallel(l4, t, id, cfg), {t, id}));
  }

  for (Field field : {Field::Real, Field::Complex}) {
    const NormedSpace l1 = NormedSpace::l1(2, field);
    const std::string tag = "l1/" + to_string(field) + ": ";
    const Vector x = Vector::basis(2, 0);
    const Vector y = Vector::basis(2, 1);
    const Functional xs{1.0, 0.0};
    const Functional ys{0.0, 1.0};
    const Operator a = rank_one(xs, x);
    const Operator b = rank_one(ys, y);
    out.add(near(tag + "||(1,0)+(0,1)|| = 2", l1.norm(x + y), 2.0, kClosedFormTol));
    out.add(holds(tag + "(1,0) || (0,1)", norm_parallel_vectors(l1, x, y, cfg)));
    out.add(flag(tag + "x* in J(x), y* in J(y)", in_duality_set(l1, x, xs) && in_duality_set(l1, y, ys)));
    out.add(fails_strictly(tag + "x*(.)x not ||_v y*(.)y", nr_parallel(l1, a, b, cfg), {a, b}));
  }

  {
    const NormedSpace mixed = NormedSpace::mixed();
    const Vector corner{-1.0, 1.0};
    out.add(near("mixed: ||(-1,1)|| = 1", mixed.norm(corner), 1.0, kClosedFormTol));
    out.add(flag("mixed: (-1,1) not smooth", !is_smooth_point(mixed, corner)));
    out.add(flag("mixed: (-1,1) not rotund", !is_rotund_point(mixed, corner)));
    bool others_smooth = true;
    for (int k = 0; k < 64; ++k) {
      const double theta = 2.0 * std::numbers::pi * (k + 0.5) / 64.0;
      const Vector p = mixed.normalize(Vector{std::cos(theta), std::sin(theta)});
      others_smooth = others_smooth && is_smooth_point(mixed, p);
    }
    out.add(flag("mixed: sampled points off +-(-1,1) are smooth", others_smooth));
  }
  return out;
}

RelationReport noninjective_orthogonality(const NormedSpace& space, const Operator& t,
                                          const EngineConfig& cfg) {
  check_operator(space, t);
  const auto kernel = kernel_vector(space, t);
  if (!kernel) throw UsageError("operator is injective: no unit kernel vector");
  const Vector& x = *kernel;
  const Functional xs = some_support(space, x);
  const Operator id = Operator::identity(space.dim());
  const double tol = cfg.tolerance_for(space.dim());

  // v(I + alpha T) >= x*((I + alpha T) x) = x*(x) = 1 on an alpha grid.
  bool grid_ok = true;
  std::vector<Scalar> directions{1.0};
  if (!space.is_real()) directions = {1.0, Scalar{0.0, 1.0}, std::polar(1.0, std::numbers::pi / 4)};
  for (Scalar dir : directions) {
    for (int k = -4; k <= 4; ++k) {
      const Scalar alpha = dir * static_cast<double>(k);
      const Operator m = id + alpha * t;
      const Scalar at_kernel = xs.apply(m.apply(x.coords));
      grid_ok = grid_ok && std::abs(at_kernel - Scalar{1.0, 0.0}) <= kClosedFormTol;
      grid_ok = grid_ok && numerical_radius(space, m, cfg).value >= 1.0 - tol;
    }
  }

  RelationReport r = nr_birkhoff(space, id, t, cfg);
  r.relation = "noninjective-orthogonality";
  r.verdict = r.verdict && grid_ok;
  if (r.witness) {
    r.witness->x = x;
    r.witness->xstar = xs;
  }
  return r;
}

VerificationOutcome verify_noninjective(const NormedSpace& space, std::uint64_t seed,
                                        const EngineConfig& cfg) {
  VerificationOutcome out = start("noninj", space);
  out.seeds.push_back(seed);
  Sampler rng(seed, 0);
  const Operator id = Operator::identity(space.dim());
  std::vector<Vector> points{first_basis_unit(space), rng.unit_vector(space)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector& x = points[i];
    const Functional xs = some_support(space, x);
    const Operator p = rank_one(xs, x);
    out.add(holds(trial_name("I _|_ rank-one", static_cast<int>(i)),
                  noninjective_orthogonality(space, p, cfg), {p}));
    out.add(holds(trial_name("I _|_ I - rank-one", static_cast<int>(i)),
                  noninjective_orthogonality(space, id - p, cfg), {id - p}));
  }
  bool rejected = false;
  try {
    (void)noninjective_orthogonality(space, id, cfg);
  } catch (const UsageError&) {
    rejected = true;
  }
  out.add(flag("identity rejected as injective", rejected));
  return out;
}

VerificationOutcome verify_parallel_orthogonality_equivalence(const NormedSpace& space, int trials,
                                                              std::uint64_t seed, const EngineConfig& cfg) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  VerificationOutcome out = start("final-thm", space);
  out.seeds.push_back(seed);
  const Operator id = Operator::identity(space.dim());
  for (int i = 0; i < trials; ++i) {
    Sampler rng(seed, static_cast<std::uint64_t>(i));
    const Operator t = rng.op(space);
    Operator s;
    switch (i % 4) {
      case 0:
        s = rng.scalar(space.field(), 2.0) * id;
        break;
      case 1:
        s = rng.scalar(space.field(), 2.0) * t;
        break;
      case 2: {
        const Vector x = rng.unit_vector(space);
        s = rank_one(some_support(space, x), x);
        break;
      }
      default:
        s = rng.op(space);
        break;
    }
    const RelationReport direct = nr_parallel(space, t, s, cfg);
    const RelationReport via = nr_parallel_via_orthogonality(space, t, s, cfg);
    std::ostringstream os;
    os.precision(10);
    os << "parallel gap=" << direct.gap << " orthogonality gap=" << via.gap;
    SubCheck c{trial_name("||_v <=> _|_vB form", i),
               direct.verdict == via.verdict,
               direct.gap,
               via.gap,
               os.str(),
               {}};
    if (!c.passed) c.instance = {t, s};
    out.add(std::move(c));
  }
  return out;
}

VerificationOutcome verify_orthogonality_certificates(const NormedSpace& space, int trials,
                                                      std::uint64_t seed, const EngineConfig& cfg) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  VerificationOutcome out = start("vo1", space);
  out.seeds.push_back(seed);
  const Operator id = Operator::identity(space.dim());
  std::vector<Scalar> lambdas{1.0, -1.0};
  if (!space.is_real()) {
    lambdas.clear();
    for (int k = 0; k < 8; ++k) lambdas.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 8));
  }

  auto check_pair = [&](const std::string& name, const Operator& t, const Operator& s) {
    const RelationReport orth = nr_birkhoff(space, t, s, cfg);
    int certified = 0;
    for (Scalar lam : lambdas) certified += orthogonality_certificate(space, t, s, lam, cfg) ? 1 : 0;
    const int total = static_cast<int>(lambdas.size());
    std::ostringstream os;
    os.precision(10);
    os << "orthogonality gap=" << orth.gap << ", certificates " << certified << "/" << total;
    bool ok = true;
    if (orth.verdict) {
      ok = certified == total;
    } else if (orth.strictly_false() && space.is_real()) {
      ok = certified < total;
    }
    SubCheck c{name, ok, static_cast<double>(certified), static_cast<double>(total), os.str(), {}};
    if (!ok) c.instance = {t, s};
    out.add(std::move(c));
  };

  const Vector e1 = first_basis_unit(space);
  const Operator p = rank_one(some_support(space, e1), e1);
  check_pair("I vs P", id, p);
  check_pair("I vs I - P", id, id - p);
  check_pair("I vs I", id, id);
  check_pair("T vs 0", p + id, Operator::zero(space.dim()));
  for (int i = 0; i < trials; ++i) {
    Sampler rng(seed, static_cast<std::uint64_t>(i));
    const Operator t = rng.op(space);
    if (i % 2 == 0) {
      // Orthogonal by construction: T _|_ v(S) T + lambda v(T) S with S = alpha I.
      const Scalar alpha = rng.scalar(space.field(), 2.0);
      const Operator s = alpha * id;
      const double vt = numerical_radius(space, t, cfg).value;
      const double vs = std::abs(alpha);
      const RelationReport par = nr_parallel_via_orthogonality(space, t, s, cfg);
      const Scalar lam = par.witness ? par.witness->coefficient : Scalar{1.0, 0.0};
      check_pair(trial_name("T vs v(S)T + lambda v(T) alpha I", i), t, vs * t + (lam * vt) * s);
    } else {
      check_pair(trial_name("random T vs S", i), t, rng.op(space));
    }
  }
  return out;
}

VerificationOutcome verify_daugavet(const NormedSpace& space, int trials, std::uint64_t seed,
                                    const EngineConfig& cfg) {
  if (trials < 1) throw UsageError("trials must be at least 1");
  VerificationOutcome out = start("daugavet", space);
  out.seeds.push_back(seed);
  const Operator id = Operator::identity(space.dim());

  auto check = [&](const std::string& name, const Operator& t) {
    const DaugavetReport d = daugavet_check(space, t, cfg);
    std::ostringstream os;
    os.precision(10);
    os << "max||I+lT||=" << d.equation.achieved << " 1+||T||=" << d.equation.required << " v(T)=" << d.radius
       << " ||T||=" << d.norm;
    SubCheck c{name, d.agree, d.radius, d.norm, os.str(), {}};
    if (!c.passed) c.instance = {t};
    out.add(std::move(c));
  };

  check("identity", id);
  check("zero", Operator::zero(space.dim()));
  const Vector e1 = first_basis_unit(space);
  check("rank-one x*(.)x", rank_one(some_support(space, e1), e1));
  if (space.dim() == 2 && space.is_real()) check("shift (x,y) -> (0,x)", fixtures::shift());
  for (int i = 0; i < trials; ++i) {
    Sampler rng(seed, static_cast<std::uint64_t>(i));
    Operator t = rng.op(space);
    if (i % 2 == 1) {
      const Vector x = rng.unit_vector(space);
      t = rng.scalar(space.field(), 2.0) * rank_one(some_support(space, x), x);
    }
    check(trial_name("sampled", i), t);
  }
  return out;
}

const std::vector<std::string>& verifier_ids() {
  static const std::vector<std::string> ids{"pvi",    "tpt",       "pva", "pnv",     "examples",
                                            "noninj", "final-thm", "vo1", "daugavet"};
  return ids;
}

std::vector<VerificationOutcome> run_verifier(std::string_view id, const SuiteOptions& opts) {
  const EngineConfig& cfg = opts.cfg;
  const std::uint64_t seed = opts.seed;
  if (id == "all") {
    std::vector<VerificationOutcome> all;
    for (const auto& each : verifier_ids()) {
      auto part = run_verifier(each, opts);
      all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
  }
  const NormedSpace l2 = NormedSpace::lp(2, 2.0);
  const NormedSpace l4 = NormedSpace::lp(2, 4.0);
  const NormedSpace l1 = NormedSpace::l1(2);
  const NormedSpace linf = NormedSpace::linf(2);
  const NormedSpace l2c = NormedSpace::lp(2, 2.0, Field::Complex);

  if (id == "pvi") {
    return {verify_parallel_to_identity(l4, 200, seed, cfg), verify_parallel_to_identity(l2c, 100, seed, cfg)};
  }
  if (id == "tpt") {
    return {nontransitivity_witness(l4, std::nullopt, cfg), nontransitivity_witness(l2, std::nullopt, cfg)};
  }
  if (id == "pva") {
    return {nonadditivity_witness(l2, cfg), nonadditivity_witness(l4, cfg), nonadditivity_witness(l1, cfg)};
  }
  if (id == "pnv") {
    return {verify_rank_one_parallelism(l4, 100, seed, cfg), verify_rank_one_parallelism(l1, 30, seed, cfg)};
  }
  if (id == "examples") return {run_reference_examples(cfg)};
  if (id == "noninj") {
    return {verify_noninjective(l2, seed, cfg), verify_noninjective(l4, seed, cfg),
            verify_noninjective(l1, seed, cfg), verify_noninjective(linf, seed, cfg)};
  }
  if (id == "final-thm") {
    return {verify_parallel_orthogonality_equivalence(l2, 100, seed, cfg),
            verify_parallel_orthogonality_equivalence(l4, 100, seed, cfg)};
  }
  if (id == "vo1") {
    return {verify_orthogonality_certificates(l2, 20, seed, cfg),
            verify_orthogonality_certificates(l4, 20, seed, cfg)};
  }
  if (id == "daugavet") {
    return {verify_daugavet(l2, 20, seed, cfg), verify_daugavet(l4, 20, seed, cfg),
            verify_daugavet(l1, 20, seed, cfg)};
  }
  throw UsageError("unknown verifier id '" + std::string(id) + "'");
}

}  // namespace numrad
