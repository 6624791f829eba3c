#include "numrad/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "numrad/radius.hpp"
#include "numrad/relations.hpp"
#include "numrad/report.hpp"
#include "numrad/theorems.hpp"

namespace numrad::cli {

const char* version() { return NUMRAD_VERSION; }

namespace {

using report::Json;

// Keys accepted in a --config file. Flags given on the command line win.
const std::set<std::string> kConfigKeys = {"space", "p",   "dim",         "field",  "matrix", "a",
                                           "b",     "x",   "y",           "grid",   "refine", "multistarts",
                                           "seed",  "tol", "lambda_grid", "report", "sweep"};

struct Flags {
  std::optional<std::string> space, field, matrix, a, b, x, y, report, config;
  std::optional<int> dim, grid, refine, multistarts, lambda_grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool sweep = false;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--space", f.space, "norm: lp:<p>, l1, linf, l2, mixed");
  cmd.add_option("--dim", f.dim, "ambient dimension (inferred from operands when omitted)");
  cmd.add_option("--field", f.field, "real or complex");
  cmd.add_option("--grid", f.grid, "angle samples for planar searches");
  cmd.add_option("--refine", f.refine, "zoom refinement rounds");
  cmd.add_option("--multistarts", f.multistarts, "random starts for dim >= 3");
  cmd.add_option("--lambda-grid", f.lambda_grid, "unimodular samples for complex searches");
  cmd.add_option("--seed", f.seed, "base seed (falls back to NUMRAD_SEED)");
  cmd.add_option("--tol", f.tol, "verdict tolerance");
  cmd.add_option("--report", f.report, "write a JSON report to this path");
  cmd.add_option("--config", f.config, "JSON file with the same keys as the flags");
  cmd.add_flag("--sweep", f.sweep, "include the lambda/alpha sweep in the report");
}

Json load_config(const std::optional<std::string>& path) {
  if (!path) return Json::object();
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file '" + *path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("config file '" + *path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, _] : cfg.items()) {
    if (!kConfigKeys.contains(key)) throw UsageError("unknown config key '" + key + "'");
  }
  return cfg;
}

// Flag text holding a JSON literal, or the bare identity marker "I".
Json parse_operand_text(const std::string& text, const char* what) {
  if (text == "I") return "I";
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    throw UsageError(std::string("malformed ") + what + ": " + text);
  }
}

/// Merges config and flags. Command-line values take precedence.
struct Resolved {
  Json cfg;

  template <class T>
  std::optional<T> get(const std::string& key) const {
    if (!cfg.contains(key) || cfg[key].is_null()) return std::nullopt;
    try {
      return cfg[key].get<T>();
    } catch (const Json::exception&) {
      throw UsageError("config key '" + key + "' has the wrong type");
    }
  }
};

Resolved resolve(const Flags& f) {
  Resolved r{load_config(f.config)};
  auto set = [&](const char* key, const auto& opt) {
    if (opt) r.cfg[key] = *opt;
  };
  set("space", f.space);
  set("dim", f.dim);
  set("field", f.field);
  set("grid", f.grid);
  set("refine", f.refine);
  set("multistarts", f.multistarts);
  set("lambda_grid", f.lambda_grid);
  set("seed", f.seed);
  set("tol", f.tol);
  set("report", f.report);
  if (f.sweep) r.cfg["sweep"] = true;
  auto operand = [&](const char* key, const std::optional<std::string>& text) {
    if (text) r.cfg[key] = parse_operand_text(*text, key);
  };
  operand("matrix", f.matrix);
  operand("a", f.a);
  operand("b", f.b);
  operand("x", f.x);
  operand("y", f.y);
  return r;
}

std::uint64_t resolve_seed(const Resolved& r, std::uint64_t fallback) {
  if (auto s = r.get<std::uint64_t>("seed")) return *s;
  if (const char* env = std::getenv("NUMRAD_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("NUMRAD_SEED is not an unsigned integer: ") + env);
  }
  return fallback;
}

EngineConfig engine_config(const Resolved& r, std::uint64_t seed) {
  EngineConfig cfg;
  if (auto v = r.get<int>("grid")) cfg.grid_size = *v;
  if (auto v = r.get<int>("refine")) cfg.refine_rounds = *v;
  if (auto v = r.get<int>("multistarts")) cfg.multistarts = *v;
  if (auto v = r.get<int>("lambda_grid")) cfg.lambda_grid = *v;
  if (auto v = r.get<double>("tol")) cfg.tol = *v;
  cfg.record_sweep = r.get<bool>("sweep").value_or(false);
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

Scalar parse_scalar(const Json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw UsageError(std::string(what) + ": entries must be numbers or [re, im] pairs");
}

std::optional<int> operand_dim(const Json& j) {
  if (j.is_string()) return std::nullopt;
  return static_cast<int>(j.size());
}

Operator parse_matrix(const Json& j, int dim, const char* what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "I") return Operator::identity(dim);
    throw UsageError(std::string(what) + ": expected a nested array or I");
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw UsageError(std::string(what) + ": expected " + std::to_string(dim) + " rows");
  }
  MatrixData m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw UsageError(std::string(what) + ": row " + std::to_string(i) + " must have " +
                       std::to_string(dim) + " entries");
    }
    for (int k = 0; k < dim; ++k) m(i, k) = parse_scalar(row[static_cast<std::size_t>(k)], what);
  }
  return Operator(m);
}

Vector parse_vector(const Json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw UsageError(std::string(what) + ": expected " + std::to_string(dim) + " entries");
  }
  Coords c(dim);
  for (int i = 0; i < dim; ++i) c(i) = parse_scalar(j[static_cast<std::size_t>(i)], what);
  return Vector(c);
}

NormedSpace build_space(const Resolved& r, std::initializer_list<const char*> operand_keys) {
  const auto kind = r.get<std::string>("space").value_or("l2");
  const Field field = parse_field(r.get<std::string>("field").value_or("real"));
  std::optional<int> dim = r.get<int>("dim");
  for (const char* key : operand_keys) {
    if (!r.cfg.contains(key)) continue;
    const auto d = operand_dim(r.cfg[key]);
    if (!d) continue;
    if (dim && *dim != *d) {
      throw UsageError(std::string(key) + " has dimension " + std::to_string(*d) + " but --dim is " +
                       std::to_string(*dim));
    }
    dim = d;
  }
  if (!dim) dim = kind == "mixed" ? 2 : 0;
  if (*dim == 0) throw UsageError("cannot infer the dimension; pass --dim");
  std::string space_name = kind;
  if (kind == "lp") {
    const auto p = r.get<double>("p");
    if (!p) throw UsageError("space 'lp' needs a p value (use lp:<p>)");
    std::ostringstream os;
    os << "lp:" << std::setprecision(17) << *p;
    space_name = os.str();
  }
  return NormedSpace::parse(space_name, *dim, field);
}

Json config_json(const NormedSpace* space, const EngineConfig& cfg) {
  Json out;
  if (space) {
    out["space"] = space->name();
    out["dim"] = space->dim();
    out["field"] = to_string(space->field());
  }
  out["grid"] = cfg.grid_size;
  out["refine"] = cfg.refine_rounds;
  out["multistarts"] = cfg.multistarts;
  out["lambda_grid"] = cfg.lambda_grid;
  out["tol"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
  out["sweep"] = cfg.record_sweep;
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_report(const Resolved& r, const std::string& command, Json config, Json results,
                  std::uint64_t seed) {
  const auto path = r.get<std::string>("report");
  if (!path) return;
  Json doc{{"command", command}, {"config", std::move(config)}, {"results", std::move(results)},
           {"seed", seed},       {"version", version()},        {"timestamp", timestamp()}};
  std::ofstream os(*path, std::ios::binary);
  if (!os) throw UsageError("cannot write report to '" + *path + "'");
  os << report::dump(doc);
}

std::string fmt(Scalar z, Field field) {
  std::ostringstream os;
  os << std::setprecision(10);
  if (field == Field::Real) {
    os << z.real();
  } else {
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

std::string fmt(const Coords& c, Field field) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += fmt(c(i), field);
  }
  return s + ")";
}

int cmd_radius(const Flags& f, std::ostream& out) {
  const Resolved r = resolve(f);
  for (const char* key : {"a", "b", "x", "y"}) {
    if (r.cfg.contains(key)) throw UsageError(std::string("radius takes --matrix, not --") + key);
  }
  if (!r.cfg.contains("matrix")) throw UsageError("radius needs --matrix");
  const NormedSpace space = build_space(r, {"matrix"});
  const std::uint64_t seed = resolve_seed(r, 0);
  const EngineConfig cfg = engine_config(r, seed);
  const Operator t = parse_matrix(r.cfg["matrix"], space.dim(), "matrix");
  check_operator(space, t, "matrix");

  const RadiusResult res = numerical_radius(space, t, cfg);
  out << std::setprecision(12) << "v(T) = " << res.value << "\n";
  for (const auto& w : res.witnesses) {
    out << "  x = " << fmt(w.x.coords, space.field()) << "  x* = " << fmt(w.xstar.coords, space.field())
        << "  x*(Tx) = " << fmt(w.attained, space.field()) << "\n";
  }
  Json cfg_json = config_json(&space, cfg);
  cfg_json["matrix"] = report::matrix(t, space.field());
  write_report(r, "radius", std::move(cfg_json), Json::array({report::radius_result(res, space)}), seed);
  return kOk;
}

int cmd_check(const std::string& relation, const Flags& f, std::ostream& out) {
  const Resolved r = resolve(f);
  const bool vector_relation = relation == "parallel" || relation == "birkhoff";
  const bool operator_relation =
      relation == "nr-parallel" || relation == "nr-birkhoff" || relation == "daugavet";
  if (!vector_relation && !operator_relation) {
    throw UsageError("unknown relation '" + relation +
                     "' (expected parallel, birkhoff, nr-parallel, nr-birkhoff, daugavet)");
  }
  const bool has_vectors = r.cfg.contains("x") || r.cfg.contains("y");
  const bool has_operators = r.cfg.contains("a") || r.cfg.contains("b") || r.cfg.contains("matrix");
  if (has_vectors && has_operators) throw UsageError("mixed operand kinds: vectors and matrices");
  if (vector_relation && has_operators) {
    throw UsageError(relation + " takes vectors --x and --y");
  }
  if (operator_relation && has_vectors) {
    throw UsageError(relation + " takes matrices --a and --b");
  }

  const std::uint64_t seed = resolve_seed(r, 0);
  Json results = Json::array();
  Json cfg_json;
  bool verdict = false;

  auto print = [&](const RelationReport& rep, Field field) {
    out << std::setprecision(12) << rep.relation << ": " << (rep.verdict ? "true" : "false")
        << "\n  achieved = " << rep.achieved << "\n  required = " << rep.required << "\n  gap = " << rep.gap
        << " (tol " << rep.tol << ", margin " << rep.margin << ")\n";
    if (!rep.verdict) out << "  strictly false: " << (rep.strictly_false() ? "yes" : "no") << "\n";
    if (rep.witness) {
      const auto& w = *rep.witness;
      if (w.x) out << "  x = " << fmt(w.x->coords, field) << "\n";
      if (w.xstar) out << "  x* = " << fmt(w.xstar->coords, field) << "\n";
      out << "  lambda/alpha = " << fmt(w.coefficient, field) << "\n";
    }
  };

  if (vector_relation) {
    if (!r.cfg.contains("x") || !r.cfg.contains("y")) throw UsageError(relation + " needs --x and --y");
    for (const char* key : {"x", "y"}) {
      if (!r.cfg[key].is_array()) throw UsageError(std::string("--") + key + " must be a vector");
    }
    const NormedSpace space = build_space(r, {"x", "y"});
    const EngineConfig cfg = engine_config(r, seed);
    const Vector x = parse_vector(r.cfg["x"], space.dim(), "x");
    const Vector y = parse_vector(r.cfg["y"], space.dim(), "y");
    space.check_vector(x.coords, "x");
    space.check_vector(y.coords, "y");
    const RelationReport rep =
        relation == "parallel" ? norm_parallel_vectors(space, x, y, cfg) : birkhoff_vectors(space, x, y, cfg);
    print(rep, space.field());
    verdict = rep.verdict;
    results.push_back(report::relation_result(relation, rep, space, cfg.record_sweep));
    cfg_json = config_json(&space, cfg);
    cfg_json["x"] = report::coords(x.coords, space.field());
    cfg_json["y"] = report::coords(y.coords, space.field());
  } else {
    if (r.cfg.contains("matrix")) throw UsageError(relation + " takes --a (and --b), not --matrix");
    if (!r.cfg.contains("a")) throw UsageError(relation + " needs --a");
    const bool needs_b = relation != "daugavet";
    if (needs_b && !r.cfg.contains("b")) throw UsageError(relation + " needs --b");
    if (!needs_b && r.cfg.contains("b")) throw UsageError("daugavet takes a single operator --a");
    const NormedSpace space = build_space(r, {"a", "b"});
    const EngineConfig cfg = engine_config(r, seed);
    const Operator a = parse_matrix(r.cfg["a"], space.dim(), "a");
    check_operator(space, a, "a");
    cfg_json = config_json(&space, cfg);
    cfg_json["a"] = report::matrix(a, space.field());
    if (needs_b) {
      const Operator b = parse_matrix(r.cfg["b"], space.dim(), "b");
      check_operator(space, b, "b");
      cfg_json["b"] = report::matrix(b, space.field());
      const RelationReport rep =
          relation == "nr-parallel" ? nr_parallel(space, a, b, cfg) : nr_birkhoff(space, a, b, cfg);
      print(rep, space.field());
      verdict = rep.verdict;
      results.push_back(report::relation_result(relation, rep, space, cfg.record_sweep));
    } else {
      const DaugavetReport d = daugavet_check(space, a, cfg);
      print(d.equation, space.field());
      out << std::setprecision(12) << "  v(T) = " << d.radius << ", ||T|| = " << d.norm
          << ", v(T) = ||T||: " << (d.radius_equals_norm ? "true" : "false")
          << ", agree: " << (d.agree ? "true" : "false") << "\n";
      verdict = d.equation.verdict;
      results.push_back(report::daugavet_result(d, space, cfg.record_sweep));
    }
  }
  write_report(r, "check " + relation, std::move(cfg_json), std::move(results), seed);
  return verdict ? kOk : kViolated;
}

int cmd_verify(const std::string& id, const Flags& f, std::ostream& out) {
  const Resolved r = resolve(f);
  for (const char* key : {"matrix", "a", "b", "x", "y", "space", "dim", "field", "p"}) {
    if (r.cfg.contains(key)) {
      throw UsageError(std::string("verify runs fixed spaces; '") + key + "' is not accepted");
    }
  }
  const std::uint64_t seed = resolve_seed(r, 42);
  SuiteOptions opts;
  opts.seed = seed;
  opts.cfg = engine_config(r, seed);
  const auto outcomes = run_verifier(id, opts);

  bool all = true;
  Json results = Json::array();
  out << std::left << std::setw(11) << "id" << std::setw(22) << "space" << std::setw(8) << "checks"
      << std::setw(10) << "failures"
      << "result\n";
  for (const auto& o : outcomes) {
    all = all && o.passed;
    out << std::left << std::setw(11) << o.id << std::setw(22) << o.space << std::setw(8) << o.checks.size()
        << std::setw(10) << o.failures() << (o.passed ? "PASS" : "FAIL") << "\n";
    for (const auto& c : o.checks) {
      if (!c.passed) out << "    failed: " << c.name << "  " << c.detail << "\n";
    }
    results.push_back(report::outcome(o));
  }
  out << (all ? "all verifiers passed" : "some verifiers FAILED") << "\n";
  Json cfg_json = config_json(nullptr, opts.cfg);
  cfg_json["suite"] = id;
  write_report(r, "verify " + id, std::move(cfg_json), std::move(results), seed);
  return all ? kOk : kViolated;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"numrad: numerical radius and operator relations on finite-dimensional normed spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Flags radius_flags, check_flags, verify_flags;
  std::string relation, verifier;

  auto* radius = app.add_subcommand("radius", "compute v(T) with witnesses");
  add_common(*radius, radius_flags);
  radius->add_option("--matrix", radius_flags.matrix, "row-major nested array, or I");

  auto* check = app.add_subcommand("check", "decide a relation");
  check->add_option("relation", relation, "parallel | birkhoff | nr-parallel | nr-birkhoff | daugavet")
      ->required();
  add_common(*check, check_flags);
  check->add_option("--x", check_flags.x, "first vector");
  check->add_option("--y", check_flags.y, "second vector");
  check->add_option("--a", check_flags.a, "first operator (nested array or I)");
  check->add_option("--b", check_flags.b, "second operator (nested array or I)");
  check->add_option("--matrix", check_flags.matrix, "rejected: use --a/--b");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("id", verifier, "verifier id or all")->required();
  add_common(*verify, verify_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (radius->parsed()) return cmd_radius(radius_flags, out);
    if (check->parsed()) return cmd_check(relation, check_flags, out);
    return cmd_verify(verifier, verify_flags, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace numrad::cli
