// Acceptance gate: runs every criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Usage: acceptance <path-to-numrad> [workdir]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "numrad/radius.hpp"
#include "numrad/relations.hpp"
#include "numrad/theorems.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace numrad;
namespace fs = std::filesystem;

namespace {

constexpr double kMargin = 1e-3;
const double kShiftRadius = std::pow(3.0, 0.75) / 4.0;

struct Criterion {
  int id;
  std::string title;
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

oracle::Mat2 to_mat2(const Operator& t) {
  oracle::Mat2 m;
  m << t(0, 0).real(), t(0, 1).real(), t(1, 0).real(), t(1, 1).real();
  return m;
}

const NormedSpace kL4 = NormedSpace::lp(2, 4.0);
const NormedSpace kL2 = NormedSpace::lp(2, 2.0);

Criterion lp4_radii() {
  Criterion c{1, "l4 example radii v(T), v(T-S) = 3^(3/4)/4, v(S) = 1 within 1e-6, < 1 s each"};
  const Operator t = fixtures::shift();
  const Operator s = fixtures::swap();
  struct Item {
    const char* name;
    Operator op;
    double expected;
  };
  for (const Item& it :
       {Item{"v(T)", t, kShiftRadius}, Item{"v(T-S)", t - s, kShiftRadius}, Item{"v(S)", s, 1.0}}) {
    double value = 0.0;
    const double secs = timed([&] { value = numerical_radius(kL4, it.op).value; });
    c.require(std::abs(value - it.expected) <= 1e-6,
              std::string(it.name) + " = " + num(value) + " (expected " + num(it.expected) + ")");
    c.require(secs < 1.0, std::string(it.name) + " runtime " + num(secs) + " s");
  }
  return c;
}

Criterion lp4_strictness() {
  Criterion c{2, "l4 strict inequalities with margin 1e-3, engine agrees with 1e5-point oracle within 1e-6"};
  const Operator t = fixtures::shift();
  const Operator s = fixtures::swap();
  const Operator id = Operator::identity(2);
  constexpr int kOracleSamples = 100000;

  const RelationReport par = nr_parallel(kL4, t, s);
  double oracle_best = 0.0;
  for (double lam : {1.0, -1.0}) {
    oracle_best = std::max(oracle_best, oracle::lp_radius_grid(to_mat2(t + lam * s), 4.0, kOracleSamples));
  }
  c.require(par.achieved <= par.required - kMargin,
            "max_lambda v(T + lambda S) = " + num(par.achieved) +
                " <= v(T)+v(S) - 1e-3 = " + num(par.required - kMargin));
  c.require(std::abs(par.achieved - oracle_best) <= 1e-6,
            "engine " + num(par.achieved) + " vs oracle " + num(oracle_best));

  const DaugavetReport d = daugavet_check(kL4, t);
  double oracle_norm = 0.0;
  for (double lam : {1.0, -1.0}) {
    oracle_norm =
        std::max(oracle_norm, oracle::lp_operator_norm_grid(to_mat2(id + lam * t), 4.0, kOracleSamples));
  }
  c.require(d.equation.achieved <= 2.0 - kMargin,
            "max_lambda ||I + lambda T|| = " + num(d.equation.achieved) + " <= 2 - 1e-3");
  c.require(std::abs(d.equation.achieved - oracle_norm) <= 1e-6,
            "engine " + num(d.equation.achieved) + " vs oracle " + num(oracle_norm));
  return c;
}

Criterion lp4_norms() {
  Criterion c{3, "l4 operator norms ||T|| = ||S|| = 1, ||T+S|| = 2 within 1e-6"};
  const Operator t = fixtures::shift();
  const Operator s = fixtures::swap();
  const double nt = operator_norm(kL4, t);
  const double ns = operator_norm(kL4, s);
  const double nsum = operator_norm(kL4, t + s);
  c.require(std::abs(nt - 1.0) <= 1e-6, "||T|| = " + num(nt));
  c.require(std::abs(ns - 1.0) <= 1e-6, "||S|| = " + num(ns));
  c.require(std::abs(nsum - 2.0) <= 1e-6, "||T+S|| = " + num(nsum));
  return c;
}

Criterion l1_example() {
  Criterion c{4, "l1 example: (1,0) || (0,1) and max_lambda v(A + lambda B) <= 2 - 1e-3"};
  for (Field f : {Field::Real, Field::Complex}) {
    const NormedSpace l1 = NormedSpace::l1(2, f);
    const Vector x{1.0, 0.0};
    const Vector y{0.0, 1.0};
    const RelationReport vec = norm_parallel_vectors(l1, x, y);
    c.require(vec.verdict, to_string(f) + ": ||(1,0) + (0,1)|| = " + num(vec.achieved));
    const Operator a = rank_one(Functional{1.0, 0.0}, x);
    const Operator b = rank_one(Functional{0.0, 1.0}, y);
    const RelationReport ops = nr_parallel(l1, a, b);
    c.require(ops.achieved <= 2.0 - kMargin,
              to_string(f) + ": max_lambda v(A + lambda B) = " + num(ops.achieved));
  }
  return c;
}

Criterion euclidean_oracles() {
  Criterion c{5, "Euclidean oracle: 50 real (dim 2, 3) within 1e-6, 20 complex 2x2 within 1e-4, < 30 s"};
  int real_bad = 0;
  int complex_bad = 0;
  double worst_real = 0.0;
  double worst_complex = 0.0;
  const double secs = timed([&] {
    for (int k = 0; k < 50; ++k) {
      const NormedSpace s = NormedSpace::lp(k < 25 ? 2 : 3, 2.0);
      gen::Gen g(500, static_cast<std::uint64_t>(k));
      const Operator t = g.op(s);
      const Eigen::MatrixXd m = t.matrix().real();
      const double err = std::abs(numerical_radius(s, t).value - oracle::euclid_radius_real(m));
      worst_real = std::max(worst_real, err);
      if (err > 1e-6) ++real_bad;
    }
    const NormedSpace sc = NormedSpace::lp(2, 2.0, Field::Complex);
    for (int k = 0; k < 20; ++k) {
      gen::Gen g(600, static_cast<std::uint64_t>(k));
      const Operator t = g.op(sc);
      const Eigen::MatrixXcd m = t.matrix();
      const double err = std::abs(numerical_radius(sc, t).value - oracle::euclid_radius_complex(m, 7200));
      worst_complex = std::max(worst_complex, err);
      if (err > 1e-4) ++complex_bad;
    }
  });
  c.require(real_bad == 0,
            "real: " + std::to_string(real_bad) + "/50 outside 1e-6, worst " + num(worst_real));
  c.require(complex_bad == 0,
            "complex: " + std::to_string(complex_bad) + "/20 outside 1e-4, worst " + num(worst_complex));
  c.require(secs < 30.0, "runtime " + num(secs) + " s");
  return c;
}

Criterion property_suites() {
  Criterion c{6, "property suites, 100+ seeded trials each, zero violations"};
  const std::vector<props::Result> results{
      props::seminorm(kL4, 100, 1),
      props::dominated_by_norm(kL4, 100, 2),
      props::nr_parallel_symmetry(kL4, 100, 3),
      props::nr_parallel_homogeneity(kL4, 100, 4),
      props::nr_birkhoff_homogeneity(kL4, 100, 5),
      props::parallel_to_identity(kL4, 100, 6),
      props::convexity(kL4, 100, 7),
      props::equivalence(kL2, 100, 8),
      props::equivalence(kL4, 100, 9),
  };
  for (const auto& r : results) {
    c.require(r.ok() && r.trials >= 100, r.name + ": " + std::to_string(r.violations) + "/" +
                                             std::to_string(r.trials) + " violations" +
                                             (r.first_failure.empty() ? "" : "; " + r.first_failure));
  }
  return c;
}

Criterion constructive() {
  Criterion c{7, "constructive witnesses with margin 1e-3; non-injective orthogonality; Daugavet agreement"};
  auto summarize = [&](const VerificationOutcome& o) {
    std::string what = o.id + " on " + o.space + ": " + std::to_string(o.checks.size() - o.failures()) + "/" +
                       std::to_string(o.checks.size()) + " checks";
    for (const auto& ch : o.checks) {
      if (!ch.passed) what += "; failed " + ch.name;
    }
    c.require(o.passed, what);
  };
  for (const NormedSpace& s : {kL2, kL4}) {
    summarize(nontransitivity_witness(s));
    summarize(nonadditivity_witness(s));
  }
  // Strict parts of the constructions must clear the margin, not just tol.
  for (const NormedSpace& s : {kL2, kL4}) {
    const Vector x = Vector::basis(2, 0);
    const Vector y = annihilated_direction(s, x);
    const Operator a = rank_one(std::get<Functional>(duality_set(s, x).rep), x);
    const Operator b = rank_one(std::get<Functional>(duality_set(s, y).rep), y);
    const RelationReport r = nr_parallel(s, a, b);
    c.require(r.gap <= -kMargin, s.name() + ": A not ||_v B, gap " + num(r.gap));
    const Operator id = Operator::identity(2);
    const RelationReport q = nr_birkhoff(s, id, id);
    c.require(q.gap <= -kMargin, s.name() + ": I not _|_vB I, gap " + num(q.gap));
  }
  for (const NormedSpace& s : {kL2, kL4, NormedSpace::l1(2), NormedSpace::linf(2)}) {
    const Vector e = Vector::basis(2, 0);
    const Operator p = rank_one(Functional{1.0, 0.0}, e);
    c.require(noninjective_orthogonality(s, p).verdict, s.name() + ": I _|_vB rank-one");
    c.require(noninjective_orthogonality(s, Operator::identity(2) - p).verdict,
              s.name() + ": I _|_vB I - rank-one");
  }
  for (const NormedSpace& s : {kL2, kL4, NormedSpace::l1(2), NormedSpace::linf(2), NormedSpace::mixed()}) {
    summarize(verify_daugavet(s, 20, 11));
  }
  return c;
}

int run_cli(const std::string& exe, const std::vector<std::string>& args) {
  std::string cmd = "'" + exe + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string without_timestamp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return std::regex_replace(text, std::regex(R"(\n\s*"timestamp": "[^"]*",?)"), "");
}

Criterion full_suite(const std::string& exe, const fs::path& work) {
  Criterion c{8, "verify all --seed 42 exits 0 in < 5 min; rerun is byte-identical apart from timestamp"};
  fs::create_directories(work);
  const fs::path first = work / "verify_all_1.json";
  const fs::path second = work / "verify_all_2.json";
  for (const fs::path& out : {first, second}) {
    int code = -1;
    const double secs =
        timed([&] { code = run_cli(exe, {"verify", "all", "--seed", "42", "--report", out.string()}); });
    c.require(code == 0, out.filename().string() + ": exit code " + std::to_string(code));
    c.require(secs < 300.0, out.filename().string() + ": runtime " + num(secs) + " s");
  }
  const std::string a = without_timestamp(first);
  const std::string b = without_timestamp(second);
  c.require(!a.empty() && a == b, "reports identical (" + std::to_string(a.size()) + " bytes)");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-numrad> [workdir]\n";
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "numrad_acceptance";

  const std::vector<std::function<Criterion()>> criteria{
      lp4_radii,         lp4_strictness,  lp4_norms,    l1_example,
      euclidean_oracles, property_suites, constructive, [&] { return full_suite(exe, work); }};

  int failed = 0;
  for (const auto& run : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const Criterion c = run();
    const double secs = seconds_since(t0);
    std::cout << (c.passed ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "  ["
              << num(secs) << " s]\n";
    for (const auto& n : c.notes) std::cout << "        " << n << "\n";
    std::cout.flush();
    if (!c.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria FAILED")
            << "\n";
  return failed == 0 ? 0 : 1;
}
