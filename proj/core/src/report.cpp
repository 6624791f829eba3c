#include "numrad/report.hpp"

#include <cmath>
#include <cstdio>

namespace numrad::report {

Json scalar(Scalar z, Field field) {
  if (field == Field::Real) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json coords(const Coords& c, Field field) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) out.push_back(scalar(c(i), field));
  return out;
}

Json matrix(const Operator& op, Field field) {
  Json out = Json::array();
  for (int i = 0; i < op.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < op.dim(); ++j) row.push_back(scalar(op(i, j), field));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

Json witness_json(const std::optional<RelationWitness>& w, Field field) {
  if (!w) return nullptr;
  Json attained = Json::array();
  for (Scalar a : w->attained) attained.push_back(scalar(a, field));
  return Json{{"x", w->x ? coords(w->x->coords, field) : Json(nullptr)},
              {"xstar", w->xstar ? coords(w->xstar->coords, field) : Json(nullptr)},
              {"lambda_or_alpha", scalar(w->coefficient, field)},
              {"attained", std::move(attained)}};
}

Json sweep_json(const std::vector<SweepPoint>& sweep, Field field) {
  Json out = Json::array();
  for (const auto& p : sweep) out.push_back(Json{{"param", scalar(p.param, field)}, {"value", p.value}});
  return out;
}

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent > 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(d * indent), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        dump_into(v, indent, depth + 1, out);
      }
      pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

Json radius_result(const RadiusResult& r, const NormedSpace& space) {
  const Field f = space.field();
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back(Json{{"x", coords(w.x.coords, f)},
                             {"xstar", coords(w.xstar.coords, f)},
                             {"attained", scalar(w.attained, f)}});
  }
  Json best = nullptr;
  if (!r.witnesses.empty()) {
    const auto& w = r.witnesses.front();
    best = Json{{"x", coords(w.x.coords, f)},
                {"xstar", coords(w.xstar.coords, f)},
                {"lambda_or_alpha", nullptr},
                {"attained", Json::array({scalar(w.attained, f)})}};
  }
  return Json{{"id", "radius"},
              {"verdict", nullptr},
              {"value", r.value},
              {"gap", nullptr},
              {"witness", std::move(best)},
              {"tol", nullptr},
              {"margin", nullptr},
              {"witnesses", std::move(witnesses)}};
}

Json relation_result(const std::string& id, const RelationReport& r, const NormedSpace& space,
                     bool with_sweep) {
  Json out{{"id", id},
           {"verdict", r.verdict},
           {"value", r.achieved},
           {"gap", r.gap},
           {"witness", witness_json(r.witness, space.field())},
           {"tol", r.tol},
           {"margin", r.margin},
           {"required", r.required},
           {"strictly_false", r.strictly_false()}};
  if (with_sweep) out["sweep"] = sweep_json(r.sweep, space.field());
  return out;
}

Json daugavet_result(const DaugavetReport& d, const NormedSpace& space, bool with_sweep) {
  Json out = relation_result("daugavet", d.equation, space, with_sweep);
  out["radius"] = d.radius;
  out["norm"] = d.norm;
  out["radius_equals_norm"] = d.radius_equals_norm;
  out["agree"] = d.agree;
  return out;
}

Json outcome(const VerificationOutcome& o) {
  Json checks = Json::array();
  for (const auto& c : o.checks) {
    Json cj{
        {"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"bound", c.bound}, {"detail", c.detail}};
    if (!c.instance.empty()) {
      Json inst = Json::array();
      // Instances are stored with complex scalars so replay is lossless.
      for (const auto& op : c.instance) inst.push_back(matrix(op, Field::Complex));
      cj["instance"] = std::move(inst);
    }
    checks.push_back(std::move(cj));
  }
  Json seeds = Json::array();
  for (auto s : o.seeds) seeds.push_back(s);
  return Json{{"id", o.id},
              {"verdict", o.passed},
              {"value", static_cast<double>(o.checks.size() - o.failures())},
              {"gap", -static_cast<double>(o.failures())},
              {"witness", nullptr},
              {"tol", nullptr},
              {"margin", kStrictMargin},
              {"space", o.space},
              {"seeds", std::move(seeds)},
              {"checks", std::move(checks)}};
}

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  out += '\n';
  return out;
}

}  // namespace numrad::report
