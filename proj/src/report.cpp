#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "errors.hpp"

namespace meanlab {

namespace {

void append_number(std::string& out, double v) {
  if (!std::isfinite(v)) fail(errc::numerical, "report contains a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void dump(const nlohmann::ordered_json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<size_t>(depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + nlohmann::json(key).dump() + ": ";
        dump(value, out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump(value, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      append_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json17(const nlohmann::ordered_json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

nlohmann::ordered_json witness_to_json(const EquivalenceWitness& w) {
  return nlohmann::ordered_json::array({w.a, w.b, w.c, w.d});
}

nlohmann::ordered_json gini_to_json(const GiniParams& p) {
  using nlohmann::ordered_json;
  switch (p.kind) {
    case GiniParams::Kind::real_distinct:
      return ordered_json{{"kind", "real_distinct"}, {"p", p.p}, {"q", p.q}};
    case GiniParams::Kind::real_equal:
      return ordered_json{{"kind", "real_equal"}, {"p", p.p}};
    case GiniParams::Kind::conjugate:
      return ordered_json{{"kind", "conjugate"}, {"a", p.a}, {"b", p.b}};
  }
  fail(errc::invalid_argument, "corrupt Gini parameters");
}

nlohmann::ordered_json decision_to_json(const DecisionReport& rep) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["verdict"] = verdict_name(rep.verdict);
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.conditions) {
    ordered_json e{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  if (rep.witness) j["witness"] = witness_to_json(*rep.witness);
  if (rep.gini) j["gini"] = gini_to_json(*rep.gini);
  if (rep.holder_p) j["holder_p"] = *rep.holder_p;
  if (rep.counterexample) {
    ordered_json ce{{"x", rep.counterexample->x}, {"gap", rep.counterexample->gap}};
    if (rep.counterexample->lambda) ce["lambda"] = *rep.counterexample->lambda;
    j["counterexample"] = std::move(ce);
  }
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  j["grid"] = rep.grid;
  return j;
}

std::string decision_to_text(const DecisionReport& rep) {
  std::ostringstream os;
  for (const auto& c : rep.conditions) {
    char line[160];
    std::snprintf(line, sizeof line, "  [check] %-28s %14.6e  %s\n", c.name.c_str(), c.value,
                  c.pass ? "pass" : "FAIL");
    os << line;
  }
  os << "  verdict: " << verdict_name(rep.verdict) << "\n";
  if (rep.witness) {
    char line[160];
    std::snprintf(line, sizeof line, "  witness: [%.17g, %.17g, %.17g, %.17g]\n", rep.witness->a,
                  rep.witness->b, rep.witness->c, rep.witness->d);
    os << line;
  }
  if (rep.gini) os << "  gini: " << rep.gini->describe() << "\n";
  if (rep.holder_p) {
    char line[64];
    std::snprintf(line, sizeof line, "  holder: p = %.17g\n", *rep.holder_p);
    os << line;
  }
  if (rep.counterexample) {
    os << "  counterexample: x = [";
    for (size_t i = 0; i < rep.counterexample->x.size(); ++i) {
      char num[32];
      std::snprintf(num, sizeof num, "%.17g", rep.counterexample->x[i]);
      os << (i ? ", " : "") << num;
    }
    os << "]";
    if (rep.counterexample->lambda) {
      char num[40];
      std::snprintf(num, sizeof num, ", lambda = %.17g", *rep.counterexample->lambda);
      os << num;
    }
    char gap[48];
    std::snprintf(gap, sizeof gap, ", gap = %.6e\n", rep.counterexample->gap);
    os << gap;
  }
  if (!rep.detail.empty()) os << "  note: " << rep.detail << "\n";
  return os.str();
}

}  // namespace meanlab
