// Named definition documents: grounds, sigma-fields, measures, functions,
// maps, CDF specs, interval sets, integrands, and samplers, loaded from one
// JSON tree with name resolution, plus the small expression evaluator used
// by the command line.

#pragma once

#include "measurekit/io.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <string>

namespace measurekit {

class Workspace {
 public:
  std::map<std::string, GroundSet> grounds;
  std::map<std::string, SigmaField> sigma_fields;
  std::map<std::string, SetFamily> families;
  std::map<std::string, MeasureTable> measures;
  std::map<std::string, NumFn> functions;
  std::map<std::string, MeasurableMap> maps;
  std::map<std::string, CdfSpec> cdfs;
  std::map<std::string, IntervalSet> interval_sets;
  std::map<std::string, PiecewiseExpoly> integrands;
  std::map<std::string, CoordinateSampler> samplers;

  static Workspace from_json(const io::json& j, std::size_t max_ground_size = 0) {
    using io::fail;
    Workspace w;
    if (!j.is_object()) fail("workspace", "expected a JSON object");
    if (j.contains("grounds"))
      for (const auto& [name, g] : j["grounds"].items()) {
        GroundSet gs = io::ground_from(g, "grounds." + name);
        if (max_ground_size && gs.size() > max_ground_size)
          fail("grounds." + name, "ground set exceeds the size cap of " +
                                      std::to_string(max_ground_size));
        w.grounds.emplace(name, std::move(gs));
      }
    auto ground_ref = [&](const io::json& spec, const std::string& where) -> GroundSet {
      if (spec.is_string()) {
        auto it = w.grounds.find(spec.get<std::string>());
        if (it == w.grounds.end()) fail(where, "unknown ground '" + spec.get<std::string>() + "'");
        return it->second;
      }
      return io::ground_from(spec, where);
    };
    if (j.contains("families"))
      for (const auto& [name, f] : j["families"].items()) {
        std::string where = "families." + name;
        if (f.is_object() && f.contains("ground") && f.contains("sets")) {
          GroundSet g = ground_ref(f["ground"], where + ".ground");
          std::vector<Subset> members;
          for (const auto& s : f["sets"]) members.push_back(io::subset_from(g, s, where + ".sets"));
          w.families.emplace(name, SetFamily(g, members));
        } else {
          fail(where, "expected {ground, sets}");
        }
      }
    if (j.contains("sigma_fields"))
      for (const auto& [name, f] : j["sigma_fields"].items()) {
        std::string where = "sigma_fields." + name;
        if (!f.contains("ground")) fail(where, "expected a ground");
        GroundSet g = ground_ref(f["ground"], where + ".ground");
        w.sigma_fields.emplace(name, io::sigma_field_from(f, g, where));
      }
    if (j.contains("measures"))
      for (const auto& [name, m] : j["measures"].items()) {
        std::string where = "measures." + name;
        GroundSet g = m.contains("ground")
                          ? ground_ref(m["ground"], where + ".ground")
                          : (m.contains("space") && m["space"].contains("ground")
                                 ? io::ground_from(m["space"]["ground"], where + ".space.ground")
                                 : GroundSet(std::vector<std::string>{}));
        if (g.size() == 0) fail(where, "expected a ground");
        io::json spec = m;
        if (m.contains("sigma_field") && m["sigma_field"].is_string()) {
          auto it = w.sigma_fields.find(m["sigma_field"].get<std::string>());
          if (it == w.sigma_fields.end()) fail(where, "unknown sigma-field reference");
          spec["sigma_field"] = io::to_json(it->second);
        }
        w.measures.emplace(name, io::measure_from(spec, g, where));
      }
    if (j.contains("functions"))
      for (const auto& [name, f] : j["functions"].items()) {
        std::string where = "functions." + name;
        GroundSet g = f.contains("ground")
                          ? ground_ref(f["ground"], where + ".ground")
                          : (f.contains("space") && f["space"].contains("ground")
                                 ? io::ground_from(f["space"]["ground"], where + ".space.ground")
                                 : GroundSet(std::vector<std::string>{}));
        if (g.size() == 0) fail(where, "expected a ground");
        io::json spec = f;
        if (f.contains("sigma_field") && f["sigma_field"].is_string()) {
          auto it = w.sigma_fields.find(f["sigma_field"].get<std::string>());
          if (it == w.sigma_fields.end()) fail(where, "unknown sigma-field reference");
          spec["sigma_field"] = io::to_json(it->second);
        }
        w.functions.emplace(name, io::fn_from(spec, g, where));
      }
    if (j.contains("maps"))
      for (const auto& [name, m] : j["maps"].items()) {
        std::string where = "maps." + name;
        if (!m.contains("domain") || !m.contains("codomain")) fail(where, "expected domain and codomain");
        GroundSet dom = ground_ref(m["domain"], where + ".domain");
        GroundSet cod = ground_ref(m["codomain"], where + ".codomain");
        w.maps.emplace(name, io::map_from(m, dom, cod, where));
      }
    if (j.contains("cdfs"))
      for (const auto& [name, f] : j["cdfs"].items())
        w.cdfs.emplace(name, io::cdf_from(f, "cdfs." + name));
    if (j.contains("interval_sets"))
      for (const auto& [name, s] : j["interval_sets"].items())
        w.interval_sets.emplace(name, io::interval_set_from(s, "interval_sets." + name));
    if (j.contains("integrands"))
      for (const auto& [name, f] : j["integrands"].items())
        w.integrands.emplace(name, io::integrand_from(f, "integrands." + name));
    if (j.contains("samplers"))
      for (const auto& [name, s] : j["samplers"].items())
        w.samplers.emplace(name, io::sampler_from(s, "samplers." + name));
    return w;
  }

  io::json to_json() const {
    io::json out = io::json::object();
    auto put = [&out](const char* key, const auto& table) {
      if (table.empty()) return;
      io::json sect = io::json::object();
      for (const auto& [name, value] : table) sect[name] = io::to_json(value);
      out[key] = std::move(sect);
    };
    if (!grounds.empty()) {
      io::json sect = io::json::object();
      for (const auto& [name, g] : grounds) sect[name] = io::to_json(g);
      out["grounds"] = std::move(sect);
    }
    put("families", families);
    put("sigma_fields", sigma_fields);
    put("measures", measures);
    put("functions", functions);
    put("maps", maps);
    put("cdfs", cdfs);
    put("interval_sets", interval_sets);
    put("integrands", integrands);
    put("samplers", samplers);
    return out;
  }

  template <typename T>
  static const T& resolve(const std::map<std::string, T>& table, const std::string& name,
                          const std::string& what) {
    auto it = table.find(name);
    if (it == table.end())
      throw invalid_argument_error("unresolved " + what + " '" + name + "'");
    return it->second;
  }
};

// --- the eval expression grammar: ident '(' name-or-scalar, ... ')' ----------

struct EvalOutcome {
  std::string rendered;          // human-readable result line
  io::json report;               // machine-readable payload
  bool ill_defined = false;      // integral convention fired
};

namespace detail_eval {

struct Call {
  std::string fn;
  std::vector<std::string> args;
};

inline Call parse_call(const std::string& expr) {
  Call c;
  auto open = expr.find('(');
  auto close = expr.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw parse_error("eval: expected ident(arg, ...), got '" + expr + "'");
  auto trim = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  };
  c.fn = trim(expr.substr(0, open));
  std::string inner = expr.substr(open + 1, close - open - 1);
  std::string cur;
  for (char ch : inner) {
    if (ch == ',') {
      c.args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) c.args.push_back(trim(cur));
  if (c.fn.empty()) throw parse_error("eval: missing function name");
  return c;
}

inline std::string render_real(const RealValue& v, double tol) {
  if (v.exact) return v.xval.str() + " (exact)";
  std::ostringstream os;
  os.precision(9);
  os << std::fixed << v.approx;
  std::ostringstream ts;
  ts << std::scientific;
  ts.precision(0);
  ts << tol;
  return os.str() + " ± " + ts.str() + " (numeric)";
}

}  // namespace detail_eval

// Evaluates one call expression against the workspace.  Supported forms:
//   integrate(f, mu)      mass(mu)            rn(mu, nu)
//   condexp(f, P, B)      stieltjes(g, F)     measure(F, S)
//   quantile(F, u)
inline EvalOutcome eval_expression(const Workspace& w, const std::string& expr,
                                   double tolerance = 1e-9) {
  using detail_eval::parse_call;
  using detail_eval::render_real;
  detail_eval::Call call = parse_call(expr);
  auto need = [&](std::size_t n) {
    if (call.args.size() != n)
      throw parse_error("eval: " + call.fn + " expects " + std::to_string(n) + " arguments");
  };
  EvalOutcome out;
  if (call.fn == "integrate") {
    need(2);
    const NumFn& f = Workspace::resolve(w.functions, call.args[0], "function");
    const MeasureTable& mu = Workspace::resolve(w.measures, call.args[1], "measure");
    IntegralResult r = integrate(f, mu);
    out.report = io::to_json(r);
    if (!r.well_defined) {
      out.ill_defined = true;
      out.rendered = "undefined (inf - inf); convention value 0";
    } else {
      out.rendered = r.value.str() + " (exact)";
    }
    return out;
  }
  if (call.fn == "mass") {
    need(1);
    const MeasureTable& mu = Workspace::resolve(w.measures, call.args[0], "measure");
    out.rendered = classify(mu).mass.str() + " (exact)";
    out.report = io::json{{"mass", classify(mu).mass.str()}};
    return out;
  }
  if (call.fn == "rn") {
    need(2);
    const MeasureTable& mu = Workspace::resolve(w.measures, call.args[0], "measure");
    const MeasureTable& nu = Workspace::resolve(w.measures, call.args[1], "measure");
    NumFn d = radon_nikodym(mu, nu);
    out.report = io::to_json(d);
    std::string line;
    for (std::size_t jx = 0; jx < d.size(); ++jx) {
      if (jx) line += ", ";
      line += d.space().ground().subset_str(d.space().atoms()[jx]) + ": " + d.at_atom(jx).str();
    }
    out.rendered = line + " (exact)";
    return out;
  }
  if (call.fn == "condexp") {
    need(3);
    const NumFn& f = Workspace::resolve(w.functions, call.args[0], "function");
    const MeasureTable& p = Workspace::resolve(w.measures, call.args[1], "measure");
    const SigmaField& b = Workspace::resolve(w.sigma_fields, call.args[2], "sigma-field");
    CondExpTable ce = cond_exp(f, p, b);
    out.report = io::to_json(ce.as_fn());
    std::string line;
    for (std::size_t jx = 0; jx < ce.values.size(); ++jx) {
      if (jx) line += ", ";
      line += b.ground().subset_str(b.atoms()[jx]) + ": " + ce.values[jx].str();
    }
    out.rendered = line + " (exact)";
    return out;
  }
  if (call.fn == "stieltjes") {
    need(2);
    const PiecewiseExpoly& g = Workspace::resolve(w.integrands, call.args[0], "integrand");
    const CdfSpec& f = Workspace::resolve(w.cdfs, call.args[1], "cdf");
    RealValue v = integrate_stieltjes(g, f);
    out.report = io::to_json(v, tolerance);
    out.rendered = render_real(v, tolerance);
    return out;
  }
  if (call.fn == "measure") {
    need(2);
    const CdfSpec& f = Workspace::resolve(w.cdfs, call.args[0], "cdf");
    const IntervalSet& s = Workspace::resolve(w.interval_sets, call.args[1], "interval set");
    RealValue v = measure_set(f, s);
    out.report = io::to_json(v, tolerance);
    out.rendered = render_real(v, tolerance);
    return out;
  }
  if (call.fn == "quantile") {
    need(2);
    const CdfSpec& f = Workspace::resolve(w.cdfs, call.args[0], "cdf");
    Rat u = rat_parse(call.args[1]);
    RealValue v = quantile(f, u).value;
    out.report = io::to_json(v, tolerance);
    out.rendered = render_real(v, tolerance);
    return out;
  }
  throw parse_error("eval: unknown function '" + call.fn + "'");
}

}  // namespace measurekit
