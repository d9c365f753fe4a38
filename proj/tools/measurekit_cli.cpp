// measurekit command line: load definition documents, invoke operations,
// run named check suites, and emit reports.
//
// Exit codes: 0 success, 1 assertion/check failure, 2 usage or parse error.

#include "measurekit/measurekit.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace measurekit;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::size_t max_ground_size = 20;
  std::string report_path;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

Workspace load_workspace(const std::string& path, const GlobalOptions& opt) {
  return Workspace::from_json(load_json_file(path), opt.max_ground_size);
}

void write_report(const GlobalOptions& opt, const json& payload) {
  if (opt.report_path.empty()) return;
  std::ofstream out(opt.report_path);
  if (!out) throw parse_error("cannot write report to '" + opt.report_path + "'");
  out << payload.dump(2) << "\n";
}

int cmd_gen_sigma(const GlobalOptions& opt, const std::string& ws_path,
                  const std::string& family_name) {
  Workspace w = load_workspace(ws_path, opt);
  const SetFamily& family = Workspace::resolve(w.families, family_name, "family");
  if (family.ground.size() > opt.max_ground_size)
    throw parse_error("ground set exceeds the size cap of " +
                      std::to_string(opt.max_ground_size));
  SigmaField f = generate_sigma_field(family.ground, family);
  std::string atoms;
  for (std::size_t j = 0; j < f.atom_count(); ++j) {
    if (j) atoms += ",";
    atoms += f.ground().subset_str(f.atoms()[j]);
  }
  std::size_t members = std::size_t(1) << f.atom_count();
  std::cout << "atoms: " << atoms << "; members: " << members << "\n";
  write_report(opt, json{{"atoms", io::to_json(f)["atoms"]}, {"members", members}});
  return kExitOk;
}

int cmd_eval(const GlobalOptions& opt, const std::string& ws_path, const std::string& expr) {
  Workspace w = load_workspace(ws_path, opt);
  EvalOutcome out = eval_expression(w, expr, opt.tolerance);
  std::cout << out.rendered << "\n";
  write_report(opt, out.report);
  return kExitOk;
}

int cmd_condexp(const GlobalOptions& opt, const std::string& ws_path, const std::string& f,
                const std::string& p, const std::string& b) {
  return cmd_eval(opt, ws_path, "condexp(" + f + ", " + p + ", " + b + ")");
}

int cmd_rn(const GlobalOptions& opt, const std::string& ws_path, const std::string& mu,
           const std::string& nu) {
  return cmd_eval(opt, ws_path, "rn(" + mu + ", " + nu + ")");
}

int cmd_product(const GlobalOptions& opt, const std::string& ws_path, const std::string& mu_name,
                const std::string& nu_name) {
  Workspace w = load_workspace(ws_path, opt);
  const MeasureTable& mu = Workspace::resolve(w.measures, mu_name, "measure");
  const MeasureTable& nu = Workspace::resolve(w.measures, nu_name, "measure");
  MeasureTable prod = product_measure(mu, nu);
  for (std::size_t j = 0; j < prod.space().atom_count(); ++j)
    std::cout << prod.space().ground().subset_str(prod.space().atoms()[j]) << ": "
              << prod.weight(j).str() << "\n";
  write_report(opt, io::to_json(prod));
  return kExitOk;
}

int cmd_stieltjes_measure(const GlobalOptions& opt, const std::string& ws_path,
                          const std::string& cdf, const std::string& set) {
  return cmd_eval(opt, ws_path, "measure(" + cdf + ", " + set + ")");
}

int cmd_stieltjes_quantile(const GlobalOptions& opt, const std::string& ws_path,
                           const std::string& cdf, const std::string& u) {
  return cmd_eval(opt, ws_path, "quantile(" + cdf + ", " + u + ")");
}

// Caratheodory extension demo: outer measure of a battery of interval sets
// matches the Stieltjes measure, and every battery member splits every
// other additively.
int cmd_stieltjes_extend(const GlobalOptions& opt, const std::string& ws_path,
                         const std::string& cdf_name, std::vector<std::string> set_names) {
  Workspace w = load_workspace(ws_path, opt);
  const CdfSpec& f = Workspace::resolve(w.cdfs, cdf_name, "cdf");
  Premeasure nu{f, false};
  std::vector<IntervalSet> battery;
  if (set_names.empty())
    for (const auto& [name, s] : w.interval_sets) battery.push_back(s);
  else
    for (const auto& name : set_names)
      battery.push_back(Workspace::resolve(w.interval_sets, name, "interval set"));
  if (battery.empty()) throw parse_error("stieltjes extend: no interval sets given");

  bool all_ok = true;
  json cases = json::array();
  for (const auto& s : battery) {
    RealValue om = outer_measure(nu, s);
    RealValue ms = measure_set(f, s);
    bool agree = om.exact && ms.exact ? om.xval == ms.xval
                                      : std::abs(om.approx - ms.approx) <= opt.tolerance;
    CaratheodoryReport split = caratheodory_measurable(nu, s, battery, opt.tolerance);
    bool ok = agree && split.all_passed();
    all_ok = all_ok && ok;
    cases.push_back(json{{"set", io::to_json(s)},
                         {"outer", io::to_json(om, opt.tolerance)},
                         {"measure", io::to_json(ms, opt.tolerance)},
                         {"splitting_passed", split.all_passed()},
                         {"passed", ok}});
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << s.str() << ": outer " << om.str()
              << ", measure " << ms.str() << ", splitting "
              << (split.all_passed() ? "ok" : "violated") << "\n";
  }
  write_report(opt, json{{"cdf", cdf_name}, {"cases", cases}, {"all_passed", all_ok}});
  return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_sample(const GlobalOptions& opt, const std::string& ws_path, const std::string& name,
               std::size_t length, std::size_t count) {
  Workspace w = load_workspace(ws_path, opt);
  CoordinateSampler s = Workspace::resolve(w.samplers, name, "sampler");
  if (opt.seed) s.seed = opt.seed;
  for (std::size_t d = 0; d < count; ++d) {
    auto tuple = s.sample_tuple(length, d);
    for (std::size_t i = 0; i < tuple.size(); ++i)
      std::cout << (i ? "\t" : "") << tuple[i];
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_check(const GlobalOptions& opt, const std::string& suite, std::size_t cases) {
  SuiteOptions so;
  so.seed = opt.seed;
  so.cases = cases;
  so.tolerance = opt.tolerance;
  SuiteReport rep = run_suite(suite, so);
  for (const auto& c : rep.cases)
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << rep.suite << "/" << c.id << ": "
              << c.description << " (" << (c.exact ? "exact" : "tolerance") << "; " << c.detail
              << ")\n";
  write_report(opt, io::to_json(rep));
  return rep.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurekit: exact measures, integrals, and their theorems on finite spaces "
               "and the real line"};
  app.require_subcommand(1);

  GlobalOptions opt;
  if (const char* env_seed = std::getenv("MEASUREKIT_SEED"))
    opt.seed = std::strtoull(env_seed, nullptr, 10);
  app.add_option("--seed", opt.seed, "default seed for randomized suites and samplers");
  app.add_option("--tolerance", opt.tolerance, "numeric-layer tolerance for reports");
  app.add_option("--max-ground-size", opt.max_ground_size,
                 "cap on ground-set sizes for enumeration commands");
  app.add_option("--report", opt.report_path, "write a machine-readable JSON report here");

  std::string ws_path, name_a, name_b, name_c, expr, suite;
  std::vector<std::string> set_names;
  std::size_t length = 8, count = 10, cases = 0;

  auto* gen = app.add_subcommand("gen-sigma", "generate a sigma-field from a named family");
  gen->add_option("workspace", ws_path)->required();
  gen->add_option("family", name_a)->required();

  auto* ev = app.add_subcommand("eval", "evaluate an expression, e.g. integrate(f, mu)");
  ev->add_option("workspace", ws_path)->required();
  ev->add_option("expression", expr)->required();

  auto* ce = app.add_subcommand("condexp", "conditional expectation table");
  ce->add_option("workspace", ws_path)->required();
  ce->add_option("function", name_a)->required();
  ce->add_option("measure", name_b)->required();
  ce->add_option("sigma_field", name_c)->required();

  auto* rn = app.add_subcommand("rn", "Radon-Nikodym derivative table");
  rn->add_option("workspace", ws_path)->required();
  rn->add_option("mu", name_a)->required();
  rn->add_option("nu", name_b)->required();

  auto* pr = app.add_subcommand("product", "product measure of two named measures");
  pr->add_option("workspace", ws_path)->required();
  pr->add_option("mu", name_a)->required();
  pr->add_option("nu", name_b)->required();

  auto* st = app.add_subcommand("stieltjes", "real-line layer commands");
  st->require_subcommand(1);
  auto* st_m = st->add_subcommand("measure", "dF-measure of an interval set");
  st_m->add_option("workspace", ws_path)->required();
  st_m->add_option("cdf", name_a)->required();
  st_m->add_option("set", name_b)->required();
  auto* st_q = st->add_subcommand("quantile", "quantile of a distribution function");
  st_q->add_option("workspace", ws_path)->required();
  st_q->add_option("cdf", name_a)->required();
  st_q->add_option("u", name_b)->required();
  auto* st_e = st->add_subcommand("extend", "outer-measure extension consistency report");
  st_e->add_option("workspace", ws_path)->required();
  st_e->add_option("cdf", name_a)->required();
  st_e->add_option("--sets", set_names, "interval sets to test (default: all in the workspace)");

  auto* sa = app.add_subcommand("sample", "draw coordinate tuples from a named sampler");
  sa->add_option("workspace", ws_path)->required();
  sa->add_option("sampler", name_a)->required();
  sa->add_option("--length", length, "coordinates per tuple");
  sa->add_option("--count", count, "number of tuples");

  auto* ch = app.add_subcommand("check", "run a named check suite");
  ch->add_option("suite", suite)->required();
  ch->add_option("--cases", cases, "override the case count of randomized batteries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen_sigma(opt, ws_path, name_a);
    if (ev->parsed()) return cmd_eval(opt, ws_path, expr);
    if (ce->parsed()) return cmd_condexp(opt, ws_path, name_a, name_b, name_c);
    if (rn->parsed()) return cmd_rn(opt, ws_path, name_a, name_b);
    if (pr->parsed()) return cmd_product(opt, ws_path, name_a, name_b);
    if (st_m->parsed()) return cmd_stieltjes_measure(opt, ws_path, name_a, name_b);
    if (st_q->parsed()) return cmd_stieltjes_quantile(opt, ws_path, name_a, name_b);
    if (st_e->parsed()) return cmd_stieltjes_extend(opt, ws_path, name_a, set_names);
    if (sa->parsed()) return cmd_sample(opt, ws_path, name_a, length, count);
    if (ch->parsed()) return cmd_check(opt, suite, cases);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const invalid_argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
