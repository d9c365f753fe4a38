// JSON serialization for every definition type.  Scalars travel as "p/q",
// "inf", "-inf" strings; sets as label arrays; density pieces carry kind
// tags.  Parsing errors name the offending location.

#pragma once

#include "measurekit/checks.hpp"
#include "measurekit/conditioning.hpp"
#include "measurekit/product.hpp"
#include "measurekit/stieltjes.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace measurekit::io {

using nlohmann::json;

struct schema_error : parse_error {
  using parse_error::parse_error;
};

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw schema_error(where + ": " + what);
}

inline std::string label_of(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(where, "expected a label (string or integer)");
}

inline XReal scalar_from(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return XReal::parse(j.get<std::string>());
    if (j.is_number_integer()) return XReal(static_cast<long long>(j.get<long long>()));
  } catch (const parse_error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a scalar string like \"3/4\", \"inf\", \"-inf\"");
}

inline Rat rat_from(const json& j, const std::string& where) {
  XReal x = scalar_from(j, where);
  if (!x.is_finite()) fail(where, "expected a finite rational");
  return x.value();
}

// --- ground sets, families, fields, maps -----------------------------------

inline json to_json(const GroundSet& g) {
  json out = json::array();
  for (const auto& l : g.labels()) out.push_back(l);
  return out;
}

inline GroundSet ground_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  std::vector<std::string> labels;
  for (const auto& e : j) labels.push_back(label_of(e, where));
  try {
    return GroundSet(std::move(labels));
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
}

inline json subset_to_json(const GroundSet& g, const Subset& s) {
  json out = json::array();
  for (const auto& l : g.labels_of(s)) out.push_back(l);
  return out;
}

inline Subset subset_from(const GroundSet& g, const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  Subset s(g.size());
  for (const auto& e : j) {
    std::string l = label_of(e, where);
    if (!g.contains(l)) fail(where, "label '" + l + "' is not in the ground set");
    s.set(g.index_of(l));
  }
  return s;
}

inline json to_json(const SetFamily& f) {
  json sets = json::array();
  for (const auto& m : f.members) sets.push_back(subset_to_json(f.ground, m));
  return json{{"ground", to_json(f.ground)}, {"sets", sets}};
}

inline SetFamily family_from(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("ground") || !j.contains("sets"))
    fail(where, "expected {ground, sets}");
  GroundSet g = ground_from(j["ground"], where + ".ground");
  std::vector<Subset> members;
  for (const auto& s : j["sets"]) members.push_back(subset_from(g, s, where + ".sets"));
  return SetFamily(g, members);
}

inline json to_json(const SigmaField& f) {
  json atoms = json::array();
  for (const auto& a : f.atoms()) atoms.push_back(subset_to_json(f.ground(), a));
  return json{{"ground", to_json(f.ground())}, {"atoms", atoms}};
}

inline SigmaField sigma_field_from(const json& j, const GroundSet& g, const std::string& where) {
  try {
    if (j.contains("atoms")) {
      std::vector<Subset> atoms;
      for (const auto& a : j["atoms"]) atoms.push_back(subset_from(g, a, where + ".atoms"));
      return SigmaField(g, std::move(atoms));
    }
    if (j.contains("generators")) {
      std::vector<Subset> gens;
      for (const auto& a : j["generators"])
        gens.push_back(subset_from(g, a, where + ".generators"));
      return generate_sigma_field(g, gens);
    }
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
  fail(where, "expected atoms or generators");
}

inline json to_json(const MeasurableMap& m) {
  json graph = json::object();
  for (std::size_t i = 0; i < m.domain.size(); ++i)
    graph[m.domain.label(i)] = m.codomain.label(m(i));
  return json{{"domain", to_json(m.domain)}, {"codomain", to_json(m.codomain)}, {"graph", graph}};
}

inline MeasurableMap map_from(const json& j, const GroundSet& dom, const GroundSet& cod,
                              const std::string& where) {
  if (!j.contains("graph")) fail(where, "expected a graph object");
  std::map<std::string, std::string> pairs;
  for (const auto& [k, v] : j["graph"].items()) pairs[k] = label_of(v, where + ".graph");
  try {
    return MeasurableMap::from_labels(dom, cod, pairs);
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
}

// --- measures and functions: atom tables alongside the space ---------------

inline json to_json(const MeasureTable& m) {
  json weights = json::array();
  for (const auto& w : m.weights()) weights.push_back(w.str());
  return json{{"space", to_json(m.space())}, {"weights", weights}};
}

inline MeasureTable measure_from(const json& j, const GroundSet& g, const std::string& where) {
  try {
    if (j.contains("weights")) {
      SigmaField space = sigma_field_from(j.contains("space") ? j["space"] : j, g, where);
      std::vector<XReal> w;
      for (const auto& e : j["weights"]) w.push_back(scalar_from(e, where + ".weights"));
      return MeasureTable(space, std::move(w));
    }
    if (j.contains("point_weights")) {
      SigmaField space = j.contains("sigma_field")
                             ? sigma_field_from(j["sigma_field"], g, where + ".sigma_field")
                             : SigmaField::discrete(g);
      std::vector<XReal> w(space.atom_count(), XReal(0));
      for (const auto& [k, v] : j["point_weights"].items()) {
        if (!g.contains(k)) fail(where + ".point_weights", "unknown label '" + k + "'");
        w[space.atom_of(g.index_of(k))] += scalar_from(v, where + ".point_weights");
      }
      return MeasureTable(space, std::move(w));
    }
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
  fail(where, "expected weights (atom table) or point_weights");
}

inline json to_json(const NumFn& f) {
  json values = json::array();
  for (const auto& v : f.atom_values()) values.push_back(v.str());
  return json{{"space", to_json(f.space())}, {"values", values}};
}

inline NumFn fn_from(const json& j, const GroundSet& g, const std::string& where) {
  try {
    if (j.contains("space") && j.contains("values") && j["values"].is_array()) {
      SigmaField space = sigma_field_from(j["space"], g, where + ".space");
      std::vector<XReal> v;
      for (const auto& e : j["values"]) v.push_back(scalar_from(e, where + ".values"));
      return NumFn(space, std::move(v));
    }
    if (j.contains("values") && j["values"].is_object()) {
      SigmaField space = j.contains("sigma_field")
                             ? sigma_field_from(j["sigma_field"], g, where + ".sigma_field")
                             : SigmaField::discrete(g);
      std::vector<XReal> pts(g.size(), XReal(0));
      for (const auto& [k, v] : j["values"].items()) {
        if (!g.contains(k)) fail(where + ".values", "unknown label '" + k + "'");
        pts[g.index_of(k)] = scalar_from(v, where + ".values");
      }
      return NumFn::from_points(space, pts);
    }
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
  fail(where, "expected values (atom array with space, or label map)");
}

// --- intervals and the real-line layer --------------------------------------

inline json to_json(const Interval& iv) {
  return json{{"lo", iv.lo.str()},
              {"hi", iv.hi.str()},
              {"lo_closed", iv.lo_closed},
              {"hi_closed", iv.hi_closed}};
}

inline Interval interval_from(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
    fail(where, "expected {lo, hi, lo_closed, hi_closed}");
  return Interval(scalar_from(j["lo"], where + ".lo"), scalar_from(j["hi"], where + ".hi"),
                  j.value("lo_closed", false), j.value("hi_closed", false));
}

inline json to_json(const IntervalSet& s) {
  json out = json::array();
  for (const auto& c : s.components()) out.push_back(to_json(c));
  return out;
}

inline IntervalSet interval_set_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of intervals");
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < j.size(); ++i)
    parts.push_back(interval_from(j[i], where + "[" + std::to_string(i) + "]"));
  return IntervalSet::of(parts);
}

inline json coeffs_to_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(rat_str(c));
  return out;
}

inline Poly poly_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of coefficients");
  std::vector<Rat> c;
  for (const auto& e : j) c.push_back(rat_from(e, where));
  return Poly(std::move(c));
}

inline json to_json(const DensityPiece& p) {
  json out{{"from", p.from.str()}, {"to", p.to.str()}};
  if (p.is_constant()) {
    out["kind"] = "const";
    out["c"] = rat_str(p.density.poly.is_zero() ? Rat(0) : p.density.poly.coeffs()[0]);
  } else if (p.density.is_polynomial()) {
    out["kind"] = "poly";
    out["coeffs"] = coeffs_to_json(p.density.poly);
  } else {
    out["kind"] = "expoly";
    out["coeffs"] = coeffs_to_json(p.density.poly);
    out["rate"] = rat_str(p.density.rate);
  }
  return out;
}

inline DensityPiece piece_from(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) fail(where, "expected a density piece with a kind");
  XReal from = scalar_from(j.value("from", json("-inf")), where + ".from");
  XReal to = scalar_from(j.value("to", json("inf")), where + ".to");
  std::string kind = j["kind"];
  try {
    if (kind == "const")
      return DensityPiece(from, to, Expoly::constant(rat_from(j.at("c"), where + ".c")));
    if (kind == "poly")
      return DensityPiece(from, to, Expoly(poly_from(j.at("coeffs"), where + ".coeffs")));
    if (kind == "expoly")
      return DensityPiece(from, to,
                          Expoly(poly_from(j.at("coeffs"), where + ".coeffs"),
                                 rat_from(j.at("rate"), where + ".rate")));
  } catch (const json::exception& e) {
    fail(where, e.what());
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
  fail(where, "unknown piece kind '" + kind + "' (const, poly, expoly)");
}

inline json to_json(const CdfSpec& f) {
  json jumps = json::array();
  for (std::size_t i = 0; i < f.jump_points().size(); ++i)
    jumps.push_back(json{{"at", rat_str(f.jump_points()[i])},
                         {"size", rat_str(f.jump_sizes()[i])}});
  json pieces = json::array();
  for (const auto& p : f.pieces()) pieces.push_back(to_json(p));
  return json{{"jumps", jumps}, {"pieces", pieces}, {"offset", rat_str(f.offset())}};
}

inline CdfSpec cdf_from(const json& j, const std::string& where) {
  std::vector<Rat> jp, js;
  if (j.contains("jumps"))
    for (const auto& e : j["jumps"]) {
      jp.push_back(rat_from(e.at("at"), where + ".jumps.at"));
      js.push_back(rat_from(e.at("size"), where + ".jumps.size"));
    }
  std::vector<DensityPiece> pieces;
  if (j.contains("pieces"))
    for (std::size_t i = 0; i < j["pieces"].size(); ++i)
      pieces.push_back(piece_from(j["pieces"][i], where + ".pieces[" + std::to_string(i) + "]"));
  Rat offset = j.contains("offset") ? rat_from(j["offset"], where + ".offset") : Rat(0);
  try {
    return CdfSpec(std::move(jp), std::move(js), std::move(pieces), std::move(offset));
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
}

inline json to_json(const PiecewiseExpoly& f) {
  json pieces = json::array();
  for (const auto& [iv, e] : f.pieces) {
    json p{{"on", to_json(iv)}, {"coeffs", coeffs_to_json(e.poly)}};
    if (!e.is_polynomial()) p["rate"] = rat_str(e.rate);
    pieces.push_back(std::move(p));
  }
  return json{{"pieces", pieces}};
}

inline PiecewiseExpoly integrand_from(const json& j, const std::string& where) {
  if (!j.contains("pieces")) fail(where, "expected {pieces}");
  PiecewiseExpoly out;
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    const json& p = j["pieces"][i];
    std::string w = where + ".pieces[" + std::to_string(i) + "]";
    Interval on = interval_from(p.at("on"), w + ".on");
    Rat rate = p.contains("rate") ? rat_from(p["rate"], w + ".rate") : Rat(0);
    out.pieces.emplace_back(on, Expoly(poly_from(p.at("coeffs"), w + ".coeffs"), rate));
  }
  return out;
}

// --- samplers, kernels, marginal families -----------------------------------

inline json to_json(const FactorLaw& f) {
  json labels = json::array(), probs = json::array();
  for (const auto& l : f.labels) labels.push_back(l);
  for (const auto& p : f.probs) probs.push_back(rat_str(p));
  return json{{"labels", labels}, {"probs", probs}};
}

inline FactorLaw factor_law_from(const json& j, const std::string& where) {
  FactorLaw f;
  if (!j.contains("labels") || !j.contains("probs")) fail(where, "expected {labels, probs}");
  for (const auto& l : j["labels"]) f.labels.push_back(label_of(l, where + ".labels"));
  for (const auto& p : j["probs"]) f.probs.push_back(rat_from(p, where + ".probs"));
  try {
    f.validate();
  } catch (const invalid_argument_error& e) {
    fail(where, e.what());
  }
  return f;
}

inline json to_json(const CoordinateSampler& s) {
  json prefix = json::array(), cycle = json::array();
  for (const auto& f : s.prefix) prefix.push_back(to_json(f));
  for (const auto& f : s.cycle) cycle.push_back(to_json(f));
  return json{{"prefix", prefix},
              {"cycle", cycle},
              {"seed", s.seed},
              {"generator", s.generator_id}};
}

inline CoordinateSampler sampler_from(const json& j, const std::string& where) {
  CoordinateSampler s;
  if (j.contains("prefix"))
    for (const auto& f : j["prefix"]) s.prefix.push_back(factor_law_from(f, where + ".prefix"));
  if (!j.contains("cycle") || j["cycle"].empty()) fail(where, "expected a nonempty cycle");
  for (const auto& f : j["cycle"]) s.cycle.push_back(factor_law_from(f, where + ".cycle"));
  s.seed = j.value("seed", std::uint64_t(0));
  s.generator_id = j.value("generator", std::string(kGeneratorId));
  if (s.generator_id != kGeneratorId)
    fail(where + ".generator", "unknown generator id '" + s.generator_id + "'");
  return s;
}

inline json to_json(const Kernel& k) {
  json rows = json::array();
  for (const auto& row : k.rows) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.str());
    rows.push_back(std::move(r));
  }
  return json{{"source", to_json(k.source)},
              {"target", to_json(k.target)},
              {"rows", rows},
              {"default_state", k.target.label(k.default_state)}};
}

// --- reports ------------------------------------------------------------------

inline json to_json(const CheckCase& c) {
  return json{{"id", c.id},
              {"description", c.description},
              {"passed", c.passed},
              {"provenance", c.exact ? "exact" : "tolerance"},
              {"detail", c.detail}};
}

inline json to_json(const SuiteReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  return json{{"suite", r.suite}, {"all_passed", r.all_passed()}, {"cases", cases}};
}

inline json to_json(const IntegralResult& r) {
  return json{{"value", r.value.str()},
              {"well_defined", r.well_defined},
              {"pos_part", r.pos_part_integral.str()},
              {"neg_part", r.neg_part_integral.str()}};
}

inline json to_json(const RealValue& v, double tolerance) {
  if (v.exact) return json{{"value", v.xval.str()}, {"provenance", "exact"}};
  return json{{"value", v.approx}, {"provenance", "numeric"}, {"tolerance", tolerance}};
}

}  // namespace measurekit::io
