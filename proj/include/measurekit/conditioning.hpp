// Conditional expectation on finite probability spaces: the defining
// property as an executable check, the standard property suite, the direct
// computation methods, Doob-Dynkin factorization, and regular conditional
// probability kernels.
//
// Zero-mass sub-atoms take the canonical value 0 (a kernel row takes a
// declared default point mass); comparisons quantify over positive-mass
// atoms only, matching a.s. uniqueness.

#pragma once

#include "measurekit/integrate.hpp"
#include "measurekit/product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace measurekit {

// A conditional expectation: constant on the atoms of the sub-field.
struct CondExpTable {
  SigmaField sub_field;
  std::vector<XReal> values;  // one per sub-field atom

  NumFn as_fn() const { return NumFn(sub_field, values); }
  NumFn on(const SigmaField& finer) const { return as_fn().on(finer); }
};

inline void require_sub_field(const SigmaField& sub, const SigmaField& fine,
                              const std::string& who) {
  if (!sub.is_sub_field_of(fine))
    throw precondition_error(who + ": conditioning field must be a sub-sigma-field");
}

// P[f | B]: on each positive-mass atom I of B the value P[f; I] / P(I);
// zero-mass atoms take 0.
inline CondExpTable cond_exp(const NumFn& f, const MeasureTable& p, const SigmaField& b) {
  if (!classify(p).probability) throw precondition_error("cond_exp: P must be a probability");
  require_sub_field(b, p.space(), "cond_exp");
  IntegralResult whole = integrate(f, p);
  if (!whole.well_defined)
    throw integral_error("cond_exp: P[f+] and P[f-] are both infinite");
  CondExpTable out;
  out.sub_field = b;
  out.values.resize(b.atom_count());
  for (std::size_t j = 0; j < b.atom_count(); ++j) {
    const Subset& block = b.atoms()[j];
    XReal mass = evaluate(p, block);
    out.values[j] = mass == XReal(0) ? XReal(0)
                                     : integrate_over(f, p, block).value / mass;
  }
  return out;
}

struct DefiningReport {
  bool holds = true;
  std::optional<Subset> witness;  // member of B where the integrals differ
  std::size_t sets_checked = 0;
};

// Exhaustive check of P[f; B] = P[g; B] over all members of the sub-field,
// or over a supplied pi-system plus the whole space (the sufficiency
// refinement for integrable f).
inline DefiningReport verify_defining(const CondExpTable& g, const NumFn& f,
                                      const MeasureTable& p,
                                      const std::optional<SetFamily>& pi_only = std::nullopt) {
  DefiningReport rep;
  NumFn gf = g.on(p.space());
  std::vector<Subset> tests;
  if (pi_only) {
    tests = pi_only->members;
    tests.push_back(p.space().ground().full_set());
  } else {
    tests = g.sub_field.members();
  }
  for (const auto& bset : tests) {
    ++rep.sets_checked;
    if (integrate_over(f, p, bset).value != integrate_over(gf, p, bset).value) {
      rep.holds = false;
      rep.witness = bset;
      break;
    }
  }
  return rep;
}

// --- property suite ----------------------------------------------------------

struct PropertyCase {
  std::string name;
  bool applicable = false;
  std::string premise_note;
  bool passed = false;
  std::optional<Subset> witness_atom;
};

struct PropertyReport {
  std::vector<PropertyCase> cases;
  bool all_passed() const {
    for (const auto& c : cases)
      if (c.applicable && !c.passed) return false;
    return true;
  }
  const PropertyCase& find(const std::string& name) const {
    for (const auto& c : cases)
      if (c.name == name) return c;
    throw invalid_argument_error("PropertyReport: no case named " + name);
  }
};

namespace detail {

// Equality on positive-mass atoms of the common refinement.
inline bool ae_equal_fn(const NumFn& a, const NumFn& b, const MeasureTable& p) {
  NumFn fa = a.on(p.space()), fb = b.on(p.space());
  std::vector<bool> eq(fa.size());
  for (std::size_t j = 0; j < fa.size(); ++j) eq[j] = fa.at_atom(j) == fb.at_atom(j);
  return almost_everywhere(eq, p);
}

inline std::optional<Subset> ae_witness(const NumFn& a, const NumFn& b, const MeasureTable& p) {
  NumFn fa = a.on(p.space()), fb = b.on(p.space());
  for (std::size_t j = 0; j < fa.size(); ++j)
    if (fa.at_atom(j) != fb.at_atom(j) && p.weight(j) != XReal(0))
      return p.space().atoms()[j];
  return std::nullopt;
}

}  // namespace detail

// Tower: P[ P[f|B] ] = P[f].
inline PropertyCase tower_property(const NumFn& f, const MeasureTable& p, const SigmaField& b) {
  PropertyCase c;
  c.name = "tower";
  c.applicable = true;
  CondExpTable ce = cond_exp(f, p, b);
  c.passed = integrate(ce.on(p.space()), p).value == integrate(f, p).value;
  return c;
}

// Repeated conditioning for comparable fields: P_B P_C f = P_{B meet C} f.
inline PropertyCase repeated_conditioning_property(const NumFn& f, const MeasureTable& p,
                                                   const SigmaField& b, const SigmaField& c) {
  PropertyCase pc;
  pc.name = "repeated-conditioning";
  bool b_in_c = b.is_sub_field_of(c), c_in_b = c.is_sub_field_of(b);
  if (!b_in_c && !c_in_b) {
    pc.premise_note = "fields are not comparable";
    return pc;
  }
  pc.applicable = true;
  const SigmaField& coarser = b_in_c ? b : c;
  CondExpTable inner = cond_exp(f, p, c);
  CondExpTable outer = cond_exp(inner.on(p.space()), p, b);
  CondExpTable direct = cond_exp(f, p, coarser);
  pc.passed = detail::ae_equal_fn(outer.as_fn(), direct.as_fn(), p);
  if (!pc.passed) pc.witness_atom = detail::ae_witness(outer.as_fn(), direct.as_fn(), p);
  return pc;
}

// Taking out what is known: P_B(g f) = g P_B f for B-measurable g.
inline PropertyCase taking_out_property(const NumFn& f, const NumFn& g, const MeasureTable& p,
                                        const SigmaField& b) {
  PropertyCase c;
  c.name = "taking-out";
  bool g_measurable = true;
  for (const auto& atom : b.atoms()) {
    std::size_t first = atom.find_first();
    for (std::size_t i = first; i != Subset::npos; i = atom.find_next(i))
      if (g.at_element(i) != g.at_element(first)) g_measurable = false;
  }
  if (!g_measurable) {
    c.premise_note = "g is not measurable w.r.t. the conditioning field";
    return c;
  }
  NumFn gf = g * f;
  IntegralResult r = integrate(gf, p);
  if (!r.well_defined) {
    c.premise_note = "P[(gf)+] and P[(gf)-] both infinite";
    return c;
  }
  c.applicable = true;
  CondExpTable lhs = cond_exp(gf, p, b);
  NumFn rhs = g * cond_exp(f, p, b).on(p.space());
  c.passed = detail::ae_equal_fn(lhs.on(p.space()), rhs, p);
  if (!c.passed) c.witness_atom = detail::ae_witness(lhs.on(p.space()), rhs, p);
  return c;
}

// Conditional Jensen: P[phi(f) | B] >= phi(P[f | B]) atomwise a.s.
inline PropertyCase conditional_jensen_property(const NumFn& f, const MeasureTable& p,
                                                const SigmaField& b, const ConvexSpec& phi) {
  PropertyCase c;
  c.name = "conditional-jensen";
  if (!integrable(f, p)) {
    c.premise_note = "f must be integrable";
    return c;
  }
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f.at_atom(j).is_infinite() && p.weight(j) != XReal(0)) {
      c.premise_note = "f must be real-valued a.s.";
      return c;
    }
  c.applicable = true;
  NumFn phif = f.map([&](const XReal& x) {
    return x.is_finite() ? XReal(phi(x.value())) : XReal(0);  // null atoms only
  });
  NumFn lhs = cond_exp(phif, p, b).on(p.space());
  NumFn ce = cond_exp(f, p, b).on(p.space());
  NumFn rhs = ce.map([&](const XReal& x) { return XReal(phi(x.value())); });
  c.passed = true;
  for (std::size_t j = 0; j < lhs.size(); ++j)
    if (p.weight(j) != XReal(0) && !(lhs.at_atom(j) >= rhs.at_atom(j))) {
      c.passed = false;
      c.witness_atom = p.space().atoms()[j];
      break;
    }
  return c;
}

// Independent conditioning: P[f | B] = P[f] when B is independent of sigma(f).
inline PropertyCase independent_conditioning_property(const NumFn& f, const MeasureTable& p,
                                                      const SigmaField& b) {
  PropertyCase c;
  c.name = "independent-conditioning";
  // sigma(f): the field generated by f's level sets.
  std::map<std::string, Subset> levels;
  for (std::size_t j = 0; j < f.size(); ++j) {
    auto [it, fresh] = levels.emplace(f.at_atom(j).str(), Subset(p.space().ground().size()));
    (void)fresh;
    it->second |= f.space().atoms()[j];
  }
  std::vector<Subset> level_sets;
  for (auto& [k, s] : levels) level_sets.push_back(s);
  SigmaField sf = generate_sigma_field(p.space().ground(), level_sets);
  if (!is_independency(p, {sf.member_family(), b.member_family()}).independent) {
    c.premise_note = "sigma(f) and B are not independent";
    return c;
  }
  c.applicable = true;
  NumFn lhs = cond_exp(f, p, b).on(p.space());
  NumFn rhs = NumFn::constant(p.space(), integrate(f, p).value);
  c.passed = detail::ae_equal_fn(lhs, rhs, p);
  if (!c.passed) c.witness_atom = detail::ae_witness(lhs, rhs, p);
  return c;
}

inline PropertyReport property_suite(const NumFn& f, const NumFn& g, const MeasureTable& p,
                                     const SigmaField& b, const SigmaField& c,
                                     const ConvexSpec& phi) {
  PropertyReport rep;
  rep.cases.push_back(tower_property(f, p, b));
  rep.cases.push_back(repeated_conditioning_property(f, p, b, c));
  rep.cases.push_back(taking_out_property(f, g, p, b));
  rep.cases.push_back(conditional_jensen_property(f, p, b, phi));
  rep.cases.push_back(independent_conditioning_property(f, p, b));
  return rep;
}

// --- Doob-Dynkin factorization ------------------------------------------------

struct DoobDynkinError : std::runtime_error {
  std::size_t fiber_of;      // codomain element index whose fiber separates Y
  std::pair<XReal, XReal> values;
  DoobDynkinError(const std::string& m, std::size_t e, XReal a, XReal b)
      : std::runtime_error(m), fiber_of(e), values(std::move(a), std::move(b)) {}
};

// Y = h(X) with h on the codomain of X; exists iff Y is constant on X's
// fibers.  Off the range of X, h is 0.
inline NumFn doob_dynkin_factor(const NumFn& y, const MeasurableMap& x) {
  if (y.space().ground() != x.domain)
    throw invalid_argument_error("doob_dynkin_factor: Y must live on X's domain");
  std::vector<XReal> h(x.codomain.size(), XReal(0));
  std::vector<bool> seen(x.codomain.size(), false);
  for (std::size_t i = 0; i < x.domain.size(); ++i) {
    XReal v = y.at_element(i);
    std::size_t e = x(i);
    if (!seen[e]) {
      h[e] = v;
      seen[e] = true;
    } else if (h[e] != v) {
      throw DoobDynkinError("doob_dynkin_factor: Y separates points of the fiber over '" +
                                x.codomain.label(e) + "'",
                            e, h[e], v);
    }
  }
  return NumFn(SigmaField::discrete(x.codomain), std::move(h));
}

// --- direct computation methods ------------------------------------------------

// Grid function h(x, y) on two finite label sets.
struct GridFn {
  GroundSet xs, ys;
  std::vector<XReal> values;  // row-major: x index * |ys| + y index

  const XReal& at(std::size_t xi, std::size_t yi) const { return values.at(xi * ys.size() + yi); }
};

// c(y) = sum_x h(x,y) f12(x,y)/f2(y) ff(x) on {f2 > 0}, 0 elsewhere.
// ff, ee are the reference weights; consistency f2(y) = sum_x f12(x,y) ff(x)
// is checked first.
inline std::vector<XReal> density_conditioning(const GridFn& h, const GridFn& f12,
                                               const std::vector<XReal>& f2,
                                               const std::vector<XReal>& ff,
                                               const std::vector<XReal>& ee) {
  const std::size_t nx = h.xs.size(), ny = h.ys.size();
  if (f12.xs.size() != nx || f12.ys.size() != ny || f2.size() != ny || ff.size() != nx ||
      ee.size() != ny)
    throw invalid_argument_error("density_conditioning: grid shapes do not match");
  for (const auto& w : ff)
    if (!(w > XReal(0))) throw precondition_error("density_conditioning: ff must be positive");
  for (const auto& w : ee)
    if (!(w > XReal(0))) throw precondition_error("density_conditioning: ee must be positive");
  for (std::size_t yi = 0; yi < ny; ++yi) {
    XReal marginal(0);
    for (std::size_t xi = 0; xi < nx; ++xi) marginal += f12.at(xi, yi) * ff[xi];
    if (marginal != f2[yi])
      throw precondition_error("density_conditioning: f2 is not the ff-marginal of f12 at y = " +
                               h.ys.label(yi));
  }
  std::vector<XReal> c(ny, XReal(0));
  for (std::size_t yi = 0; yi < ny; ++yi) {
    if (f2[yi] == XReal(0)) continue;
    XReal acc(0);
    for (std::size_t xi = 0; xi < nx; ++xi)
      acc += h.at(xi, yi) * (f12.at(xi, yi) / f2[yi]) * ff[xi];
    c[yi] = acc;
  }
  return c;
}

struct IndependentConditioningResult {
  std::vector<XReal> d;   // d(y) = P[h(X, y)], indexed by Y's codomain
  CondExpTable ce;        // P[h(X,Y) | G]
  bool matches = false;   // d(Y) equals the conditional expectation a.s.
};

// Method for independent maps: d(y) = P[h(X,y)]; then P[h(X,Y)|G] = d(Y).
inline IndependentConditioningResult independent_conditioning(const GridFn& h,
                                                              const MeasurableMap& x,
                                                              const MeasurableMap& y,
                                                              const SigmaField& g,
                                                              const MeasureTable& p) {
  if (x.codomain != h.xs || y.codomain != h.ys)
    throw invalid_argument_error("independent_conditioning: grid does not match the codomains");
  if (!is_measurable(y, g, SigmaField::discrete(y.codomain)))
    throw precondition_error("independent_conditioning: Y must be G-measurable");
  SigmaField sx = sigma_of(x);
  if (!is_independency(p, {sx.member_family(), g.member_family()}).independent)
    throw precondition_error("independent_conditioning: X must be independent of G");

  MeasureTable law_x = pushforward_measure(x, p, SigmaField::discrete(x.codomain));
  IndependentConditioningResult out;
  out.d.assign(y.codomain.size(), XReal(0));
  for (std::size_t yi = 0; yi < y.codomain.size(); ++yi) {
    XReal acc(0);
    for (std::size_t xi = 0; xi < x.codomain.size(); ++xi)
      acc += h.at(xi, yi) * law_x.weight(law_x.space().atom_of(xi));
    out.d[yi] = acc;
  }
  // h(X, Y) as a function on P's space.
  std::vector<XReal> hv(p.space().atom_count());
  for (std::size_t j = 0; j < p.space().atom_count(); ++j) {
    std::size_t first = p.space().atoms()[j].find_first();
    hv[j] = h.at(x(first), y(first));
  }
  out.ce = cond_exp(NumFn(p.space(), hv), p, g);
  // d(Y) on the space.
  std::vector<XReal> dy(p.space().atom_count());
  for (std::size_t j = 0; j < p.space().atom_count(); ++j)
    dy[j] = out.d[y(p.space().atoms()[j].find_first())];
  out.matches = detail::ae_equal_fn(out.ce.on(p.space()), NumFn(p.space(), dy), p);
  return out;
}

// --- regular conditional probability -------------------------------------------

// Kernel rows over the codomain of Z; each row a probability on the
// codomain of X.  Rows at zero-mass values of Z are the declared default
// point mass.
struct Kernel {
  GroundSet source;      // codomain of Z
  GroundSet target;      // codomain of X
  std::vector<std::vector<XReal>> rows;
  std::size_t default_state = 0;

  const XReal& at(std::size_t e, std::size_t xi) const { return rows.at(e).at(xi); }
};

inline Kernel regular_cond_prob(const MeasurableMap& x, const MeasurableMap& z,
                                const MeasureTable& p, std::size_t default_state = 0) {
  if (x.domain != p.space().ground() || z.domain != p.space().ground())
    throw invalid_argument_error("regular_cond_prob: maps must live on P's ground set");
  if (!classify(p).probability)
    throw precondition_error("regular_cond_prob: P must be a probability");
  Kernel k;
  k.source = z.codomain;
  k.target = x.codomain;
  k.default_state = default_state;
  k.rows.assign(z.codomain.size(), std::vector<XReal>(x.codomain.size(), XReal(0)));
  for (std::size_t e = 0; e < z.codomain.size(); ++e) {
    Subset fiber(p.space().ground().size());
    for (std::size_t i = 0; i < z.domain.size(); ++i)
      if (z(i) == e) fiber.set(i);
    if (!p.space().is_measurable(fiber))
      throw measurability_error("regular_cond_prob: Z is not measurable");
    XReal mass = evaluate(p, fiber);
    if (mass == XReal(0)) {
      k.rows[e][default_state] = XReal(1);
      continue;
    }
    for (std::size_t xi = 0; xi < x.codomain.size(); ++xi) {
      Subset joint = fiber;
      Subset xfiber(p.space().ground().size());
      for (std::size_t i = 0; i < x.domain.size(); ++i)
        if (x(i) == xi) xfiber.set(i);
      joint &= xfiber;
      k.rows[e][xi] = evaluate(p, joint) / mass;
    }
  }
  return k;
}

// Reconstruction identity P[f(X,Z) | Z] = sum_x f(x, Z) k(Z, x), checked
// against cond_exp for the given grid function.
inline bool kernel_reconstructs(const Kernel& k, const GridFn& f, const MeasurableMap& x,
                                const MeasurableMap& z, const MeasureTable& p) {
  if (f.xs != x.codomain || f.ys != z.codomain)
    throw invalid_argument_error("kernel_reconstructs: grid does not match the codomains");
  std::vector<XReal> fv(p.space().atom_count());
  for (std::size_t j = 0; j < p.space().atom_count(); ++j) {
    std::size_t first = p.space().atoms()[j].find_first();
    fv[j] = f.at(x(first), z(first));
  }
  CondExpTable ce = cond_exp(NumFn(p.space(), fv), p, pullback_sigma(z, SigmaField::discrete(z.codomain)));
  std::vector<XReal> rhs(p.space().atom_count());
  for (std::size_t j = 0; j < p.space().atom_count(); ++j) {
    std::size_t e = z(p.space().atoms()[j].find_first());
    XReal acc(0);
    for (std::size_t xi = 0; xi < x.codomain.size(); ++xi)
      acc += f.at(xi, e) * k.at(e, xi);
    rhs[j] = acc;
  }
  return detail::ae_equal_fn(ce.on(p.space()), NumFn(p.space(), rhs), p);
}

// --- conditional image-measure check --------------------------------------------

struct ConditionalImageReport {
  bool premises_hold = false;
  std::string premise_note;
  bool equal = false;
  std::optional<Subset> witness_atom;
};

// P[f(X) | X^{-1}(A)] = ((X_* P)[f | A])(X), both sides computed exactly.
inline ConditionalImageReport conditional_image_measure_check(const MeasurableMap& x,
                                                              const NumFn& f,
                                                              const SigmaField& a,
                                                              const MeasureTable& p) {
  ConditionalImageReport rep;
  if (f.space().ground() != x.codomain) {
    rep.premise_note = "f must live on the codomain of X";
    return rep;
  }
  NumFn fx = NumFn::compose(f.on(SigmaField::discrete(x.codomain)), x, p.space());
  IntegralResult r = integrate(fx, p);
  if (!r.well_defined) {
    rep.premise_note = "P[f(X)+] and P[f(X)-] both infinite";
    return rep;
  }
  rep.premises_hold = true;

  SigmaField pulled = pullback_sigma(x, a);
  CondExpTable lhs = cond_exp(fx, p, pulled);

  MeasureTable law = pushforward_measure(x, p, SigmaField::discrete(x.codomain));
  CondExpTable inner = cond_exp(f.on(SigmaField::discrete(x.codomain)), law, a);
  NumFn composed = NumFn::compose(inner.on(SigmaField::discrete(x.codomain)), x, p.space());

  rep.equal = detail::ae_equal_fn(lhs.on(p.space()), composed, p);
  if (!rep.equal) rep.witness_atom = detail::ae_witness(lhs.on(p.space()), composed, p);
  return rep;
}

}  // namespace measurekit
