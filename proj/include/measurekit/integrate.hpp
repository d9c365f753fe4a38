// The Lebesgue integral on finite measure spaces: positive/negative part
// bookkeeping with the extended-real conventions, indefinite integrals,
// Radon-Nikodym derivatives, L^p seminorms, the classical inequalities and
// convergence theorems as executable checks.

#pragma once

#include "measurekit/fn.hpp"
#include "measurekit/measure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace measurekit {

struct integral_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct absolute_continuity_error : std::runtime_error {
  Subset witness_atom;
  absolute_continuity_error(const std::string& msg, Subset atom)
      : std::runtime_error(msg), witness_atom(std::move(atom)) {}
};

// An integral is well-defined when at most one of the two part-integrals is
// infinite; when both are infinite the value is 0 by convention and
// well_defined is false.  Theorem-checkers treat that as a failed premise.
struct IntegralResult {
  XReal value;
  bool well_defined = true;
  XReal pos_part_integral;
  XReal neg_part_integral;
};

inline IntegralResult integrate(const NumFn& f, const MeasureTable& mu) {
  if (f.space() != mu.space())
    throw invalid_argument_error("integrate: function and measure on different spaces");
  IntegralResult r;
  r.pos_part_integral = XReal(0);
  r.neg_part_integral = XReal(0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    r.pos_part_integral += f.at_atom(j).pos_part() * mu.weight(j);
    r.neg_part_integral += f.at_atom(j).neg_part() * mu.weight(j);
  }
  r.well_defined = min(r.pos_part_integral, r.neg_part_integral).is_finite();
  r.value = r.pos_part_integral - r.neg_part_integral;
  return r;
}

inline IntegralResult integrate_over(const NumFn& f, const MeasureTable& mu, const Subset& a) {
  if (!mu.space().is_measurable(a))
    throw measurability_error("integrate_over: set is not measurable");
  return integrate(f * NumFn::indicator(f.space(), a), mu);
}

inline bool integrable(const NumFn& f, const MeasureTable& mu) {
  IntegralResult r = integrate(f, mu);
  return max(r.pos_part_integral, r.neg_part_integral).is_finite();
}

// n-th stage of the canonical nondecreasing simple approximation
// (2^-n floor(2^n f)) ^ n of a nonnegative f, with floor(inf) = inf.
inline NumFn simple_approx(const NumFn& f, unsigned n) {
  if (!f.nonnegative())
    throw precondition_error("simple_approx: function must be nonnegative");
  if (n == 0) throw precondition_error("simple_approx: stage must be >= 1");
  XReal scale(Rat(BigInt(1) << n));
  XReal inv_scale(Rat(1, BigInt(1) << n));
  XReal cap(static_cast<long long>(n));
  return f.map([&](const XReal& x) { return min(inv_scale * (scale * x).floor(), cap); });
}

// Indefinite integral (f * mu)(A) = integral of f over A, as a measure.
inline MeasureTable indefinite(const NumFn& f, const MeasureTable& mu) {
  if (!f.nonnegative())
    throw precondition_error("indefinite: density must be nonnegative");
  if (f.space() != mu.space())
    throw invalid_argument_error("indefinite: mismatched spaces");
  std::vector<XReal> w(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) w[j] = f.at_atom(j) * mu.weight(j);
  return MeasureTable(f.space(), std::move(w));
}

inline bool absolutely_continuous(const MeasureTable& mu, const MeasureTable& nu) {
  if (mu.space() != nu.space())
    throw invalid_argument_error("absolutely_continuous: mismatched spaces");
  for (std::size_t j = 0; j < mu.space().atom_count(); ++j)
    if (nu.weight(j) == XReal(0) && mu.weight(j) != XReal(0)) return false;
  return true;
}

// d(mu)/d(nu) as the per-atom weight ratio, with 0/0 -> 0.  Requires
// mu << nu and both sigma-finite.
inline NumFn radon_nikodym(const MeasureTable& mu, const MeasureTable& nu) {
  if (mu.space() != nu.space())
    throw invalid_argument_error("radon_nikodym: mismatched spaces");
  if (!classify(mu).sigma_finite || !classify(nu).sigma_finite)
    throw precondition_error("radon_nikodym: both measures must be sigma-finite");
  std::vector<XReal> d(mu.space().atom_count());
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (nu.weight(j) == XReal(0)) {
      if (mu.weight(j) != XReal(0))
        throw absolute_continuity_error(
            "radon_nikodym: mu charges the nu-null atom " +
                mu.space().ground().subset_str(mu.space().atoms()[j]),
            mu.space().atoms()[j]);
      d[j] = XReal(0);
    } else {
      d[j] = mu.weight(j) / nu.weight(j);
    }
  }
  return NumFn(mu.space(), std::move(d));
}

// Smallest-ratio delta certifying the epsilon-delta form of absolute
// continuity: nu(A) <= delta implies mu(A) <= eps for every measurable A.
inline XReal epsilon_delta(const MeasureTable& mu, const MeasureTable& nu, const XReal& eps) {
  if (!(eps > XReal(0))) throw precondition_error("epsilon_delta: eps must be positive");
  if (!classify(mu).finite) throw precondition_error("epsilon_delta: mu must be finite");
  if (!absolutely_continuous(mu, nu))
    throw precondition_error("epsilon_delta: mu is not absolutely continuous w.r.t. nu");
  NumFn density = radon_nikodym(mu, nu);
  XReal max_ratio(0);
  for (std::size_t j = 0; j < density.size(); ++j)
    max_ratio = max(max_ratio, density.at_atom(j));
  return eps / max(max_ratio, XReal(1));
}

// --- L^p seminorms --------------------------------------------------------

// Value of a seminorm: an exact extended rational, or a rational enclosure
// of width <= tol when the p-th root is irrational.
struct SeminormValue {
  bool exact = true;
  XReal value;       // meaningful when exact
  RatBracket bracket;  // meaningful when finite and not exact

  bool is_infinite() const { return exact && value.is_pos_inf(); }
  double to_double() const {
    return exact ? value.to_double() : ((bracket.lo + bracket.hi) / 2).convert_to<double>();
  }
};

inline Rat default_root_tolerance() { return Rat(1, BigInt("1000000000000")); }

// ||f||_p = (integral |f|^p dmu)^(1/p) for rational p >= 1; essential sup
// for p = infinity.  Exact whenever the result is rational; otherwise a
// bracket at the requested tolerance.
inline SeminormValue lp_seminorm(const NumFn& f, const MeasureTable& mu, const XReal& p,
                                 const Rat& tol = default_root_tolerance()) {
  if (!(p >= XReal(1))) throw precondition_error("lp_seminorm: p must be >= 1");
  SeminormValue out;
  if (p.is_pos_inf()) {
    // Essential supremum: max of |f| over atoms of positive measure.
    XReal m(0);
    for (std::size_t j = 0; j < f.size(); ++j)
      if (mu.weight(j) != XReal(0)) m = max(m, f.at_atom(j).abs());
    out.value = m;
    return out;
  }
  const Rat& pr = p.value();
  long long p_num = numerator(pr).convert_to<long long>();
  unsigned p_den = denominator(pr).convert_to<unsigned>();

  // S = integral |f|^p dmu.  For integer p this is exact; for fractional p
  // each term is bracketed and the brackets are summed.
  if (p_den == 1) {
    XReal s(0);
    for (std::size_t j = 0; j < f.size(); ++j) {
      XReal a = f.at_atom(j).abs();
      XReal term = a.is_infinite() ? (mu.weight(j) == XReal(0) ? XReal(0) : XReal::pos_inf())
                                   : XReal(rat_pow_int(a.value(), p_num)) * mu.weight(j);
      s += term;
    }
    if (s.is_pos_inf()) {
      out.value = XReal::pos_inf();
      return out;
    }
    RatBracket root = root_bracket(s.value(), static_cast<unsigned>(p_num), tol);
    if (root.exact()) {
      out.value = XReal(root.lo);
    } else {
      out.exact = false;
      out.bracket = root;
    }
    return out;
  }

  Rat term_tol = tol / Rat(BigInt(f.size() + 1));
  Rat lo(0), hi(0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    XReal a = f.at_atom(j).abs();
    if (mu.weight(j) == XReal(0)) continue;
    if (a.is_infinite() || mu.weight(j).is_pos_inf()) {
      if (a != XReal(0) && !(a.is_infinite() && mu.weight(j) == XReal(0))) {
        out.value = XReal::pos_inf();
        return out;
      }
      continue;
    }
    RatBracket t = pow_bracket(a.value(), pr, term_tol);
    lo += t.lo * mu.weight(j).value();
    hi += t.hi * mu.weight(j).value();
  }
  // S^(1/p) = (S^(p_den))^(1/p_num).
  RatBracket rlo = root_bracket(rat_pow_int(lo, p_den), static_cast<unsigned>(p_num), tol);
  RatBracket rhi = root_bracket(rat_pow_int(hi, p_den), static_cast<unsigned>(p_num), tol);
  if (rlo.exact() && rhi.exact() && rlo.lo == rhi.lo) {
    out.value = XReal(rlo.lo);
  } else {
    out.exact = false;
    out.bracket = {rlo.lo, rhi.hi};
  }
  return out;
}

// --- convex specifications for Jensen-type checks -------------------------

// Rational-valued convex functions: x^2, |x|, or a piecewise-linear spec
// given by slopes over breakpoint cells (slopes must be nondecreasing).
class ConvexSpec {
 public:
  enum class Kind { Square, Abs, PiecewiseLinear };

  static ConvexSpec square() { return ConvexSpec(Kind::Square); }
  static ConvexSpec abs() { return ConvexSpec(Kind::Abs); }
  // breakpoints b_1 < ... < b_k; slopes s_0 <= ... <= s_k over the cells
  // (-inf,b_1], [b_1,b_2], ..., [b_k,inf); value(0 cell anchored at
  // (x0, y0)).
  static ConvexSpec piecewise_linear(std::vector<Rat> breakpoints, std::vector<Rat> slopes,
                                     Rat x0, Rat y0) {
    if (slopes.size() != breakpoints.size() + 1)
      throw invalid_argument_error("ConvexSpec: need one slope per cell");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
      if (!(breakpoints[i] < breakpoints[i + 1]))
        throw invalid_argument_error("ConvexSpec: breakpoints must increase");
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i)
      if (slopes[i] > slopes[i + 1])
        throw invalid_argument_error("ConvexSpec: slopes must be nondecreasing (convexity)");
    ConvexSpec c(Kind::PiecewiseLinear);
    c.breaks_ = std::move(breakpoints);
    c.slopes_ = std::move(slopes);
    c.x0_ = std::move(x0);
    c.y0_ = std::move(y0);
    return c;
  }

  Kind kind() const { return kind_; }
  bool strictly_convex() const { return kind_ == Kind::Square; }

  Rat operator()(const Rat& x) const {
    switch (kind_) {
      case Kind::Square: return x * x;
      case Kind::Abs: return x.sign() < 0 ? Rat(-x) : x;
      default: break;
    }
    // Integrate the slope step-function from the anchor to x.
    Rat lo = x < x0_ ? x : x0_, hi = x < x0_ ? x0_ : x;
    std::vector<Rat> cuts{lo};
    for (const auto& b : breaks_)
      if (lo < b && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    Rat acc(0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Rat mid = (cuts[i] + cuts[i + 1]) / 2;
      acc += slopes_[cell_of(mid)] * (cuts[i + 1] - cuts[i]);
    }
    return x < x0_ ? Rat(y0_ - acc) : Rat(y0_ + acc);
  }

 private:
  explicit ConvexSpec(Kind k) : kind_(k) {}
  std::size_t cell_of(const Rat& x) const {
    std::size_t c = 0;
    while (c < breaks_.size() && x >= breaks_[c]) ++c;
    return c;
  }

  Kind kind_;
  std::vector<Rat> breaks_;
  std::vector<Rat> slopes_;
  Rat x0_, y0_;
};

// --- inequality suite ------------------------------------------------------

struct InequalityCase {
  std::string name;
  bool applicable = false;    // premises held
  std::string premise_note;
  bool passed = false;
  bool exact = true;          // exact comparison vs. bracket comparison
  bool equality = false;      // LHS == RHS (only meaningful when exact)
  std::string detail;         // rendered LHS/RHS
};

struct InequalityReport {
  std::vector<InequalityCase> cases;
  bool all_passed() const {
    for (const auto& c : cases)
      if (c.applicable && !c.passed) return false;
    return true;
  }
  const InequalityCase& find(const std::string& name) const {
    for (const auto& c : cases)
      if (c.name == name) return c;
    throw invalid_argument_error("InequalityReport: no case named " + name);
  }
};

namespace detail {

inline std::string render(const SeminormValue& v) {
  if (v.exact) return v.value.str();
  return "[" + rat_str(v.bracket.lo) + ", " + rat_str(v.bracket.hi) + "]";
}

// Compare a <= b where either side may be an exact extended rational or a
// bracket.  Returns {verdict, comparison_was_exact, equality}.
struct CompareResult {
  bool holds;
  bool exact;
  bool equality;
};

inline CompareResult le(const SeminormValue& a, const SeminormValue& b) {
  if (a.exact && b.exact)
    return {a.value <= b.value, true, a.value == b.value};
  if (a.exact) {
    if (a.value.is_pos_inf()) return {false, true, false};
    if (a.value.value() <= b.bracket.lo) return {true, false, false};
    if (a.value.value() > b.bracket.hi) return {false, false, false};
    return {true, false, false};  // inside the enclosure: holds within tolerance
  }
  if (b.exact) {
    if (b.value.is_pos_inf()) return {true, true, false};
    if (a.bracket.hi <= b.value.value()) return {true, false, false};
    if (a.bracket.lo > b.value.value()) return {false, false, false};
    return {true, false, false};
  }
  if (a.bracket.hi <= b.bracket.lo) return {true, false, false};
  if (a.bracket.lo > b.bracket.hi) return {false, false, false};
  return {true, false, false};
}

}  // namespace detail

// Markov:     mu[f; f >= a]  >=  a * mu(f >= a)
inline InequalityCase markov_inequality(const NumFn& f, const MeasureTable& mu, const XReal& a) {
  InequalityCase c;
  c.name = "markov";
  c.applicable = true;
  Subset level(f.space().ground().size());
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f.at_atom(j) >= a) level |= f.space().atoms()[j];
  XReal lhs = integrate_over(f, mu, level).value;
  XReal rhs = a * evaluate(mu, level);
  c.passed = lhs >= rhs;
  c.equality = lhs == rhs;
  c.detail = "mu[f;f>=a]=" + lhs.str() + " vs a*mu(f>=a)=" + rhs.str();
  return c;
}

// Hoelder:    ||fg||_1 <= ||f||_p ||g||_q  with 1/p + 1/q = 1.
inline InequalityCase hoelder_inequality(const NumFn& f, const NumFn& g, const MeasureTable& mu,
                                         const XReal& p, const XReal& q) {
  InequalityCase c;
  c.name = "hoelder";
  XReal p_inv = p.is_pos_inf() ? XReal(0) : XReal(Rat(1) / p.value());
  XReal q_inv = q.is_pos_inf() ? XReal(0) : XReal(Rat(1) / q.value());
  if (p_inv + q_inv != XReal(1)) {
    c.premise_note = "requires 1/p + 1/q = 1";
    return c;
  }
  c.applicable = true;
  SeminormValue lhs = lp_seminorm(f * g, mu, XReal(1));
  SeminormValue nf = lp_seminorm(f, mu, p);
  SeminormValue ng = lp_seminorm(g, mu, q);
  c.detail = "||fg||_1=" + detail::render(lhs) + " vs ||f||_p*||g||_q=" +
             detail::render(nf) + "*" + detail::render(ng);

  if (p == XReal(2) && q == XReal(2) && lhs.exact) {
    // Compare in the squared domain, exactly.
    SeminormValue f2 = lp_seminorm(f * f, mu, XReal(1));
    SeminormValue g2 = lp_seminorm(g * g, mu, XReal(1));
    XReal lhs2 = lhs.value * lhs.value;
    XReal rhs2 = f2.value * g2.value;
    c.passed = lhs2 <= rhs2;
    c.equality = lhs2 == rhs2;
    return c;
  }
  SeminormValue rhs;
  if (nf.exact && ng.exact) {
    rhs.value = nf.value * ng.value;
  } else if (nf.is_infinite() || ng.is_infinite()) {
    rhs.value = XReal::pos_inf();
  } else {
    rhs.exact = false;
    auto lo = [](const SeminormValue& v) { return v.exact ? v.value.value() : v.bracket.lo; };
    auto hi = [](const SeminormValue& v) { return v.exact ? v.value.value() : v.bracket.hi; };
    rhs.bracket = {lo(nf) * lo(ng), hi(nf) * hi(ng)};
  }
  auto cmp = detail::le(lhs, rhs);
  c.passed = cmp.holds;
  c.exact = cmp.exact;
  c.equality = cmp.equality;
  return c;
}

// Minkowski:  ||f+g||_p <= ||f||_p + ||g||_p.  For p in {1, 2, inf} the
// comparison is exact (p = 2 via two squarings); otherwise brackets.
inline InequalityCase minkowski_inequality(const NumFn& f, const NumFn& g,
                                           const MeasureTable& mu, const XReal& p) {
  InequalityCase c;
  c.name = "minkowski";
  if (!(p >= XReal(1))) {
    c.premise_note = "requires p >= 1";
    return c;
  }
  c.applicable = true;
  NumFn sum = f + g;
  SeminormValue ns = lp_seminorm(sum, mu, p);
  SeminormValue nf = lp_seminorm(f, mu, p);
  SeminormValue ng = lp_seminorm(g, mu, p);
  c.detail = "||f+g||_p=" + detail::render(ns) + " vs ||f||_p+||g||_p=" +
             detail::render(nf) + "+" + detail::render(ng);

  if (p == XReal(2)) {
    // S_h := integral h^2 dmu are exact; decide sqrt(S_s) <= sqrt(S_f)+sqrt(S_g)
    // by squaring twice.
    auto s_of = [&](const NumFn& h) { return integrate(h * h, mu).pos_part_integral; };
    XReal ss = s_of(sum), sf = s_of(f), sg = s_of(g);
    if (ss.is_pos_inf() || sf.is_pos_inf() || sg.is_pos_inf()) {
      c.passed = sf.is_pos_inf() || sg.is_pos_inf();
      c.equality = false;
      return c;
    }
    XReal t = ss - sf - sg;
    if (t <= XReal(0)) {
      c.passed = true;
      c.equality = t == XReal(0) && sf * sg == XReal(0);
    } else {
      XReal lhs2 = t * t, rhs2 = XReal(4) * sf * sg;
      c.passed = lhs2 <= rhs2;
      c.equality = lhs2 == rhs2;
    }
    return c;
  }
  SeminormValue rhs;
  if (nf.exact && ng.exact) {
    rhs.value = nf.value + ng.value;
  } else if (nf.is_infinite() || ng.is_infinite()) {
    rhs.value = XReal::pos_inf();
  } else {
    auto lo = [](const SeminormValue& v) { return v.exact ? v.value.value() : v.bracket.lo; };
    auto hi = [](const SeminormValue& v) { return v.exact ? v.value.value() : v.bracket.hi; };
    rhs.exact = false;
    rhs.bracket = {lo(nf) + lo(ng), hi(nf) + hi(ng)};
  }
  auto cmp = detail::le(ns, rhs);
  c.passed = cmp.holds;
  c.exact = cmp.exact;
  c.equality = cmp.equality;
  return c;
}

// Jensen:     mu[phi o f] >= phi(mu[f]) for a probability mu and integrable
// real-valued f; for strictly convex phi, equality iff f is a.s. constant.
inline InequalityCase jensen_inequality(const NumFn& f, const MeasureTable& mu,
                                        const ConvexSpec& phi) {
  InequalityCase c;
  c.name = "jensen";
  if (!classify(mu).probability) {
    c.premise_note = "requires a probability measure";
    return c;
  }
  if (!integrable(f, mu)) {
    c.premise_note = "requires an integrable f";
    return c;
  }
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f.at_atom(j).is_infinite() && mu.weight(j) != XReal(0)) {
      c.premise_note = "requires f real-valued a.s.";
      return c;
    }
  c.applicable = true;
  XReal mean = integrate(f, mu).value;
  std::vector<XReal> comp(f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    comp[j] = mu.weight(j) == XReal(0) ? XReal(0) : XReal(phi(f.at_atom(j).value()));
  XReal lhs = integrate(NumFn(f.space(), comp), mu).value;
  XReal rhs(phi(mean.value()));
  c.passed = lhs >= rhs;
  c.equality = lhs == rhs;
  c.detail = "mu[phi(f)]=" + lhs.str() + " vs phi(mu[f])=" + rhs.str();
  if (phi.strictly_convex()) {
    std::vector<bool> constant(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) constant[j] = f.at_atom(j) == mean;
    bool as_constant = almost_everywhere(constant, mu);
    c.detail += as_constant ? "; f = mu[f] a.s." : "; f not a.s. constant";
    if (c.equality != as_constant) c.passed = false;  // equality iff degenerate
  }
  return c;
}

inline InequalityReport inequality_suite(const NumFn& f, const NumFn& g, const MeasureTable& mu,
                                         const XReal& p, const XReal& q, const ConvexSpec& phi,
                                         const XReal& markov_level) {
  InequalityReport rep;
  rep.cases.push_back(markov_inequality(f, mu, markov_level));
  rep.cases.push_back(hoelder_inequality(f, g, mu, p, q));
  rep.cases.push_back(minkowski_inequality(f, g, mu, p));
  rep.cases.push_back(jensen_inequality(f, mu, phi));
  return rep;
}

// L^q(mu) subset of L^p(mu) for p <= q and finite mu, on the instance f:
// finiteness of ||f||_q must imply finiteness of ||f||_p.
struct LqLpReport {
  bool q_finite = false;
  bool p_finite = false;
  bool implication_holds = false;
};

inline LqLpReport lq_subset_lp_check(const MeasureTable& mu, const NumFn& f, const XReal& p,
                                     const XReal& q) {
  if (!classify(mu).finite) throw precondition_error("lq_subset_lp_check: mu must be finite");
  if (!(XReal(1) <= p && p <= q)) throw precondition_error("lq_subset_lp_check: need 1 <= p <= q");
  LqLpReport r;
  r.q_finite = !lp_seminorm(f, mu, q).is_infinite();
  r.p_finite = !lp_seminorm(f, mu, p).is_infinite();
  r.implication_holds = !r.q_finite || r.p_finite;
  return r;
}

// --- convergence theorems on eventually periodic sequences ----------------

// An infinite function sequence encoded as a finite prefix followed by a
// cycle visited forever.  Eventually constant = cycle of length one.
struct FnSequence {
  std::vector<NumFn> prefix;
  std::vector<NumFn> cycle;

  const SigmaField& space() const {
    if (cycle.empty()) throw invalid_argument_error("FnSequence: cycle must be nonempty");
    return cycle.front().space();
  }
  NumFn liminf() const {
    NumFn acc = cycle.front();
    for (const auto& f : cycle) acc = min(acc, f);
    return acc;
  }
  NumFn limsup() const {
    NumFn acc = cycle.front();
    for (const auto& f : cycle) acc = max(acc, f);
    return acc;
  }
  bool has_limit() const { return liminf() == limsup(); }
  std::vector<const NumFn*> all_terms() const {
    std::vector<const NumFn*> out;
    for (const auto& f : prefix) out.push_back(&f);
    for (const auto& f : cycle) out.push_back(&f);
    return out;
  }
};

enum class ConvergenceMode { Levi, Fatou, Dominated };

struct ConvergenceReport {
  bool premises_hold = false;
  std::string premise_note;
  bool conclusion_holds = false;
  XReal lhs, rhs;
  std::string detail;
};

inline ConvergenceReport convergence_suite(const FnSequence& seq, const MeasureTable& mu,
                                           ConvergenceMode mode,
                                           const std::optional<NumFn>& dominator = std::nullopt) {
  ConvergenceReport rep;
  if (seq.cycle.empty()) throw invalid_argument_error("convergence_suite: empty cycle");
  auto terms = seq.all_terms();

  // Common premise: f_n^- <= g with mu[g] < inf (g = dominator, or 0 when
  // all terms are nonnegative).
  NumFn g = dominator ? *dominator : NumFn::constant(seq.space(), XReal(0));
  if (!g.nonnegative()) {
    rep.premise_note = "dominator must be nonnegative";
    return rep;
  }
  if (!integrate(g, mu).pos_part_integral.is_finite()) {
    rep.premise_note = "dominator must be integrable";
    return rep;
  }
  for (const NumFn* f : terms)
    if (!(f->neg_part() <= g)) {
      rep.premise_note = "negative parts are not dominated";
      return rep;
    }

  switch (mode) {
    case ConvergenceMode::Levi: {
      for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        if (!(*terms[i] <= *terms[i + 1])) {
          rep.premise_note = "sequence is not nondecreasing";
          return rep;
        }
      if (seq.cycle.size() > 1 && !seq.has_limit()) {
        rep.premise_note = "cycle breaks monotonicity";
        return rep;
      }
      rep.premises_hold = true;
      rep.lhs = integrate(seq.limsup(), mu).value;
      XReal sup = integrate(*terms.front(), mu).value;
      for (const NumFn* f : terms) sup = max(sup, integrate(*f, mu).value);
      rep.rhs = sup;
      rep.conclusion_holds = rep.lhs == rep.rhs;
      rep.detail = "integral of limit = " + rep.lhs.str() + ", sup of integrals = " + rep.rhs.str();
      return rep;
    }
    case ConvergenceMode::Fatou: {
      rep.premises_hold = true;
      rep.lhs = integrate(seq.liminf(), mu).value;
      // liminf of the integral sequence = min over the cycle.
      XReal lim_inf_int = integrate(seq.cycle.front(), mu).value;
      for (const auto& f : seq.cycle) lim_inf_int = min(lim_inf_int, integrate(f, mu).value);
      rep.rhs = lim_inf_int;
      rep.conclusion_holds = rep.lhs <= rep.rhs;
      rep.detail =
          "integral of liminf = " + rep.lhs.str() + ", liminf of integrals = " + rep.rhs.str();
      return rep;
    }
    case ConvergenceMode::Dominated: {
      if (!dominator) {
        rep.premise_note = "dominated convergence needs a dominator";
        return rep;
      }
      for (const NumFn* f : terms)
        if (!(f->abs() <= g)) {
          rep.premise_note = "|f_n| <= g fails";
          return rep;
        }
      if (!seq.has_limit()) {
        rep.premise_note = "sequence has no pointwise limit";
        return rep;
      }
      rep.premises_hold = true;
      NumFn limit = seq.limsup();
      rep.lhs = integrate(limit, mu).value;
      // Tail integrals all equal the cycle integrals; their limit must match,
      // and the L1 distance of the tail to the limit must vanish.
      rep.conclusion_holds = true;
      for (const auto& f : seq.cycle) {
        if (integrate(f, mu).value != rep.lhs) rep.conclusion_holds = false;
        if (integrate((f - limit).abs(), mu).value != XReal(0)) rep.conclusion_holds = false;
      }
      rep.rhs = integrate(seq.cycle.back(), mu).value;
      rep.detail = "integral of limit = " + rep.lhs.str() + ", limit of integrals = " + rep.rhs.str();
      return rep;
    }
  }
  return rep;
}

// --- determination by indefinite integrals --------------------------------

struct DeterminationReport {
  bool premises_hold = false;
  std::string premise_note;
  bool integrals_agree = false;   // integral over A of f == of g, all measurable A
  bool ae_equal = false;          // f == g a.e.-mu
  bool equivalence_holds = false;
  std::optional<Subset> witness;  // measurable A on which the integrals differ
};

inline DeterminationReport determination_check(const NumFn& f, const NumFn& g,
                                               const MeasureTable& mu) {
  DeterminationReport r;
  IntegralResult rf = integrate(f, mu), rg = integrate(g, mu);
  bool integrable_pair = max(max(rf.pos_part_integral, rf.neg_part_integral),
                             max(rg.pos_part_integral, rg.neg_part_integral))
                             .is_finite();
  if (!rf.well_defined || !rg.well_defined) {
    r.premise_note = "integrals must be well-defined";
    return r;
  }
  if (!classify(mu).sigma_finite && !integrable_pair) {
    r.premise_note = "requires a sigma-finite measure or integrable functions";
    return r;
  }
  r.premises_hold = true;

  r.integrals_agree = true;
  for (const auto& a : mu.space().members()) {
    if (integrate_over(f, mu, a).value != integrate_over(g, mu, a).value) {
      r.integrals_agree = false;
      r.witness = a;
      break;
    }
  }
  std::vector<bool> eq(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) eq[j] = f.at_atom(j) == g.at_atom(j);
  r.ae_equal = almost_everywhere(eq, mu);
  r.equivalence_holds = r.integrals_agree == r.ae_equal;
  return r;
}

}  // namespace measurekit
