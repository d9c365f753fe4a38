// Named check suites: each runs a battery of executable theorem instances
// and returns per-case verdicts with exact/tolerance provenance.  The same
// suites back the command-line `check` command and the acceptance runner.

#pragma once

#include "measurekit/conditioning.hpp"
#include "measurekit/integrate.hpp"
#include "measurekit/measure.hpp"
#include "measurekit/product.hpp"
#include "measurekit/sampling.hpp"
#include "measurekit/series.hpp"
#include "measurekit/setalg.hpp"
#include "measurekit/stieltjes.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace measurekit {

struct CheckCase {
  std::string id;
  std::string description;
  bool passed = false;
  bool exact = true;  // exact arithmetic vs. tolerance-tagged comparison
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckCase> cases;

  bool all_passed() const {
    for (const auto& c : cases)
      if (!c.passed) return false;
    return true;
  }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t cases = 0;  // 0: suite default
  double tolerance = 1e-9;
};

namespace checks {

inline GroundSet numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(labels);
}

inline Rat small_rat(RngStream& rng, long long lo, long long hi, unsigned max_den = 4) {
  long long num = lo + static_cast<long long>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  return Rat(num, static_cast<long long>(rng.below(max_den) + 1));
}

inline MeasureTable random_finite_measure(RngStream& rng, const SigmaField& space) {
  std::vector<XReal> w(space.atom_count());
  for (auto& x : w) x = XReal(small_rat(rng, 0, 8));
  return MeasureTable(space, std::move(w));
}

inline MeasureTable random_probability(RngStream& rng, const SigmaField& space,
                                       bool allow_null = true) {
  std::vector<XReal> w(space.atom_count());
  XReal total(0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    bool zero = allow_null && j + 1 < w.size() && rng.below(4) == 0;
    w[j] = zero ? XReal(0) : XReal(small_rat(rng, 1, 8));
    total += w[j];
  }
  for (auto& x : w) x = x / total;
  return MeasureTable(space, std::move(w));
}

inline SigmaField random_partition(RngStream& rng, const GroundSet& g, std::size_t blocks) {
  std::vector<Subset> atoms(blocks, Subset(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    atoms[i < blocks ? i : rng.below(blocks)].set(i);
  std::vector<Subset> nonempty;
  for (auto& a : atoms)
    if (a.any()) nonempty.push_back(a);
  return SigmaField(g, std::move(nonempty));
}

// --- criterion 1: Dynkin, exhaustively over small grounds -------------------

inline CheckCase dynkin_exhaustive(std::size_t max_ground = 4) {
  CheckCase c;
  c.id = "dynkin-exhaustive";
  c.description = "lambda-closure of every pi-system on grounds up to size " +
                  std::to_string(max_ground) + " equals the generated sigma-field";
  std::size_t pi_systems = 0, agreements = 0;
  for (std::size_t n = 1; n <= max_ground; ++n) {
    GroundSet g = numbered(n);
    const std::size_t subs = std::size_t(1) << n;
    std::vector<Subset> all;
    for (std::size_t m = 0; m < subs; ++m) {
      Subset s(n);
      for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1) s.set(i);
      all.push_back(std::move(s));
    }
    // Fast pre-filter on bitmask families; the actual check runs the real
    // machinery on every pi-system found.
    std::vector<std::uint32_t> inter(subs * subs);
    for (std::size_t a = 0; a < subs; ++a)
      for (std::size_t b = 0; b < subs; ++b) inter[a * subs + b] = std::uint32_t(a & b);
    const std::uint64_t families = std::uint64_t(1) << subs;
    for (std::uint64_t fam = 0; fam < families; ++fam) {
      bool is_pi = true;
      for (std::size_t a = 0; a < subs && is_pi; ++a) {
        if (!(fam >> a & 1)) continue;
        for (std::size_t b = a; b < subs && is_pi; ++b) {
          if (!(fam >> b & 1)) continue;
          if (!(fam >> inter[a * subs + b] & 1)) is_pi = false;
        }
      }
      if (!is_pi) continue;
      ++pi_systems;
      std::vector<Subset> members;
      for (std::size_t a = 0; a < subs; ++a)
        if (fam >> a & 1) members.push_back(all[a]);
      SetFamily family(g, members);
      SetFamily closed = lambda_closure(g, family);
      auto sigma_members = generate_sigma_field(g, family).members();
      std::sort(sigma_members.begin(), sigma_members.end());
      if (closed.members == sigma_members) ++agreements;
    }
  }
  c.passed = pi_systems == agreements && pi_systems > 0;
  std::ostringstream os;
  os << agreements << "/" << pi_systems << " pi-systems agree";
  c.detail = os.str();
  return c;
}

// --- criterion 2: the measure-agreement theorem -----------------------------

inline CheckCase measure_agreement(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "measure-agreement";
  c.description = "measures agreeing on a sigma-localizing generating pi-system agree everywhere";
  RngStream rng(seed, 2);
  std::size_t valid = 0;
  for (std::size_t rep = 0; valid < cases && rep < cases * 20; ++rep) {
    std::size_t n = 2 + rng.below(4);
    GroundSet g = numbered(n);
    SigmaField space = random_partition(rng, g, 1 + rng.below(n));
    MeasureTable mu = random_finite_measure(rng, space);

    // Intersection-closed generating family: all members of the field, or a
    // closure of random members, retried until it generates.
    SetFamily pi(g, {});
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::vector<Subset> seeds{g.full_set()};
      auto members = space.members();
      for (std::size_t k = 0; k < 2 + rng.below(3); ++k)
        seeds.push_back(members[rng.below(members.size())]);
      // close under pairwise intersection
      std::set<Subset> acc(seeds.begin(), seeds.end());
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<Subset> snap(acc.begin(), acc.end());
        for (const auto& a : snap)
          for (const auto& b : snap)
            if (acc.insert(a & b).second) grew = true;
      }
      pi = SetFamily(g, std::vector<Subset>(acc.begin(), acc.end()));
      if (generate_sigma_field(g, pi) == space) break;
    }
    if (!(generate_sigma_field(g, pi) == space)) continue;

    MeasureTable nu = sum_measures({mu}, {XReal(1)});  // transported copy
    AgreementVerdict v = agree_on_pi_system(mu, nu, pi, {g.full_set()});
    if (!v.premises_hold) continue;
    ++valid;
    if (!v.conclusion_holds) {
      c.passed = false;
      c.detail = "conclusion failed on a valid-premise instance at rep " + std::to_string(rep);
      return c;
    }
  }
  // One constructed premise violation must produce a counterexample report.
  GroundSet g3 = numbered(3);
  SigmaField d3 = SigmaField::discrete(g3);
  MeasureTable mu = MeasureTable::uniform(g3);
  MeasureTable nu(d3, {XReal(Rat(1, 3)), XReal(Rat(1, 2)), XReal(Rat(1, 6))});
  SetFamily pi(g3, {g3.subset({"1"}), g3.full_set()});
  AgreementVerdict v = agree_on_pi_system(mu, nu, pi, {g3.full_set()});
  bool violation_reported = !v.premises_hold && !v.conclusion_holds && v.counterexample.has_value();
  c.passed = valid >= cases && violation_reported;
  c.detail = std::to_string(valid) + " valid-premise instances, all conclusions held; " +
             std::string(violation_reported ? "violation instance reported a counterexample"
                                            : "violation instance NOT caught");
  return c;
}

// --- criterion 3: Caratheodory / Stieltjes over the interval algebra --------

inline CheckCase caratheodory_battery(std::size_t battery_size, std::uint64_t seed) {
  CheckCase c;
  c.id = "caratheodory-stieltjes";
  c.description = "outer measure of canonical interval sets under F = id equals length; "
                  "the splitting identity holds for all pairs";
  RngStream rng(seed, 3);
  Premeasure leb{CdfSpec::lebesgue(), false};
  std::vector<IntervalSet> battery;
  std::vector<Rat> lengths;
  for (std::size_t k = 0; k < battery_size; ++k) {
    std::size_t parts = 1 + rng.below(3);
    std::vector<Interval> ivs;
    for (std::size_t j = 0; j < parts; ++j) {
      Rat a = small_rat(rng, -12, 12), b = small_rat(rng, -12, 12);
      if (a == b) b = a + 1;
      if (b < a) std::swap(a, b);
      ivs.push_back(Interval(XReal(a), XReal(b), rng.below(2), rng.below(2)));
    }
    IntervalSet s = IntervalSet::of(ivs);
    battery.push_back(s);
    Rat len(0);
    for (const auto& comp : s.components()) len += comp.hi.value() - comp.lo.value();
    lengths.push_back(len);
  }
  for (std::size_t k = 0; k < battery.size(); ++k) {
    RealValue om = outer_measure(leb, battery[k]);
    if (!om.exact || om.xval != XReal(lengths[k])) {
      c.passed = false;
      c.detail = "outer measure differs from the length sum at case " + std::to_string(k);
      return c;
    }
  }
  std::size_t splits = 0;
  for (const auto& e : battery)
    for (const auto& a : battery) {
      RealValue whole = outer_measure(leb, a);
      RealValue split = outer_measure(leb, intersect(a, e)) + outer_measure(leb, difference(a, e));
      ++splits;
      if (!(whole.exact && split.exact && whole.xval == split.xval)) {
        c.passed = false;
        c.detail = "splitting identity failed";
        return c;
      }
    }
  c.passed = true;
  c.detail = std::to_string(battery.size()) + " sets, " + std::to_string(splits) +
             " splitting pairs, all exact";
  return c;
}

// --- criterion 4: geometric mean series --------------------------------------

inline CheckCase geometric_mean_check() {
  CheckCase c;
  c.id = "geometric-mean";
  c.description = "partial sums of k p (1-p)^(k-1) reach 1/p within 1e-9 with a certified tail";
  Rat tol(1, BigInt("1000000000"));
  for (const Rat& p : {Rat(1, 2), Rat(1, 4)}) {
    GeometricMeanSum s = geometric_mean_to_tolerance(p, tol);
    Rat err = Rat(1) / p - s.partial;
    if (!(s.certificate && err >= 0 && err <= tol)) {
      c.passed = false;
      c.detail = "failed at p = " + rat_str(p);
      return c;
    }
  }
  c.passed = true;
  c.detail = "p in {1/2, 1/4}; partial + exact tail == 1/p";
  return c;
}

// --- criterion 5: exponential Laplace transform -------------------------------

inline CheckCase laplace_transform_check() {
  CheckCase c;
  c.id = "laplace-exponential";
  c.description = "Stieltjes integration reproduces lambda/(lambda+mu) within 1e-8";
  c.exact = false;
  for (auto [lambda, mu] : {std::pair{Rat(2), Rat(1)}, std::pair{Rat(1), Rat(3)}}) {
    PiecewiseExpoly f = PiecewiseExpoly::mono(Interval(XReal(0), XReal::pos_inf(), false, false),
                                              Expoly(Poly::constant(Rat(1)), Rat(-mu)));
    RealValue v = integrate_stieltjes(f, CdfSpec::exponential(lambda));
    double expect = (lambda / (lambda + mu)).convert_to<double>();
    if (std::abs(v.approx - expect) > 1e-8) {
      c.passed = false;
      c.detail = "mismatch at lambda=" + rat_str(lambda) + ", mu=" + rat_str(mu);
      return c;
    }
  }
  c.passed = true;
  c.detail = "(2,1) -> 2/3 and (1,3) -> 1/4 within 1e-8";
  return c;
}

// --- criterion 6: quantile coupling -------------------------------------------

inline CheckCase quantile_coupling_battery(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "quantile-coupling";
  c.description = "push-forward of leb_(0,1) through the quantile equals dF exactly";
  RngStream rng(seed, 6);
  for (std::size_t rep = 0; rep < cases; ++rep) {
    // Random jumps and constant pieces, normalized to total mass 1.
    std::vector<Rat> jp, js;
    std::vector<DensityPiece> pieces;
    Rat cursor = small_rat(rng, -6, 0);
    Rat mass(0);
    std::size_t parts = 1 + rng.below(4);
    for (std::size_t k = 0; k < parts; ++k) {
      if (rng.below(2) == 0) {
        Rat size(static_cast<long long>(rng.below(4) + 1),
                 static_cast<long long>(rng.below(3) + 1));
        jp.push_back(cursor);
        js.push_back(size);
        mass += size;
        cursor += Rat(static_cast<long long>(rng.below(3) + 1), 2);
      } else {
        Rat width(static_cast<long long>(rng.below(3) + 1),
                  static_cast<long long>(rng.below(2) + 1));
        Rat density(static_cast<long long>(rng.below(4) + 1),
                    static_cast<long long>(rng.below(3) + 1));
        pieces.push_back(DensityPiece(XReal(cursor), XReal(cursor + width),
                                      Expoly::constant(density)));
        mass += density * width;
        cursor += width + Rat(static_cast<long long>(rng.below(2)), 2);
      }
    }
    if (mass.is_zero()) continue;
    for (auto& s : js) s /= mass;
    for (auto& p : pieces)
      p = DensityPiece(p.from, p.to, Expoly::constant(p.density.poly.coeffs()[0] / mass));
    CdfSpec f(jp, js, pieces);
    QuantileCouplingReport r = quantile_pushforward_check(f);
    if (!(r.exact && r.structural_equal && r.battery_equal)) {
      c.passed = false;
      c.detail = "coupling failed at rep " + std::to_string(rep) + ": " + r.detail;
      return c;
    }
  }
  c.passed = true;
  c.detail = std::to_string(cases) + " piecewise-linear+jump distributions, exact equality";
  return c;
}

// --- criterion 7: Tonelli-Fubini -----------------------------------------------

inline CheckCase fubini_battery(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "fubini";
  c.description = "product and both iterated integrals agree under premises (a)/(b)/(c)";
  RngStream rng(seed, 7);
  std::size_t seen_a = 0, seen_b = 0, seen_c = 0, used = 0;
  while (used < cases) {
    std::size_t n1 = 1 + rng.below(4), n2 = 1 + rng.below(4);
    SigmaField f1 = SigmaField::discrete(numbered(n1));
    SigmaField f2 = SigmaField::discrete(numbered(n2));
    ProductSpace ps = ProductSpace::of(f1, f2);
    MeasureTable mu = random_finite_measure(rng, f1);
    MeasureTable nu = random_finite_measure(rng, f2);
    int kind = static_cast<int>(rng.below(3));
    std::vector<XReal> v(ps.space.atom_count());
    for (auto& x : v) {
      if (rng.below(8) == 0) x = rng.below(2) ? XReal::pos_inf() : XReal::neg_inf();
      else x = XReal(small_rat(rng, -8, 8));
      if (kind == 0) x = x.abs();
      if (kind == 1 && x.is_infinite()) x = XReal(3);
    }
    FubiniReport r = fubini_check(NumFn(ps.space, v), mu, nu, ps);
    if (!r.any_premise) continue;
    ++used;
    seen_a += r.premise_nonneg;
    seen_b += r.premise_integrable;
    seen_c += r.premise_mixed && !r.premise_integrable && !r.premise_nonneg;
    if (!r.equal) {
      c.passed = false;
      c.detail = "three-way equality failed at instance " + std::to_string(used);
      return c;
    }
  }
  c.passed = seen_a >= 10 && seen_b >= 10 && seen_c >= 1;
  std::ostringstream os;
  os << cases << " instances; premises seen a/b/c-only: " << seen_a << "/" << seen_b << "/"
     << seen_c;
  c.detail = os.str();
  return c;
}

// --- criterion 8: Radon-Nikodym and the chain rule -------------------------------

inline CheckCase radon_nikodym_chain(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "radon-nikodym-chain";
  c.description = "indefinite(d mu/d nu, nu) reproduces mu and the chain rule holds a.e.";
  RngStream rng(seed, 8);
  for (std::size_t rep = 0; rep < cases; ++rep) {
    std::size_t n = 2 + rng.below(5);
    GroundSet g = numbered(n);
    SigmaField space = random_partition(rng, g, 1 + rng.below(n));
    MeasureTable lambda = random_finite_measure(rng, space);
    auto nonneg_fn = [&] {
      std::vector<XReal> v(space.atom_count());
      for (auto& x : v) x = XReal(small_rat(rng, 0, 6));
      return NumFn(space, v);
    };
    MeasureTable nu = indefinite(nonneg_fn(), lambda);
    MeasureTable mu = indefinite(nonneg_fn(), nu);
    NumFn dmu_dnu = radon_nikodym(mu, nu);
    if (indefinite(dmu_dnu, nu) != mu) {
      c.passed = false;
      c.detail = "indefinite(d mu/d nu, nu) != mu at rep " + std::to_string(rep);
      return c;
    }
    NumFn lhs = radon_nikodym(mu, lambda);
    NumFn rhs = dmu_dnu * radon_nikodym(nu, lambda);
    std::vector<bool> eq(lhs.size());
    for (std::size_t j = 0; j < lhs.size(); ++j) eq[j] = lhs.at_atom(j) == rhs.at_atom(j);
    if (!almost_everywhere(eq, lambda)) {
      c.passed = false;
      c.detail = "chain rule failed a.e. at rep " + std::to_string(rep);
      return c;
    }
  }
  // Constructed violation: mu charges a nu-null atom.
  GroundSet g2 = numbered(2);
  SigmaField d2 = SigmaField::discrete(g2);
  bool witnessed = false;
  try {
    radon_nikodym(MeasureTable(d2, {XReal(1), XReal(1)}), MeasureTable(d2, {XReal(1), XReal(0)}));
  } catch (const absolute_continuity_error& e) {
    witnessed = e.witness_atom == g2.subset({"2"});
  }
  c.passed = witnessed;
  c.detail = std::to_string(cases) + " chains verified exactly; " +
             (witnessed ? "violation reported its witness atom" : "violation NOT caught");
  return c;
}

// --- criterion 9: conditional expectation suite ------------------------------------

inline CheckCase condexp_battery(std::size_t cases_per_item, std::uint64_t seed) {
  CheckCase c;
  c.id = "condexp-suite";
  c.description = "tower, taking-out, repeated conditioning, conditional Jensen, independent "
                  "conditioning on randomized exact instances";
  RngStream rng(seed, 9);
  auto random_fn = [&](const SigmaField& space) {
    std::vector<XReal> v(space.atom_count());
    for (auto& x : v) x = XReal(small_rat(rng, -8, 8));
    return NumFn(space, v);
  };
  std::size_t ran[5] = {0, 0, 0, 0, 0};
  for (std::size_t rep = 0; ran[0] < cases_per_item || ran[1] < cases_per_item ||
                            ran[2] < cases_per_item || ran[3] < cases_per_item ||
                            ran[4] < cases_per_item;
       ++rep) {
    if (rep > cases_per_item * 40) {
      c.passed = false;
      c.detail = "failed to generate enough applicable instances";
      return c;
    }
    std::size_t n = 4 + rng.below(5);
    GroundSet g = numbered(n);
    SigmaField dn = SigmaField::discrete(g);
    MeasureTable p = random_probability(rng, dn);
    NumFn f = random_fn(dn);
    SigmaField b = random_partition(rng, g, 1 + rng.below(3));
    SigmaField cf = join(b, random_partition(rng, g, 1 + rng.below(3)));
    NumFn gfun = random_fn(b).on(dn);

    PropertyCase t = tower_property(f, p, b);
    if (t.applicable) {
      ++ran[0];
      if (!t.passed) {
        c.passed = false;
        c.detail = "tower failed";
        return c;
      }
    }
    PropertyCase to = taking_out_property(f, gfun, p, b);
    if (to.applicable) {
      ++ran[1];
      if (!to.passed) {
        c.passed = false;
        c.detail = "taking-out failed";
        return c;
      }
    }
    PropertyCase rc = repeated_conditioning_property(f, p, b, cf);
    if (rc.applicable) {
      ++ran[2];
      if (!rc.passed) {
        c.passed = false;
        c.detail = "repeated conditioning failed";
        return c;
      }
    }
    PropertyCase j = conditional_jensen_property(f, p, b, ConvexSpec::square());
    if (j.applicable) {
      ++ran[3];
      if (!j.passed) {
        c.passed = false;
        c.detail = "conditional Jensen failed";
        return c;
      }
    }
    // Independent conditioning on a genuine product construction.
    {
      SigmaField fa = SigmaField::discrete(numbered(2));
      SigmaField fb = SigmaField::discrete(numbered(1 + rng.below(3)));
      ProductSpace ps = ProductSpace::of(fa, fb);
      MeasureTable pp = product_measure(random_probability(rng, fa, false),
                                        random_probability(rng, fb, false), ps);
      NumFn factor_fn = random_fn(fa);
      NumFn lifted = NumFn::compose(factor_fn, ps.first, ps.space);
      SigmaField bfield = pullback_sigma(ps.second, fb);
      PropertyCase ic = independent_conditioning_property(lifted, pp, bfield);
      if (ic.applicable) {
        ++ran[4];
        if (!ic.passed) {
          c.passed = false;
          c.detail = "independent conditioning failed";
          return c;
        }
      }
    }
  }
  // The worked example: uniform on four points, pair blocks.
  GroundSet g4 = numbered(4);
  SigmaField d4 = SigmaField::discrete(g4);
  NumFn f(d4, {XReal(1), XReal(2), XReal(3), XReal(4)});
  SigmaField b(g4, {g4.subset({"1", "2"}), g4.subset({"3", "4"})});
  CondExpTable ce = cond_exp(f, MeasureTable::uniform(g4), b);
  bool worked = ce.values == std::vector<XReal>{XReal(Rat(3, 2)), XReal(Rat(7, 2))};
  c.passed = worked;
  std::ostringstream os;
  os << "cases per item: " << ran[0] << "/" << ran[1] << "/" << ran[2] << "/" << ran[3] << "/"
     << ran[4] << "; worked example " << (worked ? "reproduced" : "FAILED");
  c.detail = os.str();
  return c;
}

// --- criterion 10: coin-toss uniform ------------------------------------------------

inline CheckCase coin_uniform_exact() {
  CheckCase c;
  c.id = "coin-uniform-exact";
  c.description = "exact law of the 10-bit dyadic output is uniform over {j/1024}";
  CoordinateSampler s;
  s.cycle = {FactorLaw::fair_bit()};
  auto law = coin_to_uniform_exact_law(s, 10);
  c.passed = law.size() == 1024;
  for (const auto& [v, p] : law)
    if (p != Rat(1, 1024)) c.passed = false;
  c.detail = "1024 dyadics, each with exact probability 1/1024";
  return c;
}

inline CheckCase coin_uniform_ks(std::uint64_t seed) {
  CheckCase c;
  c.id = "coin-uniform-ks";
  c.description = "fixed-seed Monte Carlo of the 10-bit output: KS distance to leb_[0,1] < 0.03";
  c.exact = false;
  CoordinateSampler s;
  s.cycle = {FactorLaw::fair_bit()};
  s.seed = seed;
  std::vector<double> vals;
  for (std::size_t d = 0; d < 10000; ++d)
    vals.push_back(coin_to_uniform(s, 10, d).convert_to<double>());
  CdfSpec u01({}, {}, {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1)))});
  double ks = ks_distance(EmpiricalLaw::of(std::move(vals)), u01);
  c.passed = ks < 0.03;
  c.detail = "n = 10000, KS = " + std::to_string(ks);
  return c;
}

// --- criterion 11: binary-tree projective consistency --------------------------------

inline CheckCase binary_tree_consistency() {
  CheckCase c;
  c.id = "binary-tree";
  c.description = "level-(n+1) law projects onto the level-n law for n in {0,1,2}; "
                  "root marginal is uniform at every level";
  for (unsigned n = 0; n <= 2; ++n) {
    TreeLaw fine = binary_tree_law(n + 1);
    TreeLaw coarse = binary_tree_law(n);
    MeasurableMap pr = tree_restriction(fine, n);
    if (pushforward_measure(pr, fine.law, coarse.law.space()) != coarse.law) {
      c.passed = false;
      c.detail = "projection mismatch at level " + std::to_string(n);
      return c;
    }
  }
  for (unsigned n = 0; n <= 3; ++n) {
    TreeLaw t = binary_tree_law(n);
    const GroundSet& g = t.law.space().ground();
    Subset root_plus(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.label(i)[0] == '+') root_plus.set(i);
    if (evaluate(t.law, root_plus) != XReal(Rat(1, 2))) {
      c.passed = false;
      c.detail = "root marginal not uniform at level " + std::to_string(n);
      return c;
    }
  }
  c.passed = true;
  c.detail = "projections exact for n in {0,1,2}; root marginal 1/2 at levels 0..3";
  return c;
}

// --- criterion 12: Riemann-Darboux comparison ------------------------------------------

inline CheckCase riemann_comparison() {
  CheckCase c;
  c.id = "riemann-comparison";
  c.description = "Lebesgue integrals of rational polynomials equal antiderivative differences";
  struct Item {
    std::vector<Rat> coeffs;
    Rat a, b;
  };
  std::vector<Item> items = {
      {{Rat(0), Rat(0), Rat(1)}, Rat(0), Rat(1)},            // x^2 on [0,1] -> 1/3
      {{Rat(1)}, Rat(-2), Rat(3)},                           // constants
      {{Rat(0), Rat(1)}, Rat(-1), Rat(1)},                   // odd symmetry
      {{Rat(1, 2), Rat(-3), Rat(0), Rat(4)}, Rat(-1), Rat(2)},
      {{Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}, Rat(0), Rat(1, 2)},
      {{Rat(2, 3), Rat(1, 5)}, Rat(1, 3), Rat(7, 3)},
      {{Rat(-1), Rat(1), Rat(-1), Rat(1)}, Rat(0), Rat(3)},
      {{Rat(5)}, Rat(0), Rat(0)},                            // degenerate interval
      {{Rat(0), Rat(0), Rat(3, 7)}, Rat(-5, 2), Rat(-1, 2)},
      {{Rat(1), Rat(2), Rat(3), Rat(4), Rat(5)}, Rat(-1), Rat(1)},
      {{Rat(0), Rat(1, 9), Rat(0), Rat(0), Rat(0), Rat(6)}, Rat(-2, 3), Rat(5, 3)},
  };
  for (std::size_t k = 0; k < items.size(); ++k) {
    const Item& it = items[k];
    Poly p(it.coeffs);
    PiecewiseExpoly f =
        PiecewiseExpoly::polynomial(Interval(XReal(it.a), XReal(it.b), true, true), p);
    RealValue got = integrate_stieltjes(f, CdfSpec::lebesgue());
    // Independent antiderivative: coefficient shift computed right here.
    Rat expect(0);
    for (std::size_t d = 0; d < it.coeffs.size(); ++d) {
      Rat ad = it.coeffs[d] / Rat(BigInt(d + 1));
      expect += ad * (rat_pow_int(it.b, static_cast<long long>(d + 1)) -
                      rat_pow_int(it.a, static_cast<long long>(d + 1)));
    }
    if (!(got.exact && got.xval == XReal(expect))) {
      c.passed = false;
      c.detail = "mismatch at polynomial " + std::to_string(k);
      return c;
    }
    if (k == 0 && got.xval != XReal(Rat(1, 3))) {
      c.passed = false;
      c.detail = "x^2 on [0,1] did not integrate to 1/3";
      return c;
    }
  }
  c.passed = true;
  c.detail = std::to_string(items.size()) + " polynomials, exact agreement (x^2 -> 1/3)";
  return c;
}

// --- criterion 13: Borel-Cantelli --------------------------------------------------------

inline CheckCase borel_cantelli_battery(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "borel-cantelli";
  c.description = "eventually periodic sequences with finite mass sum have null limsup";
  RngStream rng(seed, 13);
  for (std::size_t rep = 0; rep < cases; ++rep) {
    std::size_t n = 3 + rng.below(4);
    GroundSet g = numbered(n);
    SigmaField space = random_partition(rng, g, 2 + rng.below(n - 1));
    // Guarantee at least one null atom so cycles can be nontrivial.
    std::vector<XReal> w(space.atom_count());
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = j == 0 ? XReal(0) : XReal(small_rat(rng, 0, 6));
    MeasureTable mu(space, w);
    Subset null_union(g.size());
    for (std::size_t j = 0; j < w.size(); ++j)
      if (mu.weight(j) == XReal(0)) null_union |= space.atoms()[j];
    SetSequence seq;
    auto members = space.members();
    for (std::size_t k = 0; k < rng.below(4); ++k)
      seq.prefix.push_back(members[rng.below(members.size())]);
    for (std::size_t k = 0; k < 1 + rng.below(2); ++k) {
      // random measurable subset of the null union
      Subset s(g.size());
      for (const auto& atom : space.atoms())
        if (atom.is_subset_of(null_union) && rng.below(2)) s |= atom;
      seq.cycle.push_back(s);
    }
    BorelCantelliResult r = borel_cantelli(mu, seq);
    if (!r.sum_finite || r.limsup_measure != XReal(0)) {
      c.passed = false;
      c.detail = "finite-sum instance produced a charged limsup at rep " + std::to_string(rep);
      return c;
    }
  }
  // Infinite mass sum exhibiting a charged limsup.
  GroundSet g4 = numbered(4);
  MeasureTable uni = MeasureTable::uniform(g4);
  BorelCantelliResult r = borel_cantelli(uni, SetSequence{{}, {g4.subset({"1"})}});
  bool witnessed = !r.sum_finite && r.limsup_measure > XReal(0) && r.implication_holds;
  c.passed = witnessed;
  c.detail = std::to_string(cases) + " finite-sum sequences null; infinite-sum case has limsup "
             "of measure " + r.limsup_measure.str();
  return c;
}

// --- additional suite batteries -----------------------------------------------------------

inline CheckCase measure_laws_exhaustive() {
  CheckCase c;
  c.id = "measure-laws-exhaustive";
  c.description = "monotonicity, additivity, subadditivity over all measurable pairs, "
                  "grounds up to size 4";
  RngStream rng(99, 14);
  for (std::size_t n = 1; n <= 4; ++n) {
    GroundSet g = numbered(n);
    for (int rep = 0; rep < 12; ++rep) {
      SigmaField space = random_partition(rng, g, 1 + rng.below(n));
      std::vector<XReal> w(space.atom_count());
      for (auto& x : w) x = rng.below(6) == 0 ? XReal::pos_inf() : XReal(small_rat(rng, 0, 6));
      MeasureTable mu(space, w);
      auto members = space.members();
      for (const auto& a : members)
        for (const auto& b : members) {
          XReal ma = evaluate(mu, a), mb = evaluate(mu, b);
          if ((a & b).none() && evaluate(mu, a | b) != ma + mb) {
            c.passed = false;
            c.detail = "additivity failed";
            return c;
          }
          if (a.is_subset_of(b) && !(ma <= mb)) {
            c.passed = false;
            c.detail = "monotonicity failed";
            return c;
          }
          if (!(evaluate(mu, a | b) <= ma + mb)) {
            c.passed = false;
            c.detail = "subadditivity failed";
            return c;
          }
        }
    }
  }
  c.passed = true;
  c.detail = "all measurable pairs on all sampled spaces";
  return c;
}

inline CheckCase inequalities_battery(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "inequalities";
  c.description = "Markov, Hoelder, Minkowski, Jensen on randomized exact instances";
  RngStream rng(seed, 15);
  for (std::size_t rep = 0; rep < cases; ++rep) {
    std::size_t n = 2 + rng.below(3);
    GroundSet g = numbered(n);
    SigmaField dn = SigmaField::discrete(g);
    MeasureTable p = random_probability(rng, dn, false);
    std::vector<XReal> fv(n), gv(n);
    for (auto& x : fv) x = XReal(small_rat(rng, -6, 6));
    for (auto& x : gv) x = XReal(small_rat(rng, -6, 6));
    NumFn f(dn, fv), gfn(dn, gv);
    InequalityReport r = inequality_suite(f, gfn, p, XReal(2), XReal(2), ConvexSpec::square(),
                                          XReal(small_rat(rng, -3, 3)));
    if (!r.all_passed()) {
      c.passed = false;
      c.detail = "suite failed at rep " + std::to_string(rep);
      return c;
    }
    if (!minkowski_inequality(f, gfn, p, XReal(1)).passed ||
        !minkowski_inequality(f, gfn, p, XReal::pos_inf()).passed ||
        !hoelder_inequality(f, gfn, p, XReal(1), XReal::pos_inf()).passed) {
      c.passed = false;
      c.detail = "p in {1, inf} case failed at rep " + std::to_string(rep);
      return c;
    }
  }
  c.passed = true;
  c.detail = std::to_string(cases) + " randomized instances, all inequalities hold";
  return c;
}

inline CheckCase integral_laws_battery(std::size_t cases, std::uint64_t seed) {
  CheckCase c;
  c.id = "integral-laws";
  c.description = "additivity, triangle, invisibility of null sets, change of variables";
  RngStream rng(seed, 16);
  GroundSet cod({"a", "b", "c"});
  for (std::size_t rep = 0; rep < cases; ++rep) {
    std::size_t n = 2 + rng.below(3);
    GroundSet g = numbered(n);
    SigmaField space = random_partition(rng, g, 1 + rng.below(n));
    std::vector<XReal> w(space.atom_count());
    for (auto& x : w) x = rng.below(6) == 0 ? XReal::pos_inf() : XReal(small_rat(rng, 0, 6));
    MeasureTable mu(space, w);
    auto rand_fn = [&] {
      std::vector<XReal> v(space.atom_count());
      for (auto& x : v)
        x = rng.below(8) == 0 ? (rng.below(2) ? XReal::pos_inf() : XReal::neg_inf())
                              : XReal(small_rat(rng, -6, 6));
      return NumFn(space, v);
    };
    NumFn f = rand_fn(), gfn = rand_fn();
    IntegralResult rf = integrate(f, mu), rg = integrate(gfn, mu);
    if (max(rf.neg_part_integral, rg.neg_part_integral).is_finite()) {
      NumFn sum = f + gfn;
      if (integrate(sum, mu).value != rf.value + rg.value) {
        c.passed = false;
        c.detail = "additivity failed";
        return c;
      }
    }
    if (!(integrate(f, mu).value.abs() <= integrate(f.abs(), mu).value)) {
      c.passed = false;
      c.detail = "triangle inequality failed";
      return c;
    }
    std::vector<std::size_t> graph(g.size());
    for (auto& v : graph) v = rng.below(3);
    MeasurableMap h(g, cod, graph);
    if (is_measurable(h, space, SigmaField::discrete(cod))) {
      MeasureTable push = pushforward_measure(h, mu, SigmaField::discrete(cod));
      std::vector<XReal> gv(3);
      for (auto& x : gv) x = XReal(small_rat(rng, -5, 5));
      NumFn gg(SigmaField::discrete(cod), gv);
      IntegralResult lhs = integrate(gg, push);
      IntegralResult rhs = integrate(NumFn::compose(gg, h, space), mu);
      if (lhs.value != rhs.value || lhs.well_defined != rhs.well_defined) {
        c.passed = false;
        c.detail = "change of variables failed";
        return c;
      }
    }
  }
  c.passed = true;
  c.detail = std::to_string(cases) + " randomized instances";
  return c;
}

inline CheckCase kolmogorov_marginals(std::uint64_t seed) {
  CheckCase c;
  c.id = "kolmogorov-consistency";
  c.description = "i.i.d. marginal families are consistent; a perturbed family is caught";
  RngStream rng(seed, 17);
  GroundSet state({"0", "1"});
  Rat p(static_cast<long long>(rng.below(3) + 1), 4);
  std::vector<Rat> single{Rat(1) - p, p};
  MarginalFamily fam{state, {"a", "b", "c"}, {}};
  for (std::size_t mask = 1; mask < 8; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 3; ++i)
      if (mask >> i & 1) idx.push_back(i);
    GroundSet tg = tuple_ground(state, idx.size());
    std::vector<XReal> w(tg.size());
    for (std::size_t code = 0; code < tg.size(); ++code) {
      Rat prob(1);
      std::size_t cc = code;
      for (std::size_t pos = idx.size(); pos-- > 0;) {
        prob *= single[cc % 2];
        cc /= 2;
      }
      w[code] = XReal(prob);
    }
    fam.laws.emplace_back(idx, MeasureTable(SigmaField::discrete(tg), w));
  }
  ConsistencyReport ok = kolmogorov_consistency(fam);
  MarginalFamily bad = fam;
  bad.laws[0].second = MeasureTable(bad.laws[0].second.space(),
                                    {XReal(Rat(1, 10)), XReal(Rat(9, 10))});
  ConsistencyReport caught = kolmogorov_consistency(bad);
  c.passed = ok.consistent && !caught.consistent && caught.violation.has_value();
  c.detail = "consistent family passed (" + std::to_string(ok.pairs_checked) +
             " pairs); perturbed family caught";
  return c;
}

inline CheckCase sampling_bands(std::uint64_t seed) {
  CheckCase c;
  c.id = "sampling-bands";
  c.description = "fixed-seed KS and CLT bands for inverse-transform samplers";
  c.exact = false;
  CdfSpec u01({}, {}, {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1)))});
  EmpiricalLaw emp = sample_quantile(u01, 10000, RngStream(seed, 1));
  double ks = ks_distance(emp, u01);
  CdfSpec e2 = CdfSpec::exponential(Rat(2));
  EmpiricalLaw ee = sample_quantile(e2, 10000, RngStream(seed, 2));
  double mean_err = std::abs(ee.mean() - 0.5);
  c.passed = ks < 0.02 && mean_err < 3.0 * 0.5 / 100.0;
  std::ostringstream os;
  os << "uniform KS = " << ks << ", exponential mean error = " << mean_err;
  c.detail = os.str();
  return c;
}

}  // namespace checks

inline std::vector<std::string> suite_names() {
  return {"dynkin", "measure-laws", "integral-laws", "inequalities", "fubini",
          "rn",     "condexp",      "stieltjes",     "kolmogorov",   "sampling"};
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  using namespace checks;
  SuiteReport rep;
  rep.suite = name;
  auto n = [&](std::size_t dflt) { return opt.cases ? opt.cases : dflt; };
  if (name == "dynkin") {
    rep.cases.push_back(dynkin_exhaustive());
  } else if (name == "measure-laws") {
    rep.cases.push_back(measure_laws_exhaustive());
    rep.cases.push_back(measure_agreement(n(1000), opt.seed));
    rep.cases.push_back(borel_cantelli_battery(n(100), opt.seed));
  } else if (name == "integral-laws") {
    rep.cases.push_back(integral_laws_battery(n(300), opt.seed));
    rep.cases.push_back(riemann_comparison());
    rep.cases.push_back(geometric_mean_check());
  } else if (name == "inequalities") {
    rep.cases.push_back(inequalities_battery(n(300), opt.seed));
  } else if (name == "fubini") {
    rep.cases.push_back(fubini_battery(n(500), opt.seed));
  } else if (name == "rn") {
    rep.cases.push_back(radon_nikodym_chain(n(1000), opt.seed));
  } else if (name == "condexp") {
    rep.cases.push_back(condexp_battery(n(500), opt.seed));
  } else if (name == "stieltjes") {
    rep.cases.push_back(caratheodory_battery(n(200), opt.seed));
    rep.cases.push_back(laplace_transform_check());
    rep.cases.push_back(quantile_coupling_battery(n(50), opt.seed));
  } else if (name == "kolmogorov") {
    rep.cases.push_back(kolmogorov_marginals(opt.seed));
    rep.cases.push_back(binary_tree_consistency());
    rep.cases.push_back(coin_uniform_exact());
  } else if (name == "sampling") {
    rep.cases.push_back(sampling_bands(opt.seed ? opt.seed : 7));
    rep.cases.push_back(coin_uniform_ks(opt.seed ? opt.seed : 2024));
  } else {
    throw invalid_argument_error("unknown suite '" + name + "'");
  }
  return rep;
}

}  // namespace measurekit
