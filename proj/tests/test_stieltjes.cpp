#include "measurekit/stieltjes.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

using namespace measurekit;

namespace {

const XReal inf = XReal::pos_inf();
const XReal ninf = XReal::neg_inf();

Interval iv(const char* lo, const char* hi, bool lc, bool hc) {
  return Interval(XReal::parse(lo), XReal::parse(hi), lc, hc);
}

// Taylor partial sum of exp(x) at rational x < 0 with |x| <= 4, bracketed
// by the alternating-series tail; independent of std::exp.
RatBracket exp_series_bracket(const Rat& x, int terms) {
  Rat sum(0), term(1);
  for (int k = 1; k <= terms; ++k) {
    sum += term;
    term = term * x / Rat(k);
  }
  // For alternating series (x < 0) the error is at most the next term.
  Rat err = term.sign() < 0 ? Rat(-term) : term;
  return {sum - err, sum + err};
}

// Adaptive Simpson quadrature, used as an independent oracle for the
// numeric Stieltjes layer.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int depth = 0) {
  double c = (a + b) / 2;
  double fa = f(a), fb = f(b), fc = f(c);
  double s = (b - a) / 6 * (fa + 4 * fc + fb);
  double lm = (a + c) / 2, rm = (c + b) / 2;
  double s2 = (c - a) / 6 * (fa + 4 * f(lm) + fc) + (b - c) / 6 * (fc + 4 * f(rm) + fb);
  if (depth > 40 || std::abs(s2 - s) < 15 * tol) return s2 + (s2 - s) / 15;
  return adaptive_simpson(f, a, c, tol / 2, depth + 1) +
         adaptive_simpson(f, c, b, tol / 2, depth + 1);
}

CdfSpec uniform01() {
  return CdfSpec({}, {}, {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1)))});
}
CdfSpec bernoulli_half() {
  return CdfSpec({Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}, {}, Rat(1, 2));
}

}  // namespace

TEST_CASE("interval set canonical form and algebra") {
  SECTION("adjacent half-open intervals merge; open gaps stay") {
    IntervalSet a = IntervalSet::of({iv("0", "1", false, true), iv("1", "2", false, true)});
    CHECK(a.component_count() == 1);
    CHECK(a.str() == "(0,2]");

    IntervalSet b = IntervalSet::of({iv("0", "1", false, false), iv("1", "2", false, false)});
    CHECK(b.component_count() == 2);
    IntervalSet c = unite(b, IntervalSet::single(Interval::point(XReal(1))));
    CHECK(c.component_count() == 1);
    CHECK(c.str() == "(0,2)");
  }
  SECTION("membership oracle across operations") {
    std::vector<IntervalSet> sets = {
        IntervalSet::of({iv("0", "1", false, true), iv("2", "3", true, false)}),
        IntervalSet::of({iv("1/2", "5/2", true, true)}),
        IntervalSet::of({iv("-inf", "0", false, true), Interval::point(XReal(2))}),
        IntervalSet::empty(),
        IntervalSet::whole_line(),
    };
    std::vector<XReal> probes;
    for (int n = -4; n <= 8; ++n) {
      probes.push_back(XReal(Rat(n, 2)));
      probes.push_back(XReal(Rat(3 * n + 1, 7)));
    }
    for (const auto& a : sets)
      for (const auto& b : sets) {
        IntervalSet u = unite(a, b), i = intersect(a, b), d = difference(a, b);
        IntervalSet ca = complement(a);
        for (const auto& x : probes) {
          bool ina = a.contains(x), inb = b.contains(x);
          REQUIRE(u.contains(x) == (ina || inb));
          REQUIRE(i.contains(x) == (ina && inb));
          REQUIRE(d.contains(x) == (ina && !inb));
          REQUIRE(ca.contains(x) == !ina);
        }
        REQUIRE(unite(a, b) == unite(b, a));
        REQUIRE(complement(complement(a)) == a);
        REQUIRE(intersect(a, a) == a);
      }
  }
}

TEST_CASE("eval_cdf") {
  SECTION("Lebesgue anchor: F = id") {
    CdfSpec leb = CdfSpec::lebesgue();
    CHECK(leb.cdf(Rat(3, 2)).xval == XReal(Rat(3, 2)));
    CHECK(leb.cdf(Rat(-7, 3)).xval == XReal(Rat(-7, 3)));
  }
  SECTION("unit jump at zero") {
    CdfSpec dirac = CdfSpec::point_mass(Rat(0));
    CHECK(dirac.cdf(Rat(0)).xval == XReal(1));
    CHECK(dirac.cdf_left_limit(Rat(0)).xval == XReal(0));
    CHECK(dirac.cdf(Rat(-1)).xval == XReal(0));
  }
  SECTION("exponential tail against a series oracle") {
    CdfSpec e2 = CdfSpec::exponential(Rat(2));
    RealValue v = e2.cdf(Rat(1));
    REQUIRE_FALSE(v.exact);
    RatBracket em2 = exp_series_bracket(Rat(-2), 30);  // e^{-2}
    double lo = 1.0 - em2.hi.convert_to<double>();
    double hi = 1.0 - em2.lo.convert_to<double>();
    CHECK(v.approx >= lo - 1e-12);
    CHECK(v.approx <= hi + 1e-12);
    CHECK(std::abs(v.approx - 0.864664716763387) < 1e-12);
  }
}

TEST_CASE("measure_set") {
  CdfSpec leb = CdfSpec::lebesgue();
  SECTION("length of a union of half-open intervals") {
    IntervalSet s = IntervalSet::of({iv("0", "1", false, true), iv("2", "3", false, true)});
    CHECK(measure_set(leb, s).xval == XReal(2));
  }
  SECTION("atoms carry exactly the jump") {
    CdfSpec dirac = CdfSpec::point_mass(Rat(0));
    CHECK(measure_set(dirac, IntervalSet::single(Interval::point(XReal(0)))).xval == XReal(1));
    CHECK(measure_set(dirac, IntervalSet::single(iv("0", "1", false, true))).xval == XReal(0));
    CHECK(measure_set(dirac, IntervalSet::single(iv("-1", "0", false, true))).xval == XReal(1));
  }
  SECTION("finite point sets are Lebesgue-null") {
    IntervalSet pts = IntervalSet::of({Interval::point(XReal(0)), Interval::point(XReal(Rat(1, 3))),
                                       Interval::point(XReal(5))});
    CHECK(measure_set(leb, pts).xval == XReal(0));
  }
  SECTION("open/closed endpoints against jumps") {
    CdfSpec mixed({Rat(1)}, {Rat(5)}, {DensityPiece(XReal(0), XReal(2), Expoly::constant(Rat(1)))});
    CHECK(measure_set(mixed, IntervalSet::single(iv("0", "1", false, false))).xval == XReal(1));
    CHECK(measure_set(mixed, IntervalSet::single(iv("0", "1", false, true))).xval == XReal(6));
    CHECK(measure_set(mixed, IntervalSet::single(iv("1", "2", true, true))).xval == XReal(6));
    CHECK(measure_set(mixed, IntervalSet::single(iv("1", "2", false, true))).xval == XReal(1));
  }
  SECTION("whole line under Lebesgue is infinite") {
    CHECK(measure_set(leb, IntervalSet::whole_line()).xval == inf);
  }
}

TEST_CASE("cdf classification") {
  CHECK(measure_set(CdfSpec::lebesgue(), IntervalSet::whole_line()).xval == inf);
  CHECK(CdfSpec::exponential(Rat(2)).total_mass().xval == XReal(1));
  CHECK(is_distribution_function(CdfSpec::exponential(Rat(2))));
  CHECK(is_distribution_function(uniform01()));
  CHECK(is_distribution_function(bernoulli_half()));
  CHECK_FALSE(is_distribution_function(CdfSpec::lebesgue()));
  CdfSpec bounded({}, {}, {DensityPiece(XReal(0), XReal(4), Expoly::constant(Rat(1, 2)))});
  CHECK(bounded.total_mass().xval == XReal(2));
}

TEST_CASE("outer_measure") {
  Premeasure leb{CdfSpec::lebesgue(), false};
  CHECK(outer_measure(leb, IntervalSet::single(iv("0", "1", false, true))).xval == XReal(1));
  CHECK(outer_measure(leb, IntervalSet::of({Interval::point(XReal(0)), iv("0", "1", false, true)}))
            .xval == XReal(1));
  CHECK(outer_measure(leb, IntervalSet::empty()).xval == XReal(0));

  SECTION("monotone and subadditive on a random battery") {
    std::uint64_t s = 99;
    auto next_rat = [&] {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      return Rat(BigInt((s >> 33) % 17) - 8, BigInt((s >> 29 & 3) + 1));
    };
    for (int rep = 0; rep < 120; ++rep) {
      Rat a = next_rat(), b = next_rat(), c = next_rat(), d = next_rat();
      IntervalSet s1 = IntervalSet::of({Interval(XReal(std::min(a, b)), XReal(std::max(a, b) + 1),
                                                 (s >> 5) & 1, (s >> 6) & 1)});
      IntervalSet s2 = IntervalSet::of({Interval(XReal(std::min(c, d)), XReal(std::max(c, d) + 1),
                                                 (s >> 7) & 1, (s >> 8) & 1)});
      XReal m1 = outer_measure(leb, s1).xval;
      XReal m2 = outer_measure(leb, s2).xval;
      XReal mu = outer_measure(leb, unite(s1, s2)).xval;
      REQUIRE(mu <= m1 + m2);                                   // subadditive
      REQUIRE(m1 <= mu);                                        // monotone
      REQUIRE(outer_measure(leb, intersect(s1, s2)).xval <= measurekit::min(m1, m2));
      REQUIRE(measure_set(leb.cdf, s1).xval == m1);  // agrees with the measure
    }
  }
}

TEST_CASE("caratheodory_measurable") {
  Premeasure leb{CdfSpec::lebesgue(), false};
  std::vector<IntervalSet> tests = {
      IntervalSet::single(iv("0", "2", false, true)),
      IntervalSet::single(iv("1/2", "3/2", false, true)),
      IntervalSet::of({iv("-1", "1/3", false, true), iv("1/2", "4", false, true)}),
      IntervalSet::empty(),
  };
  SECTION("half-open splitter") {
    CaratheodoryReport rep =
        caratheodory_measurable(leb, IntervalSet::single(iv("0", "1", false, true)), tests);
    CHECK(rep.all_passed());
    CHECK(rep.cases[0].inside.xval == XReal(1));
    CHECK(rep.cases[0].outside.xval == XReal(1));
    CHECK(rep.cases[1].inside.xval == XReal(Rat(1, 2)));
    CHECK(rep.cases[1].outside.xval == XReal(Rat(1, 2)));
  }
  SECTION("empty splitter always passes") {
    CHECK(caratheodory_measurable(leb, IntervalSet::empty(), tests).all_passed());
  }
  SECTION("splitting against a measure with atoms") {
    Premeasure mixed{CdfSpec({Rat(1, 2)}, {Rat(3)},
                             {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(2)))}),
                     false};
    CHECK(caratheodory_measurable(mixed, IntervalSet::single(iv("0", "1/2", false, true)), tests)
              .all_passed());
    CHECK(caratheodory_measurable(mixed, IntervalSet::single(iv("1/2", "1", true, false)), tests)
              .all_passed());
  }
}

TEST_CASE("compact_regularity_check") {
  SECTION("endpoint shrink under Lebesgue") {
    Premeasure leb{CdfSpec::lebesgue(), false};
    RegularityReport rep = compact_regularity_check(
        leb, {IntervalSet::single(iv("0", "1", false, true))}, Rat(1, 10));
    REQUIRE(rep.all_ok());
    const auto& w = rep.witnesses[0];
    REQUIRE(w.shrunk.has_value());
    CHECK(w.shrunk->lo > XReal(0));
    CHECK(w.shrunk->hi == XReal(1));
    CHECK(w.deficit.xval <= XReal(Rat(1, 10)));
  }
  SECTION("empty sample is vacuous") {
    Premeasure leb{CdfSpec::lebesgue(), false};
    CHECK(compact_regularity_check(leb, {IntervalSet::empty()}, Rat(1, 10)).all_ok());
  }
  SECTION("a left-attached jump defeats the construction") {
    // nu((a, a'] ) always contains the jump at a: not right-continuous.
    Premeasure bad{CdfSpec({Rat(0)}, {Rat(1, 2)},
                           {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1, 2)))}),
                   true};
    RegularityReport rep = compact_regularity_check(
        bad, {IntervalSet::single(iv("0", "1", false, true))}, Rat(1, 10), 24);
    CHECK_FALSE(rep.all_ok());
    // The honest version of the same measure passes.
    Premeasure good = bad;
    good.jumps_on_left = false;
    CHECK(compact_regularity_check(good, {IntervalSet::single(iv("0", "1", false, true))},
                                   Rat(1, 10))
              .all_ok());
  }
}

TEST_CASE("quantile") {
  SECTION("uniform on [0,1] inverts to the identity") {
    QuantileResult q = quantile(uniform01(), Rat(1, 3));
    REQUIRE(q.value.exact);
    CHECK(q.value.xval == XReal(Rat(1, 3)));
  }
  SECTION("plateaus resolve by the strict inequality") {
    CdfSpec b = bernoulli_half();
    CHECK(quantile(b, Rat(1, 4)).value.xval == XReal(0));
    CHECK(quantile(b, Rat(3, 4)).value.xval == XReal(1));
    CHECK(quantile(b, Rat(1, 2)).value.xval == XReal(1));  // F(v) > 1/2 first at v = 1
  }
  SECTION("polynomial density solves exactly") {
    CdfSpec tri({}, {}, {DensityPiece(XReal(0), XReal(1), Expoly(Poly({Rat(0), Rat(2)})))});
    QuantileResult q = quantile(tri, Rat(1, 4));
    REQUIRE(q.value.exact);
    CHECK(q.value.xval == XReal(Rat(1, 2)));
    CHECK(quantile(tri, Rat(9, 16)).value.xval == XReal(Rat(3, 4)));
  }
  SECTION("numeric layer bisects to double precision") {
    CdfSpec e2 = CdfSpec::exponential(Rat(2));
    QuantileResult q = quantile(e2, Rat(1, 2));
    CHECK_FALSE(q.value.exact);
    CHECK(std::abs(q.value.approx - std::log(2.0) / 2.0) < 1e-10);
  }
  SECTION("Galois property on a rational grid") {
    for (const CdfSpec& f : {uniform01(), bernoulli_half(),
                             CdfSpec({Rat(0)}, {Rat(1, 2)},
                                     {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1, 2)))},
                                     Rat(1, 2))}) {
      for (int un = 1; un < 16; ++un) {
        Rat u(un, 16);
        XReal qv = quantile(f, u).value.xval;
        for (int xn = -4; xn <= 20; ++xn) {
          Rat x(xn, 8);
          XReal fx = f.mass_up_to(Boundary{XReal(x), +1}).xval;
          if (XReal(u) < fx) REQUIRE(qv <= XReal(x));
          if (qv <= XReal(x)) REQUIRE(XReal(u) <= fx);
        }
      }
    }
  }
  SECTION("non-distribution functions are rejected") {
    CHECK_THROWS_AS(quantile(CdfSpec::lebesgue(), Rat(1, 2)), precondition_error);
    CHECK_THROWS_AS(quantile(uniform01(), Rat(3, 2)), precondition_error);
  }
}

TEST_CASE("quantile_pushforward_check") {
  SECTION("uniform") {
    QuantileCouplingReport r = quantile_pushforward_check(uniform01());
    CHECK((r.exact && r.structural_equal && r.battery_equal));
  }
  SECTION("pure jumps") {
    QuantileCouplingReport r = quantile_pushforward_check(bernoulli_half());
    CHECK((r.exact && r.structural_equal && r.battery_equal));
  }
  SECTION("mixed jump and density") {
    CdfSpec mixed({Rat(0)}, {Rat(1, 2)},
                  {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1, 2)))}, Rat(1, 2));
    QuantileCouplingReport r = quantile_pushforward_check(mixed);
    CHECK((r.exact && r.structural_equal && r.battery_equal));
  }
  SECTION("expression pieces are rejected") {
    CHECK_THROWS_AS(quantile_pushforward_check(CdfSpec::exponential(Rat(1))),
                    precondition_error);
  }
}

TEST_CASE("integrate_stieltjes") {
  SECTION("x^2 over [0,1] against the antiderivative") {
    PiecewiseExpoly f = PiecewiseExpoly::polynomial(iv("0", "1", true, true),
                                                    Poly({Rat(0), Rat(0), Rat(1)}));
    RealValue v = integrate_stieltjes(f, CdfSpec::lebesgue());
    REQUIRE(v.exact);
    CHECK(v.xval == XReal(Rat(1, 3)));
    // Darboux bracket oracle: monotone integrand on [0,1].
    int n = 256;
    Rat lower(0), upper(0);
    for (int k = 0; k < n; ++k) {
      Rat l(k, n), r(k + 1, n);
      lower += l * l / Rat(n);
      upper += r * r / Rat(n);
    }
    CHECK(XReal(lower) <= v.xval);
    CHECK(v.xval <= XReal(upper));
  }
  SECTION("point mass evaluates the integrand") {
    PiecewiseExpoly f = PiecewiseExpoly::polynomial(iv("-10", "10", true, true),
                                                    Poly({Rat(1), Rat(3)}));  // 1 + 3x
    CHECK(integrate_stieltjes(f, CdfSpec::point_mass(Rat(2))).xval == XReal(7));
  }
  SECTION("exponential Laplace transform") {
    auto laplace = [](const Rat& lambda, const Rat& mu) {
      PiecewiseExpoly f = PiecewiseExpoly::mono(
          Interval(XReal(0), XReal::pos_inf(), false, false),
          Expoly(Poly::constant(Rat(1)), Rat(-mu)));
      return integrate_stieltjes(f, CdfSpec::exponential(lambda));
    };
    RealValue a = laplace(Rat(2), Rat(1));
    CHECK(std::abs(a.approx - 2.0 / 3.0) < 1e-8);
    RealValue b = laplace(Rat(1), Rat(3));
    CHECK(std::abs(b.approx - 1.0 / 4.0) < 1e-8);
    // Independent quadrature oracle on a truncated domain; the tail of
    // lambda * exp(-(lambda+mu)x) beyond T is bounded by exp(-(l+m)T).
    double oracle = adaptive_simpson([](double x) { return 2 * std::exp(-3 * x) ; }, 0.0, 20.0,
                                     1e-12);
    CHECK(std::abs(a.approx - oracle) < 1e-9);
  }
  SECTION("piecewise integrand against a mixed measure") {
    CdfSpec mixed({Rat(1, 2)}, {Rat(2)},
                  {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(3)))}, Rat(0));
    PiecewiseExpoly f;
    f.pieces.emplace_back(iv("0", "1/2", false, true), Expoly(Poly({Rat(0), Rat(1)})));  // x
    f.pieces.emplace_back(iv("1/2", "1", false, false), Expoly::constant(Rat(5)));
    // jumps: f(1/2) = 1/2 weighted 2; densities: 3 * (int_0^{1/2} x + int_{1/2}^1 5)
    RealValue v = integrate_stieltjes(f, mixed);
    REQUIRE(v.exact);
    CHECK(v.xval == XReal(Rat(1) + Rat(3) * (Rat(1, 8) + Rat(5, 2))));
  }
}

TEST_CASE("pushforward_monotone") {
  CdfSpec u01 = uniform01();
  SECTION("doubling halves the density") {
    CdfSpec img = pushforward_monotone(u01, PiecewiseLinearMap::affine(Rat(2), Rat(0)));
    CHECK(measure_set(img, IntervalSet::single(iv("0", "2", false, true))).xval == XReal(1));
    CHECK(measure_set(img, IntervalSet::single(iv("0", "1", false, true))).xval ==
          XReal(Rat(1, 2)));
    REQUIRE(img.pieces().size() >= 1);
    CHECK(img.pieces()[0].density == Expoly::constant(Rat(1, 2)));
  }
  SECTION("identity is a no-op on measures") {
    CdfSpec img = pushforward_monotone(u01, PiecewiseLinearMap::identity());
    for (int a = -2; a <= 2; ++a)
      for (int b = a + 1; b <= 3; ++b)
        CHECK(measure_set(img, IntervalSet::single(iv(std::to_string(a).c_str(),
                                                      std::to_string(b).c_str(), false, true)))
                  .xval ==
              measure_set(u01, IntervalSet::single(
                                   iv(std::to_string(a).c_str(), std::to_string(b).c_str(),
                                      false, true)))
                  .xval);
  }
  SECTION("a shift translates jumps and pieces") {
    CdfSpec spec({Rat(0)}, {Rat(1, 2)},
                 {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1, 2)))}, Rat(1, 2));
    CdfSpec img = pushforward_monotone(spec, PiecewiseLinearMap::affine(Rat(1), Rat(1)));
    CHECK(img.jump_points() == std::vector<Rat>{Rat(1)});
    CHECK(measure_set(img, IntervalSet::single(iv("1", "2", true, false))).xval == XReal(1));
  }
  SECTION("piecewise map with a kink, checked against hand integration") {
    // G(x) = x on x <= 1/2, 3x - 1 past it: image density 1 then 1/3.
    PiecewiseLinearMap g({Rat(0), Rat(1, 2)}, {Rat(0), Rat(1, 2)}, Rat(1), Rat(3));
    CdfSpec img = pushforward_monotone(u01, g);
    CHECK(measure_set(img, IntervalSet::single(iv("0", "1/2", false, true))).xval ==
          XReal(Rat(1, 2)));
    CHECK(measure_set(img, IntervalSet::single(iv("1/2", "2", false, true))).xval ==
          XReal(Rat(1, 2)));
    CHECK(measure_set(img, IntervalSet::single(iv("1/2", "5/4", false, true))).xval ==
          XReal(Rat(1, 4)));
  }
  SECTION("polynomial densities transport exactly") {
    CdfSpec tri({}, {}, {DensityPiece(XReal(0), XReal(1), Expoly(Poly({Rat(0), Rat(2)})))});
    CdfSpec img = pushforward_monotone(tri, PiecewiseLinearMap::affine(Rat(2), Rat(1)));
    // y = 2x + 1 maps (0,1) to (1,3); density (y-1)/2 * 1/2.
    CHECK(measure_set(img, IntervalSet::single(iv("1", "3", false, false))).xval == XReal(1));
    CHECK(measure_set(img, IntervalSet::single(iv("1", "2", false, true))).xval ==
          XReal(Rat(1, 4)));
  }
}

TEST_CASE("Lebesgue-Stieltjes uniqueness embodiment") {
  // Two different specifications with identical increments on half-open
  // intervals must agree on every interval set.
  CdfSpec one({}, {}, {DensityPiece(XReal(0), XReal(2), Expoly::constant(Rat(1)))});
  CdfSpec two({}, {},
              {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1))),
               DensityPiece(XReal(1), XReal(2), Expoly::constant(Rat(1)))});
  // (Splitting at 1 leaves the point {1} with zero density either way.)
  std::vector<IntervalSet> battery = {
      IntervalSet::single(iv("0", "2", false, true)),
      IntervalSet::single(iv("1/3", "5/3", true, false)),
      IntervalSet::of({Interval::point(XReal(1)), iv("3/2", "7", false, true)}),
      IntervalSet::of({iv("-1", "1/2", false, false), iv("1", "3/2", true, true)}),
  };
  for (const auto& s : battery)
    CHECK(measure_set(one, s).xval == measure_set(two, s).xval);
}

TEST_CASE("continuous distribution pushes itself to the uniform law") {
  // For continuous strictly increasing F: mass{x : F(x) in (u1,u2]} = u2-u1.
  CdfSpec f({}, {},
            {DensityPiece(XReal(0), XReal(1), Expoly::constant(Rat(1, 2))),
             DensityPiece(XReal(1), XReal(2), Expoly::constant(Rat(1, 2)))});
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b <= 8; ++b) {
      Rat u1(a, 8), u2(b, 8);
      XReal x1 = u1.is_zero() ? XReal(0) : quantile(f, u1).value.xval;
      XReal x2 = u2 == Rat(1) ? XReal(2) : quantile(f, u2).value.xval;
      IntervalSet pre = IntervalSet::single(Interval(x1, x2, false, true));
      CHECK(measure_set(f, pre).xval == XReal(u2 - u1));
    }
}

TEST_CASE("simplest rational search") {
  CHECK(simplest_rational_in(Rat(1, 3), Rat(1, 2)) == Rat(1, 2));
  CHECK(simplest_rational_in(Rat(-3, 2), Rat(-4, 3)) == Rat(-3, 2));
  CHECK(simplest_rational_in(Rat(2), Rat(3)) == Rat(2));
  CHECK(simplest_rational_in(Rat(7, 15), Rat(8, 15)) == Rat(1, 2));
}
