#include "measurekit/product.hpp"

#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace measurekit;
using oracle::numbered_ground;

namespace {

const XReal inf = XReal::pos_inf();

struct Lcg {
  std::uint64_t s;
  std::uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  Rat small_nonneg() { return Rat(BigInt(below(9)), BigInt(below(4) + 1)); }
  XReal fn_value() {
    if (below(8) == 0) return below(2) ? inf : XReal::neg_inf();
    return XReal(Rat(BigInt(static_cast<long long>(below(17)) - 8), BigInt(below(4) + 1)));
  }
};

MeasureTable random_finite_measure(Lcg& rng, const SigmaField& space) {
  std::vector<XReal> w(space.atom_count());
  for (auto& x : w) x = XReal(rng.small_nonneg());
  return MeasureTable(space, std::move(w));
}

MeasureTable random_probability(Lcg& rng, const SigmaField& space) {
  std::vector<XReal> w(space.atom_count());
  XReal total(0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = XReal(rng.small_nonneg() + (j + 1 == w.size() && total == XReal(0) ? 1 : 0));
    total += w[j];
  }
  for (auto& x : w) x = x / total;
  return MeasureTable(space, std::move(w));
}

}  // namespace

TEST_CASE("product_measure") {
  GroundSet g2 = numbered_ground(2);

  SECTION("uniform x uniform = uniform on pairs") {
    MeasureTable u = MeasureTable::uniform(g2);
    MeasureTable prod = product_measure(u, u);
    CHECK(prod.space().atom_count() == 4);
    for (std::size_t j = 0; j < 4; ++j) CHECK(prod.weight(j) == XReal(Rat(1, 4)));
    CHECK(classify(prod).probability);
  }
  SECTION("a point mass embeds the other factor on a slice") {
    MeasureTable d = MeasureTable::dirac(g2, 0);
    MeasureTable mu(SigmaField::discrete(g2), {XReal(Rat(1, 3)), XReal(Rat(2, 3))});
    MeasureTable prod = product_measure(d, mu);
    const GroundSet& pg = prod.space().ground();
    CHECK(evaluate(prod, pg.subset({"(1,1)"})) == XReal(Rat(1, 3)));
    CHECK(evaluate(prod, pg.subset({"(1,2)"})) == XReal(Rat(2, 3)));
    CHECK(evaluate(prod, pg.subset({"(2,1)", "(2,2)"})) == XReal(0));
  }
  SECTION("masses multiply") {
    Lcg rng{7};
    for (int rep = 0; rep < 50; ++rep) {
      MeasureTable a = random_finite_measure(rng, SigmaField::discrete(numbered_ground(3)));
      MeasureTable b = random_finite_measure(rng, SigmaField::discrete(numbered_ground(2)));
      CHECK(classify(product_measure(a, b)).mass == classify(a).mass * classify(b).mass);
    }
  }
  SECTION("marginals of a product recover the factors") {
    Lcg rng{8};
    for (int rep = 0; rep < 50; ++rep) {
      SigmaField d3 = SigmaField::discrete(numbered_ground(3));
      SigmaField d2 = SigmaField::discrete(numbered_ground(2));
      MeasureTable a = random_probability(rng, d3);
      MeasureTable b = random_probability(rng, d2);
      ProductSpace prod = ProductSpace::of(d3, d2);
      MeasureTable pm = product_measure(a, b, prod);
      CHECK(pushforward_measure(prod.first, pm, d3) == a);
      CHECK(pushforward_measure(prod.second, pm, d2) == b);
    }
  }
  SECTION("sigma-finiteness is required") {
    MeasureTable bad(SigmaField::discrete(g2), {inf, XReal(1)});
    CHECK_THROWS_AS(product_measure(bad, MeasureTable::uniform(g2)), precondition_error);
  }
}

TEST_CASE("fubini_check") {
  GroundSet g2 = numbered_ground(2);
  SigmaField d2 = SigmaField::discrete(g2);
  ProductSpace prod = ProductSpace::of(d2, d2);
  MeasureTable u = MeasureTable::uniform(g2);

  SECTION("f(x,y) = x + y against uniform x uniform") {
    // Atoms in pair order (1,1),(1,2),(2,1),(2,2); f = first + second.
    NumFn f(prod.space, {XReal(2), XReal(3), XReal(3), XReal(4)});
    FubiniReport r = fubini_check(f, u, u, prod);
    CHECK(r.premise_nonneg);
    CHECK(r.equal);
    CHECK(r.product_integral.value == XReal(3));
  }
  SECTION("constant 1 integrates to the product mass") {
    Lcg rng{12};
    MeasureTable a = random_finite_measure(rng, d2), b = random_finite_measure(rng, d2);
    FubiniReport r = fubini_check(NumFn::constant(prod.space, XReal(1)), a, b, prod);
    CHECK(r.equal);
    CHECK(r.product_integral.value == classify(a).mass * classify(b).mass);
  }
  SECTION("Tonelli branch with an infinite value") {
    NumFn f(prod.space, {inf, XReal(0), XReal(1), XReal(2)});
    FubiniReport r = fubini_check(f, u, u, prod);
    CHECK(r.premise_nonneg);
    CHECK(r.equal);
    CHECK(r.product_integral.value == inf);
  }
  SECTION("randomized instances with all three premises represented") {
    Lcg rng{314159};
    int seen_a = 0, seen_b = 0, seen_c = 0;
    for (int rep = 0; rep < 600; ++rep) {
      std::size_t n1 = 1 + rng.below(4), n2 = 1 + rng.below(4);
      SigmaField f1 = SigmaField::discrete(numbered_ground(n1));
      SigmaField f2 = SigmaField::discrete(numbered_ground(n2));
      ProductSpace ps = ProductSpace::of(f1, f2);
      MeasureTable mu = random_finite_measure(rng, f1);
      MeasureTable nu = random_finite_measure(rng, f2);
      int kind = static_cast<int>(rng.below(3));
      std::vector<XReal> v(ps.space.atom_count());
      for (auto& x : v) {
        x = rng.fn_value();
        if (kind == 0) x = x.abs();                         // aim for (a)
        if (kind == 1 && x.is_infinite()) x = XReal(3);     // aim for (b)
      }
      NumFn f(ps.space, v);
      FubiniReport r = fubini_check(f, mu, nu, ps);
      if (!r.any_premise) continue;
      seen_a += r.premise_nonneg;
      seen_b += r.premise_integrable;
      seen_c += r.premise_mixed && !r.premise_integrable && !r.premise_nonneg;
      REQUIRE(r.equal);
    }
    CHECK(seen_a > 50);
    CHECK(seen_b > 50);
    CHECK(seen_c > 0);
  }
}

TEST_CASE("is_independency") {
  GroundSet g4 = numbered_ground(4);
  SigmaField d4 = SigmaField::discrete(g4);
  MeasureTable u4 = MeasureTable::uniform(g4);

  SECTION("coordinate fields of a product law") {
    // {1,2,3,4} ~ {1,2} x {1,2}: first coordinate {1,2} vs {3,4}, second
    // {1,3} vs {2,4}.
    SetFamily c1(g4, {g4.subset({"1", "2"}), g4.subset({"3", "4"})});
    SetFamily c2(g4, {g4.subset({"1", "3"}), g4.subset({"2", "4"})});
    CHECK(is_independency(u4, {c1, c2}).independent);
  }
  SECTION("pairwise independent but not jointly: the xor triple") {
    SetFamily a(g4, {g4.subset({"1", "2"})});   // first bit
    SetFamily b(g4, {g4.subset({"1", "3"})});   // second bit
    SetFamily c(g4, {g4.subset({"1", "4"})});   // equal-bits event
    CHECK(is_independency(u4, {a, b}).independent);
    CHECK(is_independency(u4, {a, c}).independent);
    CHECK(is_independency(u4, {b, c}).independent);
    IndependencyReport r = is_independency(u4, {a, b, c});
    CHECK_FALSE(r.independent);
    REQUIRE(r.witness_sets.size() == 3);
    CHECK(r.joint == XReal(Rat(1, 4)));
    CHECK(r.product == XReal(Rat(1, 8)));
  }
  SECTION("anything is independent of the trivial field") {
    SetFamily triv(g4, {g4.empty_set(), g4.full_set()});
    SetFamily any(g4, {g4.subset({"1"}), g4.subset({"2", "3"})});
    CHECK(is_independency(u4, {any, triv}).independent);
  }
}

TEST_CASE("raise_independence_check") {
  GroundSet g4 = numbered_ground(4);
  MeasureTable u4 = MeasureTable::uniform(g4);

  SECTION("coordinate generators raise to the coordinate fields") {
    SetFamily c1(g4, {g4.subset({"1", "2"})});
    SetFamily c2(g4, {g4.subset({"1", "3"})});
    RaisingReport r = raise_independence_check(u4, {c1, c2});
    CHECK(r.all_pi);
    CHECK(r.families_report.independent);
    CHECK(r.generated_report.independent);
    CHECK(r.implication_holds);
  }
  SECTION("non-pi-system family: premise fails and the conclusion genuinely fails") {
    SetFamily f1(g4, {g4.subset({"1", "2"})});
    SetFamily f2(g4, {g4.subset({"2", "3"}), g4.subset({"2", "4"})});
    CHECK_FALSE(is_pi_system(f2));
    RaisingReport r = raise_independence_check(u4, {f1, f2});
    CHECK_FALSE(r.all_pi);
    CHECK(r.families_report.independent);          // the families do satisfy the product rule
    CHECK_FALSE(r.generated_report.independent);   // but the generated fields do not
    CHECK(r.implication_holds);                    // the theorem's premise failed
  }
  SECTION("a single family is vacuously an independency") {
    SetFamily f(g4, {g4.subset({"1"})});
    RaisingReport r = raise_independence_check(u4, {f});
    CHECK((r.all_pi && r.families_report.independent && r.generated_report.independent));
  }
}

TEST_CASE("joint_vs_product_check") {
  GroundSet g4 = numbered_ground(4);
  MeasureTable u4 = MeasureTable::uniform(g4);
  GroundSet bits({"0", "1"});

  SECTION("coordinates of a product law agree both ways") {
    MeasurableMap x(g4, bits, {0, 0, 1, 1});
    MeasurableMap y(g4, bits, {0, 1, 0, 1});
    JointVsProductReport r = joint_vs_product_check(x, y, u4);
    CHECK(r.sigma_fields_independent);
    CHECK(r.joint_equals_product);
    CHECK(r.equivalence_holds);
  }
  SECTION("a nonconstant map is not independent of itself") {
    MeasurableMap x(g4, bits, {0, 0, 1, 1});
    JointVsProductReport r = joint_vs_product_check(x, x, u4);
    CHECK_FALSE(r.sigma_fields_independent);
    CHECK_FALSE(r.joint_equals_product);
    CHECK(r.equivalence_holds);
  }
  SECTION("the equivalence never fails on randomized instances") {
    Lcg rng{2025};
    GroundSet cod3 = numbered_ground(3);
    for (int rep = 0; rep < 500; ++rep) {
      std::size_t n = 2 + rng.below(3);
      GroundSet g = numbered_ground(n);
      MeasureTable p = random_probability(rng, SigmaField::discrete(g));
      std::vector<std::size_t> gx(n), gy(n);
      for (auto& v : gx) v = rng.below(2);
      for (auto& v : gy) v = rng.below(3);
      MeasurableMap x(g, bits, gx);
      MeasurableMap y(g, cod3, gy);
      REQUIRE(joint_vs_product_check(x, y, p).equivalence_holds);
    }
  }
}

TEST_CASE("joint measurability is coordinatewise measurability") {
  Lcg rng{606};
  GroundSet g = numbered_ground(5);
  GroundSet c1 = numbered_ground(2), c2 = numbered_ground(3);
  ProductSpace prod = ProductSpace::of(SigmaField::discrete(c1), SigmaField::discrete(c2));
  for (int rep = 0; rep < 150; ++rep) {
    // Random domain field and random coordinate maps.
    std::vector<Subset> gens;
    for (int k = 0; k < 2; ++k) {
      Subset s(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        if (rng.below(2)) s.set(i);
      gens.push_back(s);
    }
    SigmaField dom = generate_sigma_field(g, gens);
    std::vector<std::size_t> gf(g.size()), gs(g.size());
    for (auto& v : gf) v = rng.below(2);
    for (auto& v : gs) v = rng.below(3);
    MeasurableMap f(g, c1, gf), s(g, c2, gs);
    std::vector<std::size_t> joint(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) joint[i] = gf[i] * 3 + gs[i];
    MeasurableMap pair(g, prod.space.ground(), joint);
    bool each = is_measurable(f, dom, SigmaField::discrete(c1)) &&
                is_measurable(s, dom, SigmaField::discrete(c2));
    bool jointly = is_measurable(pair, dom, prod.space);
    REQUIRE(each == jointly);
  }
}

TEST_CASE("sub-collections of an independency are independencies") {
  Lcg rng{707};
  GroundSet g8 = numbered_ground(8);
  // Three-fold product structure on 8 = 2*2*2 points.
  SetFamily c1(g8, {g8.subset({"1", "2", "3", "4"})});
  SetFamily c2(g8, {g8.subset({"1", "2", "5", "6"})});
  SetFamily c3(g8, {g8.subset({"1", "3", "5", "7"})});
  MeasureTable u8 = MeasureTable::uniform(g8);
  REQUIRE(is_independency(u8, {c1, c2, c3}).independent);
  CHECK(is_independency(u8, {c1, c2}).independent);
  CHECK(is_independency(u8, {c1, c3}).independent);
  CHECK(is_independency(u8, {c2, c3}).independent);
  CHECK(is_independency(u8, {c2}).independent);
}

TEST_CASE("density factorization on grids characterizes independence") {
  // Joint laws on a grid given by densities against reference weights:
  // independence of the coordinates iff the joint density factorizes a.e.
  Lcg rng{808};
  GroundSet xs = numbered_ground(2), ys = numbered_ground(3);
  ProductSpace prod = ProductSpace::of(SigmaField::discrete(xs), SigmaField::discrete(ys));
  for (int rep = 0; rep < 200; ++rep) {
    // Reference weights and a random joint density, normalized.
    std::vector<Rat> ff(2), ee(3);
    for (auto& v : ff) v = Rat(BigInt(rng.below(3) + 1), 2);
    for (auto& v : ee) v = Rat(BigInt(rng.below(3) + 1), 2);
    std::vector<Rat> dens(6);
    Rat total(0);
    for (std::size_t i = 0; i < 6; ++i) {
      dens[i] = Rat(BigInt(rng.below(4)), 1);
      total += dens[i] * ff[i / 3] * ee[i % 3];
    }
    if (total.is_zero()) continue;
    for (auto& d : dens) d /= total;
    // The joint law as a measure on the product space.
    std::vector<XReal> w(6);
    for (std::size_t i = 0; i < 6; ++i) w[i] = XReal(dens[i] * ff[i / 3] * ee[i % 3]);
    MeasureTable joint(prod.space, w);
    // Marginal densities against ff and ee.
    std::vector<Rat> fx(2, Rat(0)), fy(3, Rat(0));
    for (std::size_t i = 0; i < 6; ++i) {
      fx[i / 3] += dens[i] * ee[i % 3];
      fy[i % 3] += dens[i] * ff[i / 3];
    }
    // Factorization a.e. w.r.t. the reference grid weights (all positive).
    bool factorizes = true;
    for (std::size_t i = 0; i < 6; ++i)
      if (dens[i] != fx[i / 3] * fy[i % 3]) factorizes = false;
    bool independent =
        is_independency(joint, {pullback_sigma(prod.first, SigmaField::discrete(xs)).member_family(),
                                pullback_sigma(prod.second, SigmaField::discrete(ys)).member_family()})
            .independent;
    REQUIRE(factorizes == independent);
  }
}

TEST_CASE("kolmogorov_consistency") {
  GroundSet state({"0", "1"});

  SECTION("marginals of a single product law are consistent") {
    // Universe {a, b}: laws for {a}, {b}, {a,b} from an i.i.d. biased coin.
    Rat p(1, 3);
    MeasureTable one(SigmaField::discrete(tuple_ground(state, 1)),
                     {XReal(Rat(1) - p), XReal(p)});
    MeasureTable two(SigmaField::discrete(tuple_ground(state, 2)),
                     {XReal((Rat(1) - p) * (Rat(1) - p)), XReal((Rat(1) - p) * p),
                      XReal(p * (Rat(1) - p)), XReal(p * p)});
    MarginalFamily fam{state, {"a", "b"}, {{{0}, one}, {{1}, one}, {{0, 1}, two}}};
    ConsistencyReport r = kolmogorov_consistency(fam);
    CHECK(r.consistent);
    CHECK(r.pairs_checked == 2);
  }
  SECTION("a perturbed marginal is caught with a witness") {
    MeasureTable one(SigmaField::discrete(tuple_ground(state, 1)),
                     {XReal(Rat(1, 2)), XReal(Rat(1, 2))});
    MeasureTable skew(SigmaField::discrete(tuple_ground(state, 1)),
                      {XReal(Rat(1, 4)), XReal(Rat(3, 4))});
    MeasureTable two(SigmaField::discrete(tuple_ground(state, 2)),
                     {XReal(Rat(1, 4)), XReal(Rat(1, 4)), XReal(Rat(1, 4)), XReal(Rat(1, 4))});
    MarginalFamily fam{state, {"a", "b"}, {{{0}, skew}, {{1}, one}, {{0, 1}, two}}};
    ConsistencyReport r = kolmogorov_consistency(fam);
    CHECK_FALSE(r.consistent);
    REQUIRE(r.violation.has_value());
    CHECK(r.violation->sub == std::vector<std::size_t>{0});
    CHECK(r.violation->super == std::vector<std::size_t>{0, 1});
  }
  SECTION("projections compose: three-coordinate family") {
    // i.i.d. fair bits on {a,b,c}; all seven nonempty subsets present.
    MarginalFamily fam{state, {"a", "b", "c"}, {}};
    for (std::size_t mask = 1; mask < 8; ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < 3; ++i)
        if (mask >> i & 1) idx.push_back(i);
      GroundSet tg = tuple_ground(state, idx.size());
      fam.laws.emplace_back(idx, MeasureTable::uniform(tg));
    }
    ConsistencyReport r = kolmogorov_consistency(fam);
    CHECK(r.consistent);
    CHECK(r.pairs_checked == 12);  // strict pairs F < G among the 7 subsets
  }
}

TEST_CASE("binary_tree_law") {
  SECTION("level 0 is a single uniform sign") {
    TreeLaw t0 = binary_tree_law(0);
    CHECK(t0.law.space().ground().size() == 2);
    CHECK(classify(t0.law).probability);
    CHECK(evaluate(t0.law, t0.law.space().ground().subset({"+"})) == XReal(Rat(1, 2)));
  }
  SECTION("level 1: root is the product of two uniform leaves") {
    TreeLaw t1 = binary_tree_law(1);
    const GroundSet& g = t1.law.space().ground();
    CHECK(g.size() == 8);  // {-1,1}^{r, r0, r1}
    // Carrier: root = product of leaves; four assignments, each mass 1/4.
    XReal quarter(Rat(1, 4));
    CHECK(evaluate(t1.law, g.subset({"+++"})) == quarter);
    CHECK(evaluate(t1.law, g.subset({"-+-"})) == quarter);
    CHECK(evaluate(t1.law, g.subset({"--+"})) == quarter);
    CHECK(evaluate(t1.law, g.subset({"+--"})) == quarter);
    // Root marginal is uniform.
    Subset root_plus(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.label(i)[0] == '+') root_plus.set(i);
    CHECK(evaluate(t1.law, root_plus) == XReal(Rat(1, 2)));
  }
  SECTION("restriction of level n+1 reproduces level n exactly") {
    for (unsigned n = 0; n <= 1; ++n) {
      TreeLaw fine = binary_tree_law(n + 1);
      TreeLaw coarse = binary_tree_law(n);
      MeasurableMap pr = tree_restriction(fine, n);
      MeasureTable pushed = pushforward_measure(pr, fine.law, coarse.law.space());
      REQUIRE(pushed == coarse.law);
    }
  }
  SECTION("level 3 uses the carrier representation and still projects") {
    TreeLaw t3 = binary_tree_law(3);
    CHECK(t3.law.space().ground().size() == 256);
    MeasurableMap pr = tree_restriction(t3, 2);
    MeasureTable pushed = pushforward_measure(pr, t3.law, binary_tree_law(2).law.space());
    CHECK(pushed == binary_tree_law(2).law);
  }
  SECTION("the cap rejects oversized levels") {
    CHECK_THROWS_AS(binary_tree_law(5), precondition_error);
  }
}

TEST_CASE("coordinate samplers") {
  CoordinateSampler s;
  s.cycle = {FactorLaw::fair_bit()};
  s.seed = 42;

  SECTION("determinism: identical spec, identical output") {
    CoordinateSampler s2 = s;
    auto a = sample_coordinates(s, 6, 5);
    auto b = sample_coordinates(s2, 6, 5);
    CHECK(a == b);
    CoordinateSampler other = s;
    other.seed = 43;
    CHECK(sample_coordinates(other, 6, 5) != a);
  }
  SECTION("k = 1 dyadic output takes values 0 and 1/2 with probability 1/2") {
    auto law = coin_to_uniform_exact_law(s, 1);
    REQUIRE(law.size() == 2);
    CHECK(law.at(Rat(0)) == Rat(1, 2));
    CHECK(law.at(Rat(1, 2)) == Rat(1, 2));
  }
  SECTION("k = 3 exact output law is uniform on {0,...,7}/8") {
    auto law = coin_to_uniform_exact_law(s, 3);
    REQUIRE(law.size() == 8);
    for (int j = 0; j < 8; ++j) CHECK(law.at(Rat(j, 8)) == Rat(1, 8));
  }
  SECTION("biased bits give the corresponding non-uniform law") {
    CoordinateSampler biased;
    biased.cycle = {FactorLaw{{"0", "1"}, {Rat(1, 4), Rat(3, 4)}}};
    auto law = coin_to_uniform_exact_law(biased, 2);
    CHECK(law.at(Rat(0)) == Rat(1, 16));
    CHECK(law.at(Rat(3, 4)) == Rat(9, 16));
  }
  SECTION("prefix laws apply positionally") {
    CoordinateSampler mixed;
    mixed.prefix = {FactorLaw{{"0", "1"}, {Rat(1), Rat(0)}}};  // first bit always 0
    mixed.cycle = {FactorLaw::fair_bit()};
    auto law = coin_to_uniform_exact_law(mixed, 2);
    CHECK(law.at(Rat(0)) == Rat(1, 2));
    CHECK(law.at(Rat(1, 4)) == Rat(1, 2));
  }
}
