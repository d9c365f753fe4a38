// Product structures and independence: finite products with Tonelli-Fubini,
// independency checking and raising from pi-systems, marginal consistency,
// the dyadic-tree laws, and coordinate samplers for countable products.

#pragma once

#include "measurekit/integrate.hpp"
#include "measurekit/rng.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace measurekit {

// Tuple ground set: one element per pair, labeled "(a,b)".
inline GroundSet product_ground(const GroundSet& a, const GroundSet& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  return GroundSet(std::move(labels));
}

// The product sigma-field with atoms = pairs of factor atoms, together with
// the coordinate projections.
struct ProductSpace {
  SigmaField space;
  MeasurableMap first;   // onto factor 1's ground set
  MeasurableMap second;  // onto factor 2's ground set
  SigmaField factor1, factor2;

  static ProductSpace of(const SigmaField& f1, const SigmaField& f2) {
    const GroundSet &g1 = f1.ground(), &g2 = f2.ground();
    GroundSet g = product_ground(g1, g2);
    std::vector<Subset> atoms;
    for (const auto& a1 : f1.atoms())
      for (const auto& a2 : f2.atoms()) {
        Subset s(g.size());
        for (std::size_t i = a1.find_first(); i != Subset::npos; i = a1.find_next(i))
          for (std::size_t j = a2.find_first(); j != Subset::npos; j = a2.find_next(j))
            s.set(i * g2.size() + j);
        atoms.push_back(std::move(s));
      }
    std::vector<std::size_t> pr1(g.size()), pr2(g.size());
    for (std::size_t i = 0; i < g1.size(); ++i)
      for (std::size_t j = 0; j < g2.size(); ++j) {
        pr1[i * g2.size() + j] = i;
        pr2[i * g2.size() + j] = j;
      }
    return ProductSpace{SigmaField(g, std::move(atoms)), MeasurableMap(g, g1, std::move(pr1)),
                        MeasurableMap(g, g2, std::move(pr2)), f1, f2};
  }
};

// Unique measure with nu(A x A') = mu(A) mu'(A'); both factors sigma-finite.
inline MeasureTable product_measure(const MeasureTable& mu, const MeasureTable& nu,
                                    const ProductSpace& prod) {
  if (!classify(mu).sigma_finite || !classify(nu).sigma_finite)
    throw precondition_error("product_measure: factors must be sigma-finite");
  if (mu.space() != prod.factor1 || nu.space() != prod.factor2)
    throw invalid_argument_error("product_measure: factors do not match the product space");
  std::vector<XReal> w;
  w.reserve(mu.space().atom_count() * nu.space().atom_count());
  for (std::size_t i = 0; i < mu.space().atom_count(); ++i)
    for (std::size_t j = 0; j < nu.space().atom_count(); ++j)
      w.push_back(mu.weight(i) * nu.weight(j));
  return MeasureTable(prod.space, std::move(w));
}

inline MeasureTable product_measure(const MeasureTable& mu, const MeasureTable& nu) {
  return product_measure(mu, nu, ProductSpace::of(mu.space(), nu.space()));
}

// --- Tonelli-Fubini ---------------------------------------------------------

struct FubiniReport {
  bool premise_nonneg = false;      // (a) f >= 0
  bool premise_integrable = false;  // (b) (mu x nu)[|f|] < inf
  bool premise_mixed = false;       // (c) min of the iterated integrals of f^- < inf
  bool any_premise = false;
  IntegralResult product_integral;
  XReal iterated_first_then_second;  // integrate over factor 1 inside, then factor 2
  XReal iterated_second_then_first;
  bool equal = false;
};

// Computes the product integral and both iterated integrals exactly and
// checks the three-way equality under whichever premise holds.
inline FubiniReport fubini_check(const NumFn& f, const MeasureTable& mu, const MeasureTable& nu,
                                 const ProductSpace& prod) {
  if (f.space() != prod.space)
    throw invalid_argument_error("fubini_check: f must live on the product space");
  FubiniReport rep;
  rep.premise_nonneg = f.nonnegative();

  MeasureTable pm = product_measure(mu, nu, prod);
  rep.product_integral = integrate(f, pm);
  rep.premise_integrable = integrate(f.abs(), pm).value.is_finite();

  const std::size_t n1 = mu.space().atom_count(), n2 = nu.space().atom_count();
  auto value_at = [&](std::size_t i, std::size_t j) {
    return f.at_atom(i * n2 + j);  // product atoms enumerate factor2 fastest
  };

  // Iterated integrals: integrate out one coordinate at a time, tracking
  // positive and negative parts with the convention arithmetic.
  auto iterate = [&](bool first_inner) {
    XReal outer_pos(0), outer_neg(0);
    const std::size_t outer_n = first_inner ? n2 : n1;
    const std::size_t inner_n = first_inner ? n1 : n2;
    const MeasureTable& outer_m = first_inner ? nu : mu;
    const MeasureTable& inner_m = first_inner ? mu : nu;
    for (std::size_t o = 0; o < outer_n; ++o) {
      XReal inner_pos(0), inner_neg(0);
      for (std::size_t i = 0; i < inner_n; ++i) {
        XReal v = first_inner ? value_at(i, o) : value_at(o, i);
        inner_pos += v.pos_part() * inner_m.weight(i);
        inner_neg += v.neg_part() * inner_m.weight(i);
      }
      XReal slice = inner_pos - inner_neg;  // convention 0 when both infinite
      outer_pos += slice.pos_part() * outer_m.weight(o);
      outer_neg += slice.neg_part() * outer_m.weight(o);
    }
    return outer_pos - outer_neg;
  };
  rep.iterated_first_then_second = iterate(/*first_inner=*/true);
  rep.iterated_second_then_first = iterate(/*first_inner=*/false);

  // Premise (c): iterated integrals of f^- in either order.
  auto iterated_neg = [&](bool first_inner) {
    XReal total(0);
    const std::size_t outer_n = first_inner ? n2 : n1;
    const std::size_t inner_n = first_inner ? n1 : n2;
    const MeasureTable& outer_m = first_inner ? nu : mu;
    const MeasureTable& inner_m = first_inner ? mu : nu;
    for (std::size_t o = 0; o < outer_n; ++o) {
      XReal inner(0);
      for (std::size_t i = 0; i < inner_n; ++i) {
        XReal v = first_inner ? value_at(i, o) : value_at(o, i);
        inner += v.neg_part() * inner_m.weight(i);
      }
      total += inner * outer_m.weight(o);
    }
    return total;
  };
  rep.premise_mixed = min(iterated_neg(true), iterated_neg(false)).is_finite();
  rep.any_premise = rep.premise_nonneg || rep.premise_integrable || rep.premise_mixed;

  rep.equal = rep.product_integral.value == rep.iterated_first_then_second &&
              rep.product_integral.value == rep.iterated_second_then_first;
  return rep;
}

// --- independence -----------------------------------------------------------

struct IndependencyReport {
  bool independent = true;
  // First violation found: indices of the families and the chosen members.
  std::vector<std::size_t> witness_families;
  std::vector<Subset> witness_sets;
  XReal joint, product;
};

// Checks P(intersection of C_i) = prod P(C_i) over every nonempty finite
// sub-collection and every choice of members.
inline IndependencyReport is_independency(const MeasureTable& p,
                                          const std::vector<SetFamily>& families) {
  if (!classify(p).probability)
    throw precondition_error("is_independency: P must be a probability");
  for (const auto& fam : families)
    for (const auto& s : fam.members)
      if (!p.space().is_measurable(s))
        throw measurability_error("is_independency: family member not measurable");

  IndependencyReport rep;
  const std::size_t k = families.size();
  if (k == 0) return rep;
  require_enumerable(k, "is_independency: number of families");
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    std::vector<std::size_t> idx;
    bool skip = false;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        idx.push_back(i);
        if (families[i].members.empty()) skip = true;  // no choices to make
      }
    if (skip) continue;
    // All member choices for this sub-collection, mixed-radix.
    std::vector<std::size_t> choice(idx.size(), 0);
    for (;;) {
      Subset inter = p.space().ground().full_set();
      XReal prod(1);
      for (std::size_t t = 0; t < idx.size(); ++t) {
        const Subset& c = families[idx[t]].members[choice[t]];
        inter &= c;
        prod *= evaluate(p, c);
      }
      XReal joint = evaluate(p, inter);
      if (joint != prod) {
        rep.independent = false;
        rep.witness_families = idx;
        rep.witness_sets.clear();
        for (std::size_t t = 0; t < idx.size(); ++t)
          rep.witness_sets.push_back(families[idx[t]].members[choice[t]]);
        rep.joint = joint;
        rep.product = prod;
        return rep;
      }
      std::size_t t = 0;
      while (t < idx.size()) {
        if (++choice[t] < families[idx[t]].members.size()) break;
        choice[t] = 0;
        ++t;
      }
      if (t == idx.size()) break;
    }
  }
  return rep;
}

struct RaisingReport {
  std::vector<bool> family_is_pi;
  bool all_pi = false;
  IndependencyReport families_report;
  IndependencyReport generated_report;
  // The theorem: pi-system independency implies generated independency.
  bool implication_holds = false;
};

inline RaisingReport raise_independence_check(const MeasureTable& p,
                                              const std::vector<SetFamily>& pi_families) {
  RaisingReport rep;
  rep.all_pi = true;
  for (const auto& fam : pi_families) {
    rep.family_is_pi.push_back(is_pi_system(fam));
    if (!rep.family_is_pi.back()) rep.all_pi = false;
  }
  rep.families_report = is_independency(p, pi_families);
  std::vector<SetFamily> generated;
  for (const auto& fam : pi_families)
    generated.push_back(
        generate_sigma_field(p.space().ground(), fam).member_family());
  rep.generated_report = is_independency(p, generated);
  rep.implication_holds = !(rep.all_pi && rep.families_report.independent) ||
                          rep.generated_report.independent;
  return rep;
}

struct JointVsProductReport {
  bool sigma_fields_independent = false;
  bool joint_equals_product = false;
  bool equivalence_holds = false;
};

// sigma(X), sigma(Y) independent  iff  law(X,Y) = law(X) x law(Y).
inline JointVsProductReport joint_vs_product_check(const MeasurableMap& x, const MeasurableMap& y,
                                                   const MeasureTable& p) {
  if (x.domain != p.space().ground() || y.domain != p.space().ground())
    throw invalid_argument_error("joint_vs_product_check: maps must live on P's ground set");
  JointVsProductReport rep;
  SigmaField sx = sigma_of(x), sy = sigma_of(y);
  rep.sigma_fields_independent =
      is_independency(p, {sx.member_family(), sy.member_family()}).independent;

  // Joint law on the product of the discrete codomains.
  ProductSpace prod = ProductSpace::of(SigmaField::discrete(x.codomain),
                                       SigmaField::discrete(y.codomain));
  std::vector<std::size_t> joint_graph(p.space().ground().size());
  for (std::size_t i = 0; i < joint_graph.size(); ++i)
    joint_graph[i] = x(i) * y.codomain.size() + y(i);
  MeasurableMap xy(p.space().ground(), prod.space.ground(), std::move(joint_graph));
  MeasureTable joint = pushforward_measure(xy, p, prod.space);
  MeasureTable prod_of_marginals =
      product_measure(pushforward_measure(x, p, SigmaField::discrete(x.codomain)),
                      pushforward_measure(y, p, SigmaField::discrete(y.codomain)), prod);
  rep.joint_equals_product = joint == prod_of_marginals;
  rep.equivalence_holds = rep.sigma_fields_independent == rep.joint_equals_product;
  return rep;
}

// --- marginal families and Kolmogorov consistency ---------------------------

// Laws on finite products of a fixed state space, indexed by finite subsets
// of a universe of coordinate names.
struct MarginalFamily {
  GroundSet state;                       // the fixed finite state space
  std::vector<std::string> universe;     // coordinate names
  // Each entry: sorted index subset (as positions in `universe`) with a law
  // on the tuple ground set of state^F (coordinates in subset order).
  std::vector<std::pair<std::vector<std::size_t>, MeasureTable>> laws;
};

// Ground set of state^F for |F| = k coordinates: tuples in lexicographic
// order, labeled "s1|s2|...".
inline GroundSet tuple_ground(const GroundSet& state, std::size_t k) {
  std::vector<std::string> labels;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= state.size();
  labels.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    // decode most-significant-first
    std::vector<std::size_t> digits(k);
    std::size_t c = code;
    for (std::size_t pos = k; pos-- > 0;) {
      digits[pos] = c % state.size();
      c /= state.size();
    }
    std::string l;
    for (std::size_t pos = 0; pos < k; ++pos) {
      if (pos) l += "|";
      l += state.label(digits[pos]);
    }
    labels.push_back(std::move(l));
  }
  return GroundSet(std::move(labels));
}

// Coordinate projection state^G -> state^F for F a subset of G (both given
// as sorted position lists into the universe).
inline MeasurableMap tuple_projection(const GroundSet& state, const std::vector<std::size_t>& g,
                                      const std::vector<std::size_t>& f) {
  GroundSet dom = tuple_ground(state, g.size());
  GroundSet cod = tuple_ground(state, f.size());
  // positions of F's coordinates inside G
  std::vector<std::size_t> pos;
  for (std::size_t fi : f) {
    auto it = std::find(g.begin(), g.end(), fi);
    if (it == g.end())
      throw invalid_argument_error("tuple_projection: F must be a subset of G");
    pos.push_back(static_cast<std::size_t>(it - g.begin()));
  }
  std::vector<std::size_t> graph(dom.size());
  const std::size_t s = state.size();
  for (std::size_t code = 0; code < dom.size(); ++code) {
    std::vector<std::size_t> digits(g.size());
    std::size_t c = code;
    for (std::size_t p = g.size(); p-- > 0;) {
      digits[p] = c % s;
      c /= s;
    }
    std::size_t out = 0;
    for (std::size_t p : pos) out = out * s + digits[p];
    graph[code] = out;
  }
  return MeasurableMap(dom, cod, std::move(graph));
}

struct ConsistencyViolation {
  std::vector<std::size_t> sub, super;  // F subset of G
  Subset witness;                        // set in state^F where they differ
};

struct ConsistencyReport {
  bool consistent = true;
  std::optional<ConsistencyViolation> violation;
  std::size_t pairs_checked = 0;
};

// For every pair F subset of G in the family, push mu_G through the
// coordinate projection and compare with mu_F exactly.
inline ConsistencyReport kolmogorov_consistency(const MarginalFamily& fam) {
  ConsistencyReport rep;
  for (const auto& [f_idx, f_law] : fam.laws) {
    if (!classify(f_law).probability)
      throw precondition_error("kolmogorov_consistency: marginals must be probabilities");
    for (const auto& [g_idx, g_law] : fam.laws) {
      bool subset = std::includes(g_idx.begin(), g_idx.end(), f_idx.begin(), f_idx.end());
      if (!subset || f_idx == g_idx) continue;
      ++rep.pairs_checked;
      MeasurableMap pr = tuple_projection(fam.state, g_idx, f_idx);
      MeasureTable pushed = pushforward_measure(pr, g_law, f_law.space());
      if (pushed != f_law) {
        rep.consistent = false;
        ConsistencyViolation v;
        v.sub = f_idx;
        v.super = g_idx;
        for (std::size_t j = 0; j < f_law.space().atom_count(); ++j)
          if (pushed.weight(j) != f_law.weight(j)) {
            v.witness = f_law.space().atoms()[j];
            break;
          }
        rep.violation = v;
        return rep;
      }
    }
  }
  return rep;
}

// --- the dyadic sign tree ----------------------------------------------------

// Nodes of the rooted binary tree up to the given level, in breadth-first
// order: "r", "r0", "r1", "r00", ...
inline std::vector<std::string> tree_nodes(unsigned level) {
  std::vector<std::string> nodes{"r"};
  std::vector<std::string> frontier{"r"};
  for (unsigned l = 0; l < level; ++l) {
    std::vector<std::string> next;
    for (const auto& v : frontier) {
      next.push_back(v + "0");
      next.push_back(v + "1");
    }
    for (const auto& v : next) nodes.push_back(v);
    frontier = std::move(next);
  }
  return nodes;
}

// Exact law of the sign tree at the given level: the 2^level leaves are
// independent uniform signs and every internal node is the product of its
// two children.  The ground set enumerates the carrier (one tuple per leaf
// assignment); each tuple has probability 2^-(2^level).
//
// For level <= 2 the law is materialized on the full tuple space
// {-1,1}^nodes with zeros off the carrier, so push-forward comparisons work
// against independently built laws; above that the carrier alone is kept.
struct TreeLaw {
  std::vector<std::string> nodes;  // breadth-first
  MeasureTable law;                // on sign-tuple labels like "+-+"
};

inline std::string sign_tuple_label(const std::vector<int>& signs) {
  std::string s;
  for (int v : signs) s += v > 0 ? '+' : '-';
  return s;
}

inline std::vector<int> tree_signs_from_leaves(unsigned level, std::uint64_t leaf_mask) {
  // Assign leaves from the mask, then fill ancestors bottom-up as products.
  std::size_t node_count = (std::size_t(2) << level) - 1;  // 2^(level+1) - 1
  std::vector<int> signs(node_count, 0);
  std::size_t first_leaf = node_count - (std::size_t(1) << level);
  for (std::size_t i = 0; i < (std::size_t(1) << level); ++i)
    signs[first_leaf + i] = (leaf_mask >> i & 1) ? 1 : -1;
  for (std::size_t i = first_leaf; i-- > 0;)
    signs[i] = signs[2 * i + 1] * signs[2 * i + 2];
  return signs;
}

inline TreeLaw binary_tree_law(unsigned level, unsigned cap = 4) {
  if (level > cap) throw precondition_error("binary_tree_law: level exceeds the cap");
  TreeLaw out;
  out.nodes = tree_nodes(level);
  const std::size_t leaves = std::size_t(1) << level;
  const std::size_t carrier = std::size_t(1) << leaves;

  if (level <= 2) {
    // Full tuple space {-1,+1}^nodes.
    const std::size_t n = out.nodes.size();
    std::vector<std::string> labels;
    labels.reserve(std::size_t(1) << n);
    for (std::size_t code = 0; code < (std::size_t(1) << n); ++code) {
      std::vector<int> signs(n);
      for (std::size_t i = 0; i < n; ++i) signs[i] = (code >> i & 1) ? 1 : -1;
      labels.push_back(sign_tuple_label(signs));
    }
    GroundSet g(labels);
    std::vector<XReal> w(g.size(), XReal(0));
    XReal each(Rat(1, BigInt(carrier)));
    for (std::uint64_t mask = 0; mask < carrier; ++mask) {
      std::vector<int> signs = tree_signs_from_leaves(level, mask);
      w[g.index_of(sign_tuple_label(signs))] += each;
    }
    out.law = MeasureTable(SigmaField::discrete(g), std::move(w));
    return out;
  }

  std::vector<std::string> labels;
  labels.reserve(carrier);
  for (std::uint64_t mask = 0; mask < carrier; ++mask)
    labels.push_back(sign_tuple_label(tree_signs_from_leaves(level, mask)));
  GroundSet g(labels);
  out.law = MeasureTable(SigmaField::discrete(g),
                         std::vector<XReal>(g.size(), XReal(Rat(1, BigInt(carrier)))));
  return out;
}

// Restriction of sign tuples to the first k coordinates (the nodes of a
// lower level are a breadth-first prefix).
inline MeasurableMap tree_restriction(const TreeLaw& from, unsigned to_level) {
  std::size_t keep = (std::size_t(2) << to_level) - 1;
  if (keep > from.nodes.size())
    throw invalid_argument_error("tree_restriction: target level above the source");
  TreeLaw target = binary_tree_law(to_level);
  const GroundSet& dom = from.law.space().ground();
  const GroundSet& cod = target.law.space().ground();
  std::vector<std::size_t> graph(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i)
    graph[i] = cod.index_of(dom.label(i).substr(0, keep));
  return MeasurableMap(dom, cod, std::move(graph));
}

// --- coordinate samplers ------------------------------------------------------

// A finite probability table over labeled outcomes.
struct FactorLaw {
  std::vector<std::string> labels;
  std::vector<Rat> probs;

  void validate() const {
    if (labels.size() != probs.size() || labels.empty())
      throw invalid_argument_error("FactorLaw: labels and probabilities must pair up");
    Rat total(0);
    for (const auto& p : probs) {
      if (p.sign() < 0) throw invalid_argument_error("FactorLaw: negative probability");
      total += p;
    }
    if (total != Rat(1)) throw invalid_argument_error("FactorLaw: probabilities must sum to 1");
  }
  static FactorLaw fair_bit() { return FactorLaw{{"0", "1"}, {Rat(1, 2), Rat(1, 2)}}; }

  friend bool operator==(const FactorLaw& a, const FactorLaw& b) {
    return a.labels == b.labels && a.probs == b.probs;
  }

  std::size_t sample_index(RngStream& rng) const {
    Rat u = rng.next_dyadic(63);
    Rat acc(0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.size() - 1;
  }
};

// Deterministic sampler for a countable product of finite laws, given as an
// eventually periodic list of factor laws.  Coordinates are drawn from
// per-index derived streams, so they are independent by construction and
// stable under splitting.
struct CoordinateSampler {
  std::vector<FactorLaw> prefix;
  std::vector<FactorLaw> cycle;
  std::uint64_t seed = 0;
  std::string generator_id = kGeneratorId;

  const FactorLaw& law_at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (cycle.empty()) throw invalid_argument_error("CoordinateSampler: empty cycle");
    return cycle[(i - prefix.size()) % cycle.size()];
  }

  friend bool operator==(const CoordinateSampler& a, const CoordinateSampler& b) {
    return a.prefix == b.prefix && a.cycle == b.cycle && a.seed == b.seed &&
           a.generator_id == b.generator_id;
  }

  // One tuple of the first `len` coordinates, for the given draw index.
  std::vector<std::string> sample_tuple(std::size_t len, std::uint64_t draw_index) const {
    std::vector<std::string> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      RngStream rng = RngStream::named(generator_id, seed, draw_index * 1000003ULL + i);
      const FactorLaw& law = law_at(i);
      out.push_back(law.labels[law.sample_index(rng)]);
    }
    return out;
  }
};

inline std::vector<std::vector<std::string>> sample_coordinates(const CoordinateSampler& s,
                                                                std::size_t len,
                                                                std::size_t count) {
  std::vector<std::vector<std::string>> out;
  out.reserve(count);
  for (std::size_t d = 0; d < count; ++d) out.push_back(s.sample_tuple(len, d));
  return out;
}

// Sum of the first k fair bits over 2^n: an exact dyadic rational in [0,1).
inline Rat coin_to_uniform(const CoordinateSampler& s, unsigned k, std::uint64_t draw_index) {
  Rat acc(0);
  auto tuple = s.sample_tuple(k, draw_index);
  for (unsigned n = 0; n < k; ++n) {
    const FactorLaw& law = s.law_at(n);
    if (law.labels != std::vector<std::string>{"0", "1"})
      throw precondition_error("coin_to_uniform: sampler must emit bits");
    if (tuple[n] == "1") acc += Rat(1, BigInt(1) << (n + 1));
  }
  return acc;
}

// Exact law of the k-bit dyadic output under the product of the bit laws,
// by enumeration; independent of the sampler.
inline std::map<Rat, Rat> coin_to_uniform_exact_law(const CoordinateSampler& s, unsigned k) {
  if (k > 20) throw precondition_error("coin_to_uniform_exact_law: k too large to enumerate");
  std::map<Rat, Rat> law;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    Rat value(0), prob(1);
    for (unsigned n = 0; n < k; ++n) {
      const FactorLaw& fl = s.law_at(n);
      bool bit = mask >> n & 1;
      if (fl.labels != std::vector<std::string>{"0", "1"})
        throw precondition_error("coin_to_uniform_exact_law: sampler must emit bits");
      prob *= fl.probs[bit ? 1 : 0];
      if (bit) value += Rat(1, BigInt(1) << (n + 1));
    }
    law[value] += prob;
  }
  return law;
}

}  // namespace measurekit
