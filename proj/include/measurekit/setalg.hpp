// Finite ground sets, set families, sigma-field generation and structure
// transport (traces, joins, pull-backs, push-forwards), pi/lambda machinery.
//
// A sigma-field on a finite ground set is stored as its atom partition;
// membership of a subset means "union of atoms".  Member-enumeration
// operations are guarded by a configurable ground-size cap (default 20)
// because the member count is 2^#atoms.

#pragma once

#include "measurekit/xreal.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace measurekit {

using Subset = boost::dynamic_bitset<>;

inline std::size_t enumeration_cap() { return 20; }

inline void require_enumerable(std::size_t n, const std::string& what) {
  if (n > enumeration_cap())
    throw invalid_argument_error(what + ": size " + std::to_string(n) +
                                 " exceeds the enumeration cap of " +
                                 std::to_string(enumeration_cap()));
}

// Ordered list of distinct labels.  Elements are addressed by index.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second)
        throw invalid_argument_error("GroundSet: duplicate label '" + labels_[i] + "'");
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
      throw invalid_argument_error("GroundSet: unknown label '" + label + "'");
    return it->second;
  }
  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  Subset empty_set() const { return Subset(size()); }
  Subset full_set() const { return ~Subset(size()); }
  Subset subset(const std::vector<std::string>& labels) const {
    Subset s(size());
    for (const auto& l : labels) s.set(index_of(l));
    return s;
  }
  std::vector<std::string> labels_of(const Subset& s) const {
    std::vector<std::string> out;
    for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i))
      out.push_back(labels_[i]);
    return out;
  }

  std::string subset_str(const Subset& s) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i)) {
      if (!first) out += ",";
      out += labels_[i];
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.labels_ == b.labels_;
  }
  friend bool operator!=(const GroundSet& a, const GroundSet& b) { return !(a == b); }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
};

// A collection of subsets of a common ground set, duplicates removed.
struct SetFamily {
  GroundSet ground;
  std::vector<Subset> members;

  SetFamily() = default;
  SetFamily(GroundSet g, std::vector<Subset> m) : ground(std::move(g)) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    members = std::move(m);
  }

  bool contains(const Subset& s) const {
    return std::binary_search(members.begin(), members.end(), s);
  }
  std::size_t size() const { return members.size(); }

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.ground == b.ground && a.members == b.members;
  }
};

// Sigma-field on a finite ground set, stored as its atom partition.
// Atoms are pairwise disjoint, nonempty, union to the ground set, and are
// kept sorted by their smallest element.
class SigmaField {
 public:
  SigmaField() = default;
  SigmaField(GroundSet ground, std::vector<Subset> atoms)
      : ground_(std::move(ground)), atoms_(std::move(atoms)) {
    canonicalize_and_check();
  }

  static SigmaField trivial(const GroundSet& g) {
    if (g.size() == 0) return SigmaField(g, {});
    return SigmaField(g, {g.full_set()});
  }
  static SigmaField discrete(const GroundSet& g) {
    std::vector<Subset> atoms;
    for (std::size_t i = 0; i < g.size(); ++i) {
      Subset s(g.size());
      s.set(i);
      atoms.push_back(s);
    }
    return SigmaField(g, std::move(atoms));
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Subset>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }

  // Index of the atom containing element i.
  std::size_t atom_of(std::size_t i) const { return atom_index_.at(i); }

  bool is_measurable(const Subset& s) const {
    Subset acc(ground_.size());
    for (const auto& a : atoms_)
      if ((s & a).any()) acc |= a;
    return acc == s;
  }

  // All members, i.e. all unions of atoms (2^#atoms of them).
  std::vector<Subset> members() const {
    require_enumerable(atoms_.size(), "SigmaField::members");
    std::vector<Subset> out;
    out.reserve(std::size_t(1) << atoms_.size());
    for (std::size_t mask = 0; mask < (std::size_t(1) << atoms_.size()); ++mask) {
      Subset s(ground_.size());
      for (std::size_t j = 0; j < atoms_.size(); ++j)
        if (mask >> j & 1) s |= atoms_[j];
      out.push_back(std::move(s));
    }
    return out;
  }

  SetFamily member_family() const { return SetFamily(ground_, members()); }

  // True when every atom of this field is a union of atoms of `finer`.
  bool is_sub_field_of(const SigmaField& finer) const {
    if (ground_ != finer.ground_) return false;
    for (const auto& a : atoms_)
      if (!finer.is_measurable(a)) return false;
    return true;
  }

  friend bool operator==(const SigmaField& a, const SigmaField& b) {
    return a.ground_ == b.ground_ && a.atoms_ == b.atoms_;
  }
  friend bool operator!=(const SigmaField& a, const SigmaField& b) { return !(a == b); }

 private:
  void canonicalize_and_check() {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Subset& a, const Subset& b) { return a.find_first() < b.find_first(); });
    Subset seen(ground_.size());
    atom_index_.assign(ground_.size(), 0);
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      const Subset& a = atoms_[j];
      if (a.size() != ground_.size() || a.none())
        throw invalid_argument_error("SigmaField: atoms must be nonempty subsets of the ground set");
      if ((seen & a).any())
        throw invalid_argument_error("SigmaField: atoms must be pairwise disjoint");
      seen |= a;
      for (std::size_t i = a.find_first(); i != Subset::npos; i = a.find_next(i))
        atom_index_[i] = j;
    }
    if (!seen.all() && ground_.size() > 0)
      throw invalid_argument_error("SigmaField: atoms must cover the ground set");
  }

  GroundSet ground_;
  std::vector<Subset> atoms_;
  std::vector<std::size_t> atom_index_;
};

// Total mapping between two finite ground sets.
struct MeasurableMap {
  GroundSet domain;
  GroundSet codomain;
  std::vector<std::size_t> graph;  // element index -> element index

  MeasurableMap() = default;
  MeasurableMap(GroundSet dom, GroundSet cod, std::vector<std::size_t> g)
      : domain(std::move(dom)), codomain(std::move(cod)), graph(std::move(g)) {
    if (graph.size() != domain.size())
      throw invalid_argument_error("MeasurableMap: graph must be total on the domain");
    for (std::size_t v : graph)
      if (v >= codomain.size())
        throw invalid_argument_error("MeasurableMap: value outside the codomain");
  }

  static MeasurableMap from_labels(const GroundSet& dom, const GroundSet& cod,
                                   const std::map<std::string, std::string>& pairs) {
    std::vector<std::size_t> g(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      auto it = pairs.find(dom.label(i));
      if (it == pairs.end())
        throw invalid_argument_error("MeasurableMap: no image for '" + dom.label(i) + "'");
      g[i] = cod.index_of(it->second);
    }
    return MeasurableMap(dom, cod, std::move(g));
  }

  static MeasurableMap identity(const GroundSet& g) {
    std::vector<std::size_t> id(g.size());
    std::iota(id.begin(), id.end(), std::size_t(0));
    return MeasurableMap(g, g, std::move(id));
  }

  std::size_t operator()(std::size_t i) const { return graph.at(i); }

  Subset preimage(const Subset& s) const {
    Subset out(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (s.test(graph[i])) out.set(i);
    return out;
  }
  Subset image(const Subset& s) const {
    Subset out(codomain.size());
    for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i))
      out.set(graph[i]);
    return out;
  }

  friend MeasurableMap compose(const MeasurableMap& g, const MeasurableMap& f) {
    if (f.codomain != g.domain)
      throw invalid_argument_error("compose: inner codomain differs from outer domain");
    std::vector<std::size_t> h(f.domain.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = g.graph[f.graph[i]];
    return MeasurableMap(f.domain, g.codomain, std::move(h));
  }
};

// --- generation and transport -------------------------------------------

// Smallest sigma-field containing every member of `family`.  Atoms are the
// nonempty signature classes: elements are equivalent when they lie in
// exactly the same members.
inline SigmaField generate_sigma_field(const GroundSet& ground, const SetFamily& family) {
  if (family.ground != ground)
    throw invalid_argument_error("generate_sigma_field: family on a different ground set");
  std::map<std::vector<bool>, Subset> classes;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    std::vector<bool> sig(family.members.size());
    for (std::size_t m = 0; m < family.members.size(); ++m) sig[m] = family.members[m].test(i);
    auto [it, fresh] = classes.emplace(std::move(sig), Subset(ground.size()));
    (void)fresh;
    it->second.set(i);
  }
  std::vector<Subset> atoms;
  atoms.reserve(classes.size());
  for (auto& [sig, block] : classes) atoms.push_back(std::move(block));
  return SigmaField(ground, std::move(atoms));
}

inline SigmaField generate_sigma_field(const GroundSet& ground, const std::vector<Subset>& sets) {
  return generate_sigma_field(ground, SetFamily(ground, sets));
}

inline bool is_pi_system(const SetFamily& family) {
  for (const auto& a : family.members)
    for (const auto& b : family.members)
      if (!family.contains(a & b)) return false;
  return true;
}

// Lambda-system on a finite ground set: contains the ground set, closed
// under complements and under unions of disjoint member pairs.  (Countable
// nondecreasing unions stabilize on finite ground sets, so this matches
// the comparable-difference formulation; the unit tests check both.)
inline bool is_lambda_system(const GroundSet& ground, const SetFamily& family) {
  if (family.ground != ground)
    throw invalid_argument_error("is_lambda_system: family on a different ground set");
  if (!family.contains(ground.full_set())) return false;
  for (const auto& a : family.members) {
    if (!family.contains(~a)) return false;
    for (const auto& b : family.members)
      if ((a & b).none() && !family.contains(a | b)) return false;
  }
  return true;
}

// Least lambda-system containing `family`, by fixpoint iteration.
inline SetFamily lambda_closure(const GroundSet& ground, const SetFamily& family) {
  if (family.ground != ground)
    throw invalid_argument_error("lambda_closure: family on a different ground set");
  std::set<Subset> acc(family.members.begin(), family.members.end());
  acc.insert(ground.full_set());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subset> snapshot(acc.begin(), acc.end());
    for (const auto& a : snapshot)
      if (acc.insert(~a).second) grew = true;
    for (const auto& a : snapshot)
      for (const auto& b : snapshot)
        if ((a & b).none() && acc.insert(a | b).second) grew = true;
  }
  return SetFamily(ground, std::vector<Subset>(acc.begin(), acc.end()));
}

// Trace sigma-field on A: atoms are the nonempty intersections atom & A.
// A need not be measurable.
inline SigmaField trace(const SigmaField& sigma, const Subset& a) {
  const GroundSet& g = sigma.ground();
  std::vector<std::string> labels = g.labels_of(a);
  GroundSet sub(labels);
  std::vector<Subset> atoms;
  for (const auto& atom : sigma.atoms()) {
    Subset cut = atom & a;
    if (cut.none()) continue;
    Subset out(sub.size());
    for (std::size_t i = cut.find_first(); i != Subset::npos; i = cut.find_next(i))
      out.set(sub.index_of(g.label(i)));
    atoms.push_back(std::move(out));
  }
  return SigmaField(sub, std::move(atoms));
}

// Join = common refinement of the atom partitions.
inline SigmaField join(const std::vector<SigmaField>& sigmas) {
  if (sigmas.empty()) throw invalid_argument_error("join: need at least one sigma-field");
  const GroundSet& g = sigmas.front().ground();
  for (const auto& s : sigmas)
    if (s.ground() != g) throw invalid_argument_error("join: mismatched ground sets");
  std::map<std::vector<std::size_t>, Subset> classes;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<std::size_t> key;
    key.reserve(sigmas.size());
    for (const auto& s : sigmas) key.push_back(s.atom_of(i));
    auto [it, fresh] = classes.emplace(std::move(key), Subset(g.size()));
    (void)fresh;
    it->second.set(i);
  }
  std::vector<Subset> atoms;
  for (auto& [key, block] : classes) atoms.push_back(std::move(block));
  return SigmaField(g, std::move(atoms));
}

inline SigmaField join(const SigmaField& a, const SigmaField& b) { return join({a, b}); }

// Pull-back of sigma_cod by f: members are exactly the preimages of the
// members of sigma_cod.  Elements share an atom iff their images share a
// codomain atom.
inline SigmaField pullback_sigma(const MeasurableMap& f, const SigmaField& sigma_cod) {
  if (f.codomain != sigma_cod.ground())
    throw invalid_argument_error("pullback_sigma: codomain mismatch");
  std::map<std::size_t, Subset> classes;
  for (std::size_t i = 0; i < f.domain.size(); ++i) {
    auto [it, fresh] = classes.emplace(sigma_cod.atom_of(f(i)), Subset(f.domain.size()));
    (void)fresh;
    it->second.set(i);
  }
  std::vector<Subset> atoms;
  for (auto& [key, block] : classes) atoms.push_back(std::move(block));
  return SigmaField(f.domain, std::move(atoms));
}

// Push-forward of sigma_dom by f: the largest sigma-field on the codomain
// making f measurable, i.e. {A' : preimage(A') in sigma_dom}.  The atom of
// a point x' grows by alternately saturating the preimage within sigma_dom
// and taking the forward image, until stable.  Points outside the range of
// f have empty preimage and become singleton atoms.
inline SigmaField pushforward_sigma(const MeasurableMap& f, const SigmaField& sigma_dom) {
  if (f.domain != sigma_dom.ground())
    throw invalid_argument_error("pushforward_sigma: domain mismatch");
  const std::size_t n = f.codomain.size();
  std::vector<bool> assigned(n, false);
  std::vector<Subset> atoms;
  for (std::size_t x = 0; x < n; ++x) {
    if (assigned[x]) continue;
    Subset s(n);
    s.set(x);
    for (;;) {
      Subset pre = f.preimage(s);
      Subset sat(f.domain.size());
      for (const auto& a : sigma_dom.atoms())
        if ((pre & a).any()) sat |= a;
      Subset grown = s | f.image(sat);
      if (grown == s) break;
      s = std::move(grown);
    }
    for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i))
      assigned[i] = true;
    atoms.push_back(std::move(s));
  }
  return SigmaField(f.codomain, std::move(atoms));
}

inline bool is_measurable(const MeasurableMap& f, const SigmaField& f_dom,
                          const SigmaField& f_cod) {
  if (f.domain != f_dom.ground() || f.codomain != f_cod.ground())
    throw invalid_argument_error("is_measurable: ground sets do not match the map");
  for (const auto& a : f_cod.atoms())
    if (!f_dom.is_measurable(f.preimage(a))) return false;
  return true;
}

// Sigma-field generated by a map into a discretely-measured codomain.
inline SigmaField sigma_of(const MeasurableMap& f) {
  return pullback_sigma(f, SigmaField::discrete(f.codomain));
}

}  // namespace measurekit
