// Exact measures on finite measurable spaces: evaluation, classification,
// restriction, push-forward, sums, completion, null structure, and the
// pi-system agreement theorem as an executable verdict.

#pragma once

#include "measurekit/setalg.hpp"
#include "measurekit/xreal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace measurekit {

struct measurability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nonnegative extended-rational weight per atom.
class MeasureTable {
 public:
  MeasureTable() = default;
  MeasureTable(SigmaField space, std::vector<XReal> atom_weights)
      : space_(std::move(space)), weights_(std::move(atom_weights)) {
    if (weights_.size() != space_.atom_count())
      throw invalid_argument_error("MeasureTable: need one weight per atom");
    for (const auto& w : weights_)
      if (w < XReal(0))
        throw invalid_argument_error("MeasureTable: weights must be nonnegative");
  }

  static MeasureTable zero(const SigmaField& space) {
    return MeasureTable(space, std::vector<XReal>(space.atom_count(), XReal(0)));
  }
  static MeasureTable uniform(const GroundSet& g) {
    if (g.size() == 0) throw invalid_argument_error("uniform: empty ground set");
    return MeasureTable(SigmaField::discrete(g),
                        std::vector<XReal>(g.size(), XReal(Rat(1, BigInt(g.size())))));
  }
  static MeasureTable dirac(const GroundSet& g, std::size_t at) {
    std::vector<XReal> w(g.size(), XReal(0));
    w.at(at) = XReal(1);
    return MeasureTable(SigmaField::discrete(g), std::move(w));
  }
  static MeasureTable counting(const GroundSet& g) {
    return MeasureTable(SigmaField::discrete(g), std::vector<XReal>(g.size(), XReal(1)));
  }

  const SigmaField& space() const { return space_; }
  const std::vector<XReal>& weights() const { return weights_; }
  const XReal& weight(std::size_t atom) const { return weights_.at(atom); }

  friend bool operator==(const MeasureTable& a, const MeasureTable& b) {
    return a.space_ == b.space_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const MeasureTable& a, const MeasureTable& b) { return !(a == b); }

 private:
  SigmaField space_;
  std::vector<XReal> weights_;
};

inline XReal evaluate(const MeasureTable& mu, const Subset& a) {
  if (!mu.space().is_measurable(a))
    throw measurability_error("evaluate: set " + mu.space().ground().subset_str(a) +
                              " is not measurable");
  XReal total(0);
  for (std::size_t j = 0; j < mu.space().atom_count(); ++j)
    if ((mu.space().atoms()[j] & a).any()) total += mu.weight(j);
  return total;
}

struct MeasureClass {
  bool finite = false;
  bool probability = false;
  bool sigma_finite = false;
  XReal mass;
};

// On a finite ground set sigma-finiteness means no atom of infinite weight
// (atoms are indivisible, so an infinite atom admits no finite cover).
inline MeasureClass classify(const MeasureTable& mu) {
  MeasureClass c;
  c.mass = XReal(0);
  c.sigma_finite = true;
  for (const auto& w : mu.weights()) {
    c.mass += w;
    if (w.is_pos_inf()) c.sigma_finite = false;
  }
  c.finite = c.mass.is_finite();
  c.probability = c.mass == XReal(1);
  return c;
}

inline MeasureTable restrict(const MeasureTable& mu, const Subset& a) {
  if (!mu.space().is_measurable(a))
    throw measurability_error("restrict: set is not measurable");
  SigmaField tr = trace(mu.space(), a);
  // The trace constructor orders atoms canonically, so look each weight up
  // through the atom that contains it rather than relying on positions.
  std::vector<XReal> w(tr.atom_count());
  for (std::size_t j = 0; j < tr.atom_count(); ++j) {
    std::size_t sub_el = tr.atoms()[j].find_first();
    std::size_t global = mu.space().ground().index_of(tr.ground().label(sub_el));
    w[j] = mu.weight(mu.space().atom_of(global));
  }
  return MeasureTable(tr, std::move(w));
}

inline MeasureTable pushforward_measure(const MeasurableMap& f, const MeasureTable& mu,
                                        const SigmaField& sigma_cod) {
  if (!is_measurable(f, mu.space(), sigma_cod))
    throw measurability_error("pushforward_measure: map is not measurable");
  std::vector<XReal> w(sigma_cod.atom_count(), XReal(0));
  for (std::size_t j = 0; j < sigma_cod.atom_count(); ++j)
    w[j] = evaluate(mu, f.preimage(sigma_cod.atoms()[j]));
  return MeasureTable(sigma_cod, std::move(w));
}

inline MeasureTable sum_measures(const std::vector<MeasureTable>& mus,
                                 const std::vector<XReal>& coeffs) {
  if (mus.empty() || mus.size() != coeffs.size())
    throw invalid_argument_error("sum_measures: need matching measures and coefficients");
  const SigmaField& space = mus.front().space();
  for (const auto& m : mus)
    if (m.space() != space) throw invalid_argument_error("sum_measures: mismatched spaces");
  for (const auto& c : coeffs)
    if (c < XReal(0)) throw invalid_argument_error("sum_measures: coefficients must be >= 0");
  std::vector<XReal> w(space.atom_count(), XReal(0));
  for (std::size_t k = 0; k < mus.size(); ++k)
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += coeffs[k] * mus[k].weight(j);
  return MeasureTable(space, std::move(w));
}

struct CompletionResult {
  SigmaField completed_space;
  MeasureTable completed_measure;
  // The new zero-weight atoms produced by splitting; every subset of a
  // null set is a union of these, hence measurable with weight zero.
  SetFamily added_null_atoms;
};

// Minimal complete extension: every zero-weight atom splits into singleton
// null atoms; positive atoms stay whole.
inline CompletionResult complete(const MeasureTable& mu) {
  const SigmaField& space = mu.space();
  std::vector<Subset> atoms;
  std::vector<Subset> added;
  for (std::size_t j = 0; j < space.atom_count(); ++j) {
    const Subset& a = space.atoms()[j];
    if (mu.weight(j) == XReal(0) && a.count() > 1) {
      for (std::size_t i = a.find_first(); i != Subset::npos; i = a.find_next(i)) {
        Subset s(space.ground().size());
        s.set(i);
        added.push_back(s);
        atoms.push_back(std::move(s));
      }
    } else {
      atoms.push_back(a);
    }
  }
  SigmaField completed(space.ground(), std::move(atoms));
  // Weights re-read through the original atom of each (re-sorted) block.
  std::vector<XReal> weights(completed.atom_count());
  for (std::size_t j = 0; j < completed.atom_count(); ++j) {
    std::size_t el = completed.atoms()[j].find_first();
    XReal w = mu.weight(space.atom_of(el));
    weights[j] = completed.atoms()[j] == space.atoms()[space.atom_of(el)] ? w : XReal(0);
  }
  return CompletionResult{completed, MeasureTable(completed, std::move(weights)),
                          SetFamily(space.ground(), std::move(added))};
}

// True when the total weight of atoms where the predicate fails is zero.
// The predicate is indexed by atoms of mu's space.
inline bool almost_everywhere(const std::vector<bool>& atom_pred, const MeasureTable& mu) {
  if (atom_pred.size() != mu.space().atom_count())
    throw invalid_argument_error("almost_everywhere: predicate must be atom-indexed");
  for (std::size_t j = 0; j < atom_pred.size(); ++j)
    if (!atom_pred[j] && mu.weight(j) != XReal(0)) return false;
  return true;
}

// --- measures agreeing on a sigma-localizing generating pi-system --------

struct AgreementVerdict {
  bool pi_is_pi_system = false;
  bool pi_generates_space = false;
  bool localizer_valid = false;
  bool agree_on_pi = false;
  bool premises_hold = false;
  bool conclusion_holds = false;           // mu == nu atomwise
  std::optional<Subset> counterexample;    // measurable set with mu != nu
  std::string detail;
};

inline AgreementVerdict agree_on_pi_system(const MeasureTable& mu, const MeasureTable& nu,
                                           const SetFamily& pi,
                                           const std::vector<Subset>& localizer) {
  if (mu.space() != nu.space())
    throw invalid_argument_error("agree_on_pi_system: measures on different spaces");
  const SigmaField& space = mu.space();
  AgreementVerdict v;

  v.pi_is_pi_system = is_pi_system(pi);
  v.pi_generates_space =
      pi.ground == space.ground() && generate_sigma_field(space.ground(), pi) == space;

  // Localizer: members of pi, nondecreasing or pairwise disjoint, equal
  // finite measure under both, union the whole ground set.
  v.localizer_valid = !localizer.empty();
  Subset un(space.ground().size());
  bool nondecreasing = true, disjoint = true;
  for (std::size_t k = 0; k < localizer.size(); ++k) {
    const Subset& l = localizer[k];
    if (!pi.contains(l) || !space.is_measurable(l)) v.localizer_valid = false;
    if (k > 0) {
      if (!localizer[k - 1].is_subset_of(l)) nondecreasing = false;
      for (std::size_t j = 0; j < k; ++j)
        if ((localizer[j] & l).any()) disjoint = false;
    }
    un |= l;
  }
  if (!(nondecreasing || disjoint)) v.localizer_valid = false;
  if (un != space.ground().full_set()) v.localizer_valid = false;
  if (v.localizer_valid)
    for (const auto& l : localizer) {
      XReal ml = evaluate(mu, l), nl = evaluate(nu, l);
      if (!(ml == nl && ml.is_finite())) v.localizer_valid = false;
    }

  v.agree_on_pi = true;
  for (const auto& p : pi.members) {
    if (!space.is_measurable(p)) {
      v.agree_on_pi = false;
      v.detail = "pi-system member " + space.ground().subset_str(p) + " is not measurable";
      break;
    }
    if (evaluate(mu, p) != evaluate(nu, p)) v.agree_on_pi = false;
  }

  v.premises_hold =
      v.pi_is_pi_system && v.pi_generates_space && v.localizer_valid && v.agree_on_pi;

  v.conclusion_holds = true;
  for (std::size_t j = 0; j < space.atom_count(); ++j)
    if (mu.weight(j) != nu.weight(j)) {
      v.conclusion_holds = false;
      v.counterexample = space.atoms()[j];
      break;
    }
  return v;
}

// --- Borel-Cantelli on eventually periodic set sequences -----------------

struct SetSequence {
  std::vector<Subset> prefix;
  std::vector<Subset> cycle;  // visited infinitely often; must be nonempty
};

struct BorelCantelliResult {
  Subset limsup_set;
  XReal mass_sum;
  bool sum_finite = false;
  XReal limsup_measure;
  bool implication_holds = false;  // sum < inf  =>  mu(limsup) == 0
};

// limsup of an eventually periodic sequence is the union of the cycle sets
// (prefix sets occur finitely often, cycle sets infinitely often).
inline BorelCantelliResult borel_cantelli(const MeasureTable& mu, const SetSequence& seq) {
  if (seq.cycle.empty())
    throw invalid_argument_error("borel_cantelli: cycle must be nonempty");
  const SigmaField& space = mu.space();
  for (const auto& s : seq.prefix)
    if (!space.is_measurable(s)) throw measurability_error("borel_cantelli: prefix member not measurable");
  BorelCantelliResult r;
  r.limsup_set = Subset(space.ground().size());
  XReal cycle_sum(0);
  for (const auto& s : seq.cycle) {
    if (!space.is_measurable(s)) throw measurability_error("borel_cantelli: cycle member not measurable");
    r.limsup_set |= s;
    cycle_sum += evaluate(mu, s);
  }
  r.mass_sum = XReal(0);
  for (const auto& s : seq.prefix) r.mass_sum += evaluate(mu, s);
  if (cycle_sum != XReal(0)) r.mass_sum = XReal::pos_inf();
  r.sum_finite = r.mass_sum.is_finite();
  r.limsup_measure = evaluate(mu, r.limsup_set);
  r.implication_holds = !r.sum_finite || r.limsup_measure == XReal(0);
  return r;
}

}  // namespace measurekit
