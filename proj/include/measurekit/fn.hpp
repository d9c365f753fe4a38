// Measurable numerical functions on finite measurable spaces.
//
// A function on a finite space is measurable w.r.t. a sigma-field exactly
// when it is constant on the atoms, so NumFn stores one extended-rational
// value per atom of its space.

#pragma once

#include "measurekit/setalg.hpp"
#include "measurekit/xreal.hpp"

#include <functional>
#include <vector>

namespace measurekit {

class NumFn {
 public:
  NumFn() = default;
  NumFn(SigmaField space, std::vector<XReal> atom_values)
      : space_(std::move(space)), values_(std::move(atom_values)) {
    if (values_.size() != space_.atom_count())
      throw invalid_argument_error("NumFn: need one value per atom");
  }

  static NumFn constant(const SigmaField& space, const XReal& c) {
    return NumFn(space, std::vector<XReal>(space.atom_count(), c));
  }
  static NumFn indicator(const SigmaField& space, const Subset& a) {
    if (!space.is_measurable(a))
      throw invalid_argument_error("NumFn::indicator: set is not measurable");
    std::vector<XReal> v(space.atom_count(), XReal(0));
    for (std::size_t j = 0; j < space.atom_count(); ++j)
      if ((space.atoms()[j] & a).any()) v[j] = XReal(1);
    return NumFn(space, std::move(v));
  }
  // Point values, which must be constant on atoms.
  static NumFn from_points(const SigmaField& space, const std::vector<XReal>& point_values) {
    if (point_values.size() != space.ground().size())
      throw invalid_argument_error("NumFn::from_points: need one value per element");
    std::vector<XReal> v(space.atom_count());
    for (std::size_t j = 0; j < space.atom_count(); ++j) {
      const Subset& a = space.atoms()[j];
      std::size_t first = a.find_first();
      v[j] = point_values[first];
      for (std::size_t i = first; i != Subset::npos; i = a.find_next(i))
        if (point_values[i] != v[j])
          throw invalid_argument_error(
              "NumFn::from_points: values not constant on the atom " +
              space.ground().subset_str(a));
    }
    return NumFn(space, std::move(v));
  }

  const SigmaField& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  const XReal& at_atom(std::size_t j) const { return values_.at(j); }
  const XReal& at_element(std::size_t i) const { return values_.at(space_.atom_of(i)); }
  const std::vector<XReal>& atom_values() const { return values_; }

  // The same function viewed on a finer sigma-field.
  NumFn on(const SigmaField& finer) const {
    if (!space_.is_sub_field_of(finer))
      throw invalid_argument_error("NumFn::on: target field does not refine the space");
    std::vector<XReal> v(finer.atom_count());
    for (std::size_t j = 0; j < finer.atom_count(); ++j)
      v[j] = at_element(finer.atoms()[j].find_first());
    return NumFn(finer, std::move(v));
  }

  NumFn map(const std::function<XReal(const XReal&)>& op) const {
    std::vector<XReal> v(values_);
    for (auto& x : v) x = op(x);
    return NumFn(space_, std::move(v));
  }

  NumFn abs() const { return map([](const XReal& x) { return x.abs(); }); }
  NumFn pos_part() const { return map([](const XReal& x) { return x.pos_part(); }); }
  NumFn neg_part() const { return map([](const XReal& x) { return x.neg_part(); }); }

  bool nonnegative() const {
    for (const auto& x : values_)
      if (x < XReal(0)) return false;
    return true;
  }

  friend NumFn zip(const NumFn& f, const NumFn& g,
                   const std::function<XReal(const XReal&, const XReal&)>& op) {
    if (f.space_ != g.space_)
      throw invalid_argument_error("NumFn: mismatched spaces");
    std::vector<XReal> v(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) v[j] = op(f.values_[j], g.values_[j]);
    return NumFn(f.space_, std::move(v));
  }

  friend NumFn operator+(const NumFn& f, const NumFn& g) {
    return zip(f, g, [](const XReal& a, const XReal& b) { return a + b; });
  }
  friend NumFn operator-(const NumFn& f, const NumFn& g) {
    return zip(f, g, [](const XReal& a, const XReal& b) { return a - b; });
  }
  friend NumFn operator*(const NumFn& f, const NumFn& g) {
    return zip(f, g, [](const XReal& a, const XReal& b) { return a * b; });
  }
  friend NumFn operator*(const XReal& c, const NumFn& f) {
    return f.map([&](const XReal& x) { return c * x; });
  }

  friend NumFn min(const NumFn& f, const NumFn& g) {
    return zip(f, g, [](const XReal& a, const XReal& b) { return measurekit::min(a, b); });
  }
  friend NumFn max(const NumFn& f, const NumFn& g) {
    return zip(f, g, [](const XReal& a, const XReal& b) { return measurekit::max(a, b); });
  }

  // Pointwise sum together with the atoms on which inf + (-inf) fired.
  friend std::pair<NumFn, Subset> add_flagged(const NumFn& f, const NumFn& g) {
    if (f.space_ != g.space_)
      throw invalid_argument_error("NumFn: mismatched spaces");
    std::vector<XReal> v(f.size());
    Subset fired(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto [val, conv] = XReal::add_flagged(f.values_[j], g.values_[j]);
      v[j] = val;
      if (conv) fired.set(j);
    }
    return {NumFn(f.space_, std::move(v)), fired};
  }

  friend bool operator==(const NumFn& f, const NumFn& g) {
    return f.space_ == g.space_ && f.values_ == g.values_;
  }
  friend bool operator!=(const NumFn& f, const NumFn& g) { return !(f == g); }

  friend bool operator<=(const NumFn& f, const NumFn& g) {
    if (f.space_ != g.space_) throw invalid_argument_error("NumFn: mismatched spaces");
    for (std::size_t j = 0; j < f.size(); ++j)
      if (!(f.values_[j] <= g.values_[j])) return false;
    return true;
  }

  // Composition h(f) for a map f into a finite codomain carrying h as a
  // codomain-atom table.
  static NumFn compose(const NumFn& h, const MeasurableMap& f, const SigmaField& dom_field) {
    if (h.space().ground() != f.codomain)
      throw invalid_argument_error("NumFn::compose: h not defined on the codomain");
    std::vector<XReal> v(dom_field.atom_count());
    for (std::size_t j = 0; j < dom_field.atom_count(); ++j) {
      const Subset& a = dom_field.atoms()[j];
      std::size_t first = a.find_first();
      v[j] = h.at_element(f(first));
      for (std::size_t i = first; i != Subset::npos; i = a.find_next(i))
        if (h.at_element(f(i)) != v[j])
          throw invalid_argument_error("NumFn::compose: h(f) not constant on the atoms");
    }
    return NumFn(dom_field, std::move(v));
  }

 private:
  SigmaField space_;
  std::vector<XReal> values_;
};

}  // namespace measurekit
