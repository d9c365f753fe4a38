// Interval sets on the real line: finite unions of intervals with rational
// or infinite endpoints, open/closed flags, and isolated points, kept in a
// canonical form (sorted, disjoint, non-adjacent).
//
// Internally a set is an alternating list of boundaries.  A boundary is a
// position immediately before (side -1) or after (side +1) a point, which
// makes the flag logic of unions and complements a plain sweep.

#pragma once

#include "measurekit/setalg.hpp"
#include "measurekit/xreal.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace measurekit {

struct Boundary {
  XReal v;
  int side;  // -1: just before v, +1: just after v

  friend bool operator==(const Boundary& a, const Boundary& b) {
    return a.v == b.v && a.side == b.side;
  }
  friend bool operator<(const Boundary& a, const Boundary& b) {
    if (a.v != b.v) return a.v < b.v;
    return a.side < b.side;
  }
  friend bool operator<=(const Boundary& a, const Boundary& b) { return a < b || a == b; }
};

struct Interval {
  XReal lo, hi;
  bool lo_closed = false, hi_closed = false;

  Interval() = default;
  Interval(XReal l, XReal h, bool lc, bool hc)
      : lo(std::move(l)), hi(std::move(h)), lo_closed(lc), hi_closed(hc) {
    if (lo.is_infinite()) lo_closed = false;
    if (hi.is_infinite()) hi_closed = false;
  }
  static Interval point(const XReal& x) { return Interval(x, x, true, true); }
  static Interval half_open(const XReal& a, const XReal& b) { return Interval(a, b, false, true); }

  bool empty() const {
    if (lo > hi) return true;
    if (lo == hi) return !(lo_closed && hi_closed) || lo.is_infinite();
    return false;
  }
  bool is_point() const { return lo == hi && lo_closed && hi_closed; }

  Boundary start() const { return Boundary{lo, lo_closed ? -1 : +1}; }
  Boundary end() const { return Boundary{hi, hi_closed ? +1 : -1}; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed &&
           a.hi_closed == b.hi_closed;
  }

  std::string str() const {
    if (is_point()) return "{" + lo.str() + "}";
    return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() +
           (hi_closed ? "]" : ")");
  }
};

class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet whole_line() {
    return of({Interval(XReal::neg_inf(), XReal::pos_inf(), false, false)});
  }
  static IntervalSet of(const std::vector<Interval>& parts) {
    IntervalSet s;
    for (const auto& p : parts) s = unite(s, from_single(p));
    return s;
  }
  static IntervalSet single(const Interval& iv) { return from_single(iv); }

  bool is_empty() const { return bounds_.empty(); }
  std::size_t component_count() const { return bounds_.size() / 2; }

  std::vector<Interval> components() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < bounds_.size(); i += 2) {
      const Boundary& s = bounds_[i];
      const Boundary& e = bounds_[i + 1];
      out.push_back(Interval(s.v, e.v, s.side < 0, e.side > 0));
    }
    return out;
  }

  bool contains(const XReal& x) const {
    // x is inside iff an odd number of boundaries lie strictly before the
    // "at x" position, which sits between (x,-1) and (x,+1).
    std::size_t cnt = 0;
    for (const auto& b : bounds_) {
      if (b.v < x || (b.v == x && b.side < 0)) ++cnt;
      else break;
    }
    return cnt % 2 == 1;
  }

  friend IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
    return combine(a, b, /*want_depth=*/1);
  }
  friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    return combine(a, b, /*want_depth=*/2);
  }
  friend IntervalSet complement(const IntervalSet& a) {
    IntervalSet out;
    Boundary line_start{XReal::neg_inf(), +1}, line_end{XReal::pos_inf(), -1};
    std::vector<Boundary> flipped;
    flipped.push_back(line_start);
    for (const auto& b : a.bounds_) flipped.push_back(b);
    flipped.push_back(line_end);
    // Consecutive pairs now delimit the gaps; drop empty ones.
    for (std::size_t i = 0; i + 1 < flipped.size(); i += 2) {
      if (flipped[i] < flipped[i + 1]) {
        out.bounds_.push_back(flipped[i]);
        out.bounds_.push_back(flipped[i + 1]);
      }
    }
    return out;
  }
  friend IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
    return intersect(a, complement(b));
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.bounds_ == b.bounds_;
  }
  friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

  bool is_subset_of(const IntervalSet& o) const { return intersect(*this, o) == *this; }

  std::string str() const {
    if (is_empty()) return "{}";
    std::string out;
    for (const auto& c : components()) {
      if (!out.empty()) out += " u ";
      out += c.str();
    }
    return out;
  }

 private:
  static IntervalSet from_single(const Interval& iv) {
    IntervalSet s;
    if (!iv.empty()) {
      s.bounds_.push_back(iv.start());
      s.bounds_.push_back(iv.end());
    }
    return s;
  }

  // Sweep over boundary events; starts at equal boundaries are processed
  // before ends so that touching components merge.
  static IntervalSet combine(const IntervalSet& a, const IntervalSet& b, int want_depth) {
    struct Event {
      Boundary at;
      int delta;
    };
    std::vector<Event> ev;
    auto push = [&ev](const std::vector<Boundary>& bs) {
      for (std::size_t i = 0; i < bs.size(); ++i)
        ev.push_back({bs[i], i % 2 == 0 ? +1 : -1});
    };
    push(a.bounds_);
    push(b.bounds_);
    std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) {
      if (x.at == y.at) return x.delta > y.delta;
      return x.at < y.at;
    });
    IntervalSet out;
    int depth = 0;
    for (const auto& e : ev) {
      int next = depth + e.delta;
      if (depth < want_depth && next >= want_depth) out.bounds_.push_back(e.at);
      if (depth >= want_depth && next < want_depth) out.bounds_.push_back(e.at);
      depth = next;
    }
    // Merge touching components (end boundary equal to the next start).
    std::vector<Boundary> merged;
    for (std::size_t i = 0; i < out.bounds_.size(); i += 2) {
      if (!merged.empty() && merged.back() == out.bounds_[i]) {
        merged.back() = out.bounds_[i + 1];
      } else {
        merged.push_back(out.bounds_[i]);
        merged.push_back(out.bounds_[i + 1]);
      }
    }
    out.bounds_ = std::move(merged);
    return out;
  }

  std::vector<Boundary> bounds_;
};

}  // namespace measurekit
