// The real-line layer: Lebesgue-Stieltjes measures from piecewise CDF
// specifications, outer measures and Caratheodory splitting over the
// interval algebra, quantile functions, and Stieltjes integration.
//
// Exactness is layered: jumps and polynomial density pieces evaluate in
// exact rational arithmetic; expression pieces p(x)*exp(r*x) integrate
// symbolically but evaluate in double precision, and every value carries
// its provenance.

#pragma once

#include "measurekit/interval.hpp"
#include "measurekit/poly.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace measurekit {

struct stieltjes_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A real quantity that is either exactly known or carried as a double from
// the numeric layer (closed-form antiderivatives evaluated in floating
// point; documented tolerance 1e-10 relative).
struct RealValue {
  bool exact = true;
  XReal xval;
  double approx = 0.0;

  RealValue() : xval(0) {}
  RealValue(XReal v) : exact(true), xval(std::move(v)), approx(xval.to_double()) {}
  static RealValue numeric(double d) {
    RealValue r;
    r.exact = false;
    r.approx = d;
    return r;
  }

  friend RealValue operator+(const RealValue& a, const RealValue& b) {
    if (a.exact && b.exact) return RealValue(a.xval + b.xval);
    return numeric(a.approx + b.approx);
  }
  friend RealValue operator-(const RealValue& a, const RealValue& b) {
    if (a.exact && b.exact) return RealValue(a.xval - b.xval);
    return numeric(a.approx - b.approx);
  }
  friend RealValue operator*(const RealValue& a, const RealValue& b) {
    if (a.exact && b.exact) return RealValue(a.xval * b.xval);
    return numeric(a.approx * b.approx);
  }
  RealValue& operator+=(const RealValue& o) { return *this = *this + o; }

  bool close_to(const RealValue& o, double tol = 1e-9) const {
    if (exact && o.exact) return xval == o.xval;
    return std::abs(approx - o.approx) <= tol * (1.0 + std::abs(approx));
  }
  std::string str() const { return exact ? xval.str() : std::to_string(approx); }
};

// One density piece, living on the open interval (from, to).
struct DensityPiece {
  XReal from, to;
  Expoly density;

  DensityPiece() : from(0), to(0) {}
  DensityPiece(XReal f, XReal t, Expoly d)
      : from(std::move(f)), to(std::move(t)), density(std::move(d)) {
    if (!(from < to)) throw invalid_argument_error("DensityPiece: need from < to");
  }
  bool is_exact_layer() const { return density.is_polynomial(); }
  bool is_constant() const { return density.is_polynomial() && density.poly.degree() == 0; }

  friend bool operator==(const DensityPiece& a, const DensityPiece& b) {
    return a.from == b.from && a.to == b.to && a.density == b.density;
  }
};

// Piecewise specification of a right-continuous nondecreasing F.  F is
// anchored by F(0) = offset; the induced measure depends on increments only.
class CdfSpec {
 public:
  CdfSpec() = default;
  CdfSpec(std::vector<Rat> jump_points, std::vector<Rat> jump_sizes,
          std::vector<DensityPiece> pieces, Rat offset = Rat(0))
      : jump_points_(std::move(jump_points)),
        jump_sizes_(std::move(jump_sizes)),
        pieces_(std::move(pieces)),
        offset_(std::move(offset)) {
    validate();
  }

  static CdfSpec lebesgue() {
    return CdfSpec({}, {}, {DensityPiece(XReal::neg_inf(), XReal::pos_inf(),
                                         Expoly::constant(Rat(1)))});
  }
  // Distribution-function anchoring: offset = mass of (-inf, 0].
  static CdfSpec point_mass(const Rat& at, const Rat& size = Rat(1)) {
    return CdfSpec({at}, {size}, {}, at.sign() <= 0 ? size : Rat(0));
  }
  static CdfSpec exponential(const Rat& lambda) {
    if (lambda.sign() <= 0) throw invalid_argument_error("exponential: rate must be positive");
    return CdfSpec({}, {},
                   {DensityPiece(XReal(0), XReal::pos_inf(),
                                 Expoly(Poly::constant(lambda), Rat(-lambda)))});
  }

  const std::vector<Rat>& jump_points() const { return jump_points_; }
  const std::vector<Rat>& jump_sizes() const { return jump_sizes_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  const Rat& offset() const { return offset_; }

  bool exact_layer() const {
    for (const auto& p : pieces_)
      if (!p.is_exact_layer()) return false;
    return true;
  }
  bool constant_layer() const {
    for (const auto& p : pieces_)
      if (!p.is_constant()) return false;
    return true;
  }

  Rat jump_at(const Rat& x) const {
    auto it = std::lower_bound(jump_points_.begin(), jump_points_.end(), x);
    if (it != jump_points_.end() && *it == x)
      return jump_sizes_[static_cast<std::size_t>(it - jump_points_.begin())];
    return Rat(0);
  }

  // Mass of (a, b] for boundaries a <= b (the generic increment used by
  // every other evaluation; boundary sides select whether the endpoints'
  // jumps are counted).
  RealValue increment(const Boundary& a, const Boundary& b) const {
    if (b < a || a == b) return RealValue(XReal(0));
    RealValue total{XReal(0)};
    for (std::size_t i = 0; i < jump_points_.size(); ++i) {
      // The jump at x sits between (x,-1) and (x,+1).
      Boundary at{XReal(jump_points_[i]), 0};
      if (a < at && at < b) total += RealValue(XReal(jump_sizes_[i]));
    }
    for (const auto& p : pieces_) {
      XReal lo = max(p.from, a.v), hi = min(p.to, b.v);
      // The open piece contributes over (lo, hi); endpoint sides do not
      // matter for the absolutely continuous part.
      if (lo < hi) total += piece_mass(p, lo, hi);
    }
    return total;
  }

  RealValue measure_interval(const Interval& iv) const {
    if (iv.empty()) return RealValue(XReal(0));
    return increment(iv.start(), iv.end());
  }

  // F(x) anchored at F(0) = offset.
  RealValue cdf(const Rat& x) const {
    Boundary zero{XReal(0), +1}, at{XReal(x), +1};
    if (x.sign() >= 0) return RealValue(XReal(offset_)) + increment(zero, at);
    return RealValue(XReal(offset_)) - increment(at, zero);
  }
  RealValue cdf_left_limit(const Rat& x) const {
    return cdf(x) - RealValue(XReal(jump_at(x)));
  }

  // Total mass and the mass of (-inf, x]; infinite values stay exact.
  RealValue total_mass() const {
    return increment(Boundary{XReal::neg_inf(), +1}, Boundary{XReal::pos_inf(), -1});
  }
  RealValue mass_up_to(const Boundary& b) const {
    return increment(Boundary{XReal::neg_inf(), +1}, b);
  }

  friend bool operator==(const CdfSpec& a, const CdfSpec& b) {
    return a.jump_points_ == b.jump_points_ && a.jump_sizes_ == b.jump_sizes_ &&
           a.pieces_ == b.pieces_ && a.offset_ == b.offset_;
  }

 private:
  void validate() const {
    if (jump_points_.size() != jump_sizes_.size())
      throw invalid_argument_error("CdfSpec: jump points and sizes must pair up");
    for (std::size_t i = 0; i + 1 < jump_points_.size(); ++i)
      if (!(jump_points_[i] < jump_points_[i + 1]))
        throw invalid_argument_error("CdfSpec: jump points must be strictly increasing");
    for (const auto& s : jump_sizes_)
      if (s.sign() <= 0) throw invalid_argument_error("CdfSpec: jumps must be positive");
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
      if (!(pieces_[i].to <= pieces_[i + 1].from))
        throw invalid_argument_error("CdfSpec: density pieces must be disjoint and sorted");
    // Light nonnegativity probe of each density on a sample grid.
    for (const auto& p : pieces_) {
      double lo = p.from.is_infinite() ? (p.to.is_infinite() ? -8.0 : p.to.to_double() - 8.0)
                                       : p.from.to_double();
      double hi = p.to.is_infinite() ? lo + 8.0 : p.to.to_double();
      for (int k = 1; k < 16; ++k) {
        double x = lo + (hi - lo) * k / 16.0;
        if (p.density(x) < -1e-12)
          throw invalid_argument_error("CdfSpec: density is negative near x = " +
                                       std::to_string(x));
      }
    }
  }

  // Integral of the density over (lo, hi) inside piece p.
  RealValue piece_mass(const DensityPiece& p, const XReal& lo, const XReal& hi) const {
    Expoly anti = p.density.antiderivative();
    auto eval = [&](const XReal& x, bool upper) -> RealValue {
      if (x.is_infinite()) {
        // Limits of q(x)exp(rx): zero when the exponential decays, infinite
        // when it grows or (polynomial case) when the polynomial does.
        const Expoly& e = anti;
        if (e.is_zero()) return RealValue(XReal(0));
        int to_sign = x.is_pos_inf() ? 1 : -1;
        if (!e.is_polynomial()) {
          bool decays = (e.rate.sign() < 0) == (to_sign > 0);
          if (decays) return RealValue(XReal(0));
        }
        // Growing tail: the sign is the polynomial's sign toward that end.
        int lead = e.poly.leading().sign();
        int parity = (e.poly.degree() % 2 == 0 || to_sign > 0) ? 1 : -1;
        return RealValue(lead * parity > 0 ? XReal::pos_inf() : XReal::neg_inf());
      }
      (void)upper;
      if (auto ex = anti.exact_at(x.value())) return RealValue(XReal(*ex));
      return RealValue::numeric(anti(x.to_double()));
    };
    RealValue hi_v = eval(hi, true), lo_v = eval(lo, false);
    return hi_v - lo_v;
  }

  std::vector<Rat> jump_points_;
  std::vector<Rat> jump_sizes_;
  std::vector<DensityPiece> pieces_;
  Rat offset_;
};

// dF-measure of a canonical interval set: additive over components, with
// endpoint atoms handled through the boundary sides.
inline RealValue measure_set(const CdfSpec& f, const IntervalSet& s) {
  RealValue total{XReal(0)};
  for (const auto& c : s.components()) total += f.measure_interval(c);
  return total;
}

// --- outer measure and Caratheodory over the interval algebra -------------

// Premeasure on the half-open interval algebra.  The CDF-backed case is the
// Lebesgue-Stieltjes set function nu((a,b]) = F(b) - F(a); the pathological
// flag reattaches each jump on the wrong (left) side, producing an additive
// but not right-continuous set function for counterexample studies.
struct Premeasure {
  CdfSpec cdf;
  bool jumps_on_left = false;

  RealValue of_half_open(const Rat& a, const Rat& b) const {
    if (!(a < b)) return RealValue(XReal(0));
    Interval iv = Interval::half_open(XReal(a), XReal(b));
    RealValue v = cdf.measure_interval(iv);
    if (jumps_on_left) {
      // Shift endpoint jumps from b to a: counts jump(a), drops jump(b).
      v = v - RealValue(XReal(cdf.jump_at(b))) + RealValue(XReal(cdf.jump_at(a)));
    }
    return v;
  }
};

// Outer measure of a canonical interval set under a CDF-backed premeasure:
// the infimum over countable covers by half-open intervals is attained by
// shrinking covers onto each component, which lands on the same boundary
// rule as measure_set (right-continuity closes open right endpoints from
// the inside via countable unions, and left endpoints from the outside).
inline RealValue outer_measure(const Premeasure& nu, const IntervalSet& s) {
  if (nu.jumps_on_left)
    throw precondition_error(
        "outer_measure: cover optimization assumes a right-continuous premeasure");
  RealValue total{XReal(0)};
  for (const auto& c : s.components()) total += nu.cdf.measure_interval(c);
  return total;
}

struct SplitCase {
  IntervalSet test;
  RealValue whole, inside, outside;
  bool exact = true;
  bool passed = false;
};

struct CaratheodoryReport {
  std::vector<SplitCase> cases;
  bool all_passed() const {
    for (const auto& c : cases)
      if (!c.passed) return false;
    return true;
  }
};

// Splitting identity mu*(A) = mu*(A & E) + mu*(A \ E) for each test set.
inline CaratheodoryReport caratheodory_measurable(const Premeasure& nu, const IntervalSet& e,
                                                  const std::vector<IntervalSet>& tests,
                                                  double tol = 1e-9) {
  CaratheodoryReport rep;
  for (const auto& a : tests) {
    SplitCase c;
    c.test = a;
    c.whole = outer_measure(nu, a);
    c.inside = outer_measure(nu, intersect(a, e));
    c.outside = outer_measure(nu, difference(a, e));
    RealValue sum = c.inside + c.outside;
    c.exact = c.whole.exact && sum.exact;
    c.passed = c.whole.close_to(sum, tol);
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

struct RegularityWitness {
  Interval target;
  std::optional<Interval> shrunk;  // closure(shrunk) inside target, deficit <= eps
  RealValue deficit;
  bool ok = false;
};

struct RegularityReport {
  std::vector<RegularityWitness> witnesses;
  bool all_ok() const {
    for (const auto& w : witnesses)
      if (!w.ok) return false;
    return true;
  }
};

// Constructive inner regularity on the algebra over [0,1]: for each sample
// component (a,b] produce B = (a',b] with [a',b] inside (a,b] and
// nu((a,a']) <= eps, by right-continuity bisection toward a.  Fails (after
// max_steps) exactly when the premeasure is not right-continuous at a.
inline RegularityReport compact_regularity_check(const Premeasure& nu,
                                                 const std::vector<IntervalSet>& samples,
                                                 const Rat& eps, int max_steps = 64) {
  RegularityReport rep;
  for (const auto& s : samples) {
    for (const auto& comp : s.components()) {
      RegularityWitness w;
      w.target = comp;
      w.deficit = RealValue(XReal(0));
      if (comp.is_point()) {
        // Points are closed already; take B = the point itself.
        w.shrunk = comp;
        w.ok = true;
        rep.witnesses.push_back(std::move(w));
        continue;
      }
      if (comp.lo.is_infinite() || comp.hi.is_infinite() || comp.lo_closed || !comp.hi_closed) {
        w.ok = false;  // not an algebra member of the (a,b] form
        rep.witnesses.push_back(std::move(w));
        continue;
      }
      Rat a = comp.lo.value(), b = comp.hi.value();
      Rat step = (b - a) / 2;
      bool found = false;
      for (int k = 0; k < max_steps && !found; ++k) {
        Rat a2 = a + step;
        RealValue deficit = nu.of_half_open(a, a2);
        bool small_enough = deficit.exact ? deficit.xval <= XReal(eps)
                                          : deficit.approx <= eps.convert_to<double>() + 1e-12;
        if (small_enough) {
          w.shrunk = Interval(XReal(a2), XReal(b), false, true);
          w.deficit = deficit;
          found = true;
        }
        step /= 2;
      }
      w.ok = found;
      rep.witnesses.push_back(std::move(w));
    }
  }
  return rep;
}

// --- distribution functions and quantiles ---------------------------------

inline bool is_distribution_function(const CdfSpec& f) {
  RealValue m = f.total_mass();
  return m.exact ? m.xval == XReal(1) : std::abs(m.approx - 1.0) <= 1e-9;
}

// Smallest rational with small denominator inside [lo, hi] (Stern-Brocot).
inline Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw invalid_argument_error("simplest_rational_in: empty interval");
  BigInt lo_floor = numerator(lo) / denominator(lo);
  if (Rat(lo_floor) * denominator(lo) != Rat(numerator(lo)) && lo.sign() < 0) lo_floor -= 1;
  // integer in range?
  Rat ceil_lo(lo_floor);
  while (ceil_lo < lo) ceil_lo += 1;
  if (ceil_lo <= hi) return ceil_lo;
  // Both endpoints share the integer part; recurse on reciprocals.
  Rat fl = ceil_lo - 1;
  Rat inner = simplest_rational_in(Rat(1) / (hi - fl), Rat(1) / (lo - fl));
  return fl + Rat(1) / inner;
}

struct QuantileResult {
  RealValue value;
};

namespace detail {

// Solve A(x) = target on [lo, hi] for a nondecreasing polynomial A; exact
// for degree <= 2 with rational roots, otherwise attempts the simplest
// rational in a tight bracket before falling back to the numeric midpoint.
inline RealValue solve_monotone_poly(const Poly& a, const Rat& target, const Rat& lo,
                                     const Rat& hi) {
  Poly shifted = a - Poly::constant(target);
  if (shifted.degree() == 1 && !shifted.is_zero()) {
    return RealValue(XReal(Rat(-shifted.coeffs()[0] / shifted.coeffs()[1])));
  }
  if (shifted.degree() == 2) {
    Rat c0 = shifted.coeffs()[0], c1 = shifted.coeffs().size() > 1 ? shifted.coeffs()[1] : Rat(0),
        c2 = shifted.coeffs()[2];
    Rat disc = c1 * c1 - Rat(4) * c2 * c0;
    if (disc.sign() >= 0) {
      BigInt dn = numerator(disc), dd = denominator(disc);
      BigInt rn = int_root_floor(dn, 2), rd = int_root_floor(dd, 2);
      if (pow(rn, 2) == dn && pow(rd, 2) == dd) {
        Rat root(rn, rd);
        for (int sign : {-1, +1}) {
          Rat x = (-c1 + Rat(sign) * root) / (Rat(2) * c2);
          if (lo <= x && x <= hi && shifted(x).is_zero()) return RealValue(XReal(x));
        }
      }
    }
  }
  // Monotone bisection.
  Rat blo = lo, bhi = hi;
  Rat tol(1, BigInt("1000000000000"));
  for (int k = 0; k < 200 && bhi - blo > tol; ++k) {
    Rat mid = (blo + bhi) / 2;
    if (a(mid) < target) blo = mid;
    else bhi = mid;
  }
  if (blo < bhi) {
    Rat simple = simplest_rational_in(blo, bhi);
    if (a(simple) == target) return RealValue(XReal(simple));
  }
  return RealValue::numeric(((blo + bhi) / 2).convert_to<double>());
}

}  // namespace detail

// Quantile F^{<-}(u) = inf{ v : F(v) > u } for a distribution function,
// with F(v) the mass of (-inf, v].  Jump plateaus resolve to the point
// carrying the next mass, per the strict inequality in the definition.
inline QuantileResult quantile(const CdfSpec& f, const Rat& u) {
  if (!(Rat(0) < u && u < Rat(1)))
    throw precondition_error("quantile: u must lie in (0,1)");
  if (!is_distribution_function(f))
    throw precondition_error("quantile: spec is not a distribution function");

  struct Event {
    Rat at;            // jump location (point events)
    bool is_jump;
    std::size_t index; // into jumps or pieces
    XReal from;        // piece events: the open interval
    XReal to;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < f.jump_points().size(); ++i)
    events.push_back({f.jump_points()[i], true, i, XReal(0), XReal(0)});
  for (std::size_t i = 0; i < f.pieces().size(); ++i)
    events.push_back({Rat(0), false, i, f.pieces()[i].from, f.pieces()[i].to});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    XReal pa = a.is_jump ? XReal(a.at) : a.from;
    XReal pb = b.is_jump ? XReal(b.at) : b.from;
    if (pa != pb) return pa < pb;
    return a.is_jump && !b.is_jump;  // jump at a piece's left endpoint first
  });

  RealValue acc{XReal(0)};
  XReal target(u);
  for (const auto& ev : events) {
    if (ev.is_jump) {
      RealValue after = acc + RealValue(XReal(f.jump_sizes()[ev.index]));
      bool crosses = after.exact ? after.xval > target
                                 : after.approx > u.convert_to<double>() + 1e-15;
      if (crosses) return {RealValue(XReal(ev.at))};
      acc = after;
      continue;
    }
    const DensityPiece& p = f.pieces()[ev.index];
    RealValue mass = f.measure_interval(Interval(p.from, p.to, false, false));
    RealValue after = acc + mass;
    bool crosses = after.exact && acc.exact
                       ? after.xval > target
                       : after.approx > u.convert_to<double>() + 1e-15;
    if (!crosses) {
      acc = after;
      continue;
    }
    // The crossing happens inside this piece.
    if (acc.exact && p.is_exact_layer() && !p.from.is_infinite()) {
      Rat t = u - acc.xval.value();
      if (t.is_zero()) return {RealValue(p.from)};
      Poly anti = p.density.poly.antiderivative();
      Rat base = anti(p.from.value());
      Rat hi_end = p.to.is_infinite() ? p.from.value() + Rat(1) : p.to.value();
      if (p.to.is_infinite()) {
        while (anti(hi_end) - base < t) hi_end += 1;
      }
      return {detail::solve_monotone_poly(anti, base + t, p.from.value(), hi_end)};
    }
    // Numeric layer (or an unbounded-below piece): bisect on doubles.
    double ut = u.convert_to<double>();
    double lo = p.from.is_infinite() ? -1.0 : p.from.to_double();
    double hi = p.to.is_infinite() ? 1.0 : p.to.to_double();
    auto below = [&](double x) {
      return f.mass_up_to(Boundary{XReal(Rat(x)), +1}).approx < ut;
    };
    if (p.from.is_infinite())
      while (!below(lo)) lo *= 2;
    if (p.to.is_infinite())
      while (below(hi)) hi *= 2;
    for (int k = 0; k < 200 && hi - lo > 1e-14 * (1 + std::abs(lo)); ++k) {
      double mid = (lo + hi) / 2;
      (below(mid) ? lo : hi) = mid;
    }
    return {RealValue::numeric((lo + hi) / 2)};
  }
  throw stieltjes_error("quantile: ran past all mass (spec is not a distribution function)");
}

// --- exact push-forward of leb_(0,1) through the quantile ------------------

struct QuantileCouplingReport {
  bool exact = false;
  bool structural_equal = false;    // push-forward piece list == canonical dF
  bool battery_equal = false;       // increments agree on rational (a,b] battery
  std::string detail;
};

namespace detail {

struct CanonicalCdf {
  std::vector<std::pair<Rat, Rat>> jumps;                  // location -> size
  std::vector<std::tuple<Rat, Rat, Rat>> const_pieces;     // (from, to, density)

  friend bool operator==(const CanonicalCdf& a, const CanonicalCdf& b) {
    return a.jumps == b.jumps && a.const_pieces == b.const_pieces;
  }
};

// Positive constant-density pieces split at interior jump locations, so a
// piece never straddles a jump.
inline std::vector<std::tuple<Rat, Rat, Rat>> split_constant_pieces(const CdfSpec& f) {
  std::vector<std::tuple<Rat, Rat, Rat>> out;
  for (const auto& p : f.pieces()) {
    if (!p.is_constant()) throw precondition_error("expected a constant-density layer");
    Rat c = p.density.poly.is_zero() ? Rat(0) : p.density.poly.coeffs()[0];
    if (c.is_zero()) continue;
    if (p.from.is_infinite() || p.to.is_infinite())
      throw precondition_error("quantile coupling needs bounded density pieces");
    Rat a = p.from.value(), b = p.to.value();
    std::vector<Rat> cuts{a};
    for (const auto& x : f.jump_points())
      if (a < x && x < b) cuts.push_back(x);
    cuts.push_back(b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      out.emplace_back(cuts[i], cuts[i + 1], c);
  }
  return out;
}

// Canonical jump + constant-density structure: zero pieces dropped, pieces
// split at jumps, adjacent equal-density pieces merged when no jump or gap
// separates them.
inline CanonicalCdf canonicalize_constant_layer(const CdfSpec& f) {
  CanonicalCdf out;
  for (std::size_t i = 0; i < f.jump_points().size(); ++i)
    out.jumps.emplace_back(f.jump_points()[i], f.jump_sizes()[i]);
  for (const auto& [a, b, c] : split_constant_pieces(f)) {
    if (!out.const_pieces.empty()) {
      auto& [pa, pb, pc] = out.const_pieces.back();
      if (pb == a && pc == c && f.jump_at(a).is_zero()) {
        pb = b;
        continue;
      }
    }
    out.const_pieces.emplace_back(a, b, c);
  }
  return out;
}

}  // namespace detail

// For an exact-layer distribution function (jumps + constant densities),
// computes the push-forward of leb_(0,1) through the quantile symbolically
// and compares it with dF: each jump of size j contributes a u-plateau of
// length j mapping to a point mass; each constant piece of density c > 0
// maps an affine u-interval back onto the piece with density c.
inline QuantileCouplingReport quantile_pushforward_check(const CdfSpec& f) {
  QuantileCouplingReport rep;
  if (!f.constant_layer())
    throw precondition_error("quantile_pushforward_check: expression pieces present");
  if (!is_distribution_function(f))
    throw precondition_error("quantile_pushforward_check: not a distribution function");
  rep.exact = true;

  // Walk the mass in u-space, exactly as the quantile sees it: each event
  // occupies a u-interval of length its mass; jumps map their u-interval to
  // the jump point, density pieces map theirs back affinely.
  struct UEvent {
    Rat position;  // left end on the x-axis
    bool is_jump;
    Rat a, b, c;   // jumps: size in c; pieces: (a, b) with density c
  };
  std::vector<UEvent> events;
  for (std::size_t i = 0; i < f.jump_points().size(); ++i)
    events.push_back({f.jump_points()[i], true, Rat(0), Rat(0), f.jump_sizes()[i]});
  for (const auto& [a, b, c] : detail::split_constant_pieces(f))
    events.push_back({a, false, a, b, c});
  std::sort(events.begin(), events.end(), [](const UEvent& x, const UEvent& y) {
    if (x.position != y.position) return x.position < y.position;
    return x.is_jump && !y.is_jump;
  });

  detail::CanonicalCdf pushed;
  Rat acc(0);
  for (const auto& ev : events) {
    if (ev.is_jump) {
      // u in [acc, acc + j) has its quantile constantly at the jump point.
      pushed.jumps.emplace_back(ev.position, ev.c);
      acc += ev.c;
      continue;
    }
    Rat mass = ev.c * (ev.b - ev.a);
    // u in (acc, acc + mass) maps to x = a + (u - acc)/c: an affine image
    // of Lebesgue measure with slope 1/c, i.e. density c on the image
    // interval computed from the map itself.
    Rat img_lo = ev.a;
    Rat img_hi = ev.a + mass / ev.c;
    acc += mass;
    bool merged = false;
    if (!pushed.const_pieces.empty()) {
      auto& [pa, pb, pc] = pushed.const_pieces.back();
      if (pb == img_lo && pc == ev.c && f.jump_at(img_lo).is_zero()) {
        pb = img_hi;
        merged = true;
      }
    }
    if (!merged) pushed.const_pieces.emplace_back(img_lo, img_hi, ev.c);
  }

  rep.structural_equal = detail::canonicalize_constant_layer(f) == pushed;

  // Semantic battery: increments over rational (a,b] spanning all
  // breakpoints, comparing the push-forward mass computed from the pieces
  // against dF((a,b]).
  std::vector<Rat> grid{Rat(-1000000), Rat(1000000)};
  for (const auto& [x, j] : pushed.jumps) {
    grid.push_back(x);
    grid.push_back(x - Rat(1, 3));
    grid.push_back(x + Rat(1, 3));
    (void)j;
  }
  for (const auto& [a, b, c] : pushed.const_pieces) {
    grid.push_back(a);
    grid.push_back(b);
    grid.push_back((a + b) / 2);
    (void)c;
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto pushed_mass = [&](const Rat& a, const Rat& b) {
    Rat m(0);
    for (const auto& [x, j] : pushed.jumps)
      if (a < x && x <= b) m += j;
    for (const auto& [pa, pb, c] : pushed.const_pieces) {
      Rat lo = std::max(pa, a), hi = std::min(pb, b);
      if (lo < hi) m += c * (hi - lo);
    }
    return m;
  };
  rep.battery_equal = true;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t k = i + 1; k < grid.size(); ++k) {
      RealValue direct = f.measure_interval(Interval::half_open(XReal(grid[i]), XReal(grid[k])));
      if (!(direct.exact && direct.xval == XReal(pushed_mass(grid[i], grid[k])))) {
        rep.battery_equal = false;
        rep.detail = "mismatch on (" + rat_str(grid[i]) + "," + rat_str(grid[k]) + "]";
      }
    }
  return rep;
}

// --- Stieltjes integration -------------------------------------------------

// Piecewise expolynomial integrand; zero outside its pieces.
struct PiecewiseExpoly {
  std::vector<std::pair<Interval, Expoly>> pieces;

  static PiecewiseExpoly mono(const Interval& on, Expoly e) {
    PiecewiseExpoly f;
    f.pieces.emplace_back(on, std::move(e));
    return f;
  }
  static PiecewiseExpoly polynomial(const Interval& on, Poly p) {
    return mono(on, Expoly(std::move(p)));
  }

  RealValue at(const Rat& x) const {
    for (const auto& [iv, e] : pieces)
      if (IntervalSet::single(iv).contains(XReal(x))) {
        if (auto ex = e.exact_at(x)) return RealValue(XReal(*ex));
        return RealValue::numeric(e(x.convert_to<double>()));
      }
    return RealValue(XReal(0));
  }

  friend bool operator==(const PiecewiseExpoly& a, const PiecewiseExpoly& b) {
    return a.pieces == b.pieces;
  }
};

// integral of f dF = sum over jumps of f(x) * jump(x) + sum over density
// pieces of the symbolic antiderivative of f * density.
inline RealValue integrate_stieltjes(const PiecewiseExpoly& f, const CdfSpec& g) {
  RealValue total{XReal(0)};
  for (std::size_t i = 0; i < g.jump_points().size(); ++i)
    total += f.at(g.jump_points()[i]) * RealValue(XReal(g.jump_sizes()[i]));

  for (const auto& piece : g.pieces()) {
    for (const auto& [iv, e] : f.pieces) {
      XReal lo = max(piece.from, iv.lo), hi = min(piece.to, iv.hi);
      if (!(lo < hi)) continue;
      Expoly product = e * piece.density;
      if (product.is_zero()) continue;
      Expoly anti = product.antiderivative();
      auto eval = [&](const XReal& x, int at_sign) -> RealValue {
        if (x.is_infinite()) {
          if (anti.is_polynomial()) {
            if (anti.poly.is_zero()) return RealValue(XReal(0));
            int lead = anti.poly.leading().sign();
            int par = (anti.poly.degree() % 2 == 0 || at_sign > 0) ? 1 : -1;
            return RealValue(lead * par > 0 ? XReal::pos_inf() : XReal::neg_inf());
          }
          bool decays = (anti.rate.sign() < 0) == (at_sign > 0);
          if (decays) return RealValue(XReal(0));
          throw stieltjes_error("integrate_stieltjes: divergent expolynomial tail");
        }
        if (auto ex = anti.exact_at(x.value())) return RealValue(XReal(*ex));
        return RealValue::numeric(anti(x.to_double()));
      };
      total += eval(hi, +1) - eval(lo, -1);
    }
  }
  return total;
}

// --- push-forward of dF through a strictly increasing piecewise-linear G ---

// Strictly increasing piecewise-linear map given by knots; affine
// extrapolation with the end slopes outside the knot range.
struct PiecewiseLinearMap {
  std::vector<Rat> xs, ys;  // strictly increasing knots
  Rat left_slope, right_slope;

  PiecewiseLinearMap(std::vector<Rat> x, std::vector<Rat> y, Rat ls, Rat rs)
      : xs(std::move(x)), ys(std::move(y)), left_slope(std::move(ls)), right_slope(std::move(rs)) {
    if (xs.size() != ys.size() || xs.empty())
      throw invalid_argument_error("PiecewiseLinearMap: need matching nonempty knots");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (!(xs[i] < xs[i + 1]) || !(ys[i] < ys[i + 1]))
        throw invalid_argument_error("PiecewiseLinearMap: knots must strictly increase");
    }
    if (left_slope.sign() <= 0 || right_slope.sign() <= 0)
      throw invalid_argument_error("PiecewiseLinearMap: end slopes must be positive");
  }
  static PiecewiseLinearMap identity() {
    return PiecewiseLinearMap({Rat(0)}, {Rat(0)}, Rat(1), Rat(1));
  }
  static PiecewiseLinearMap affine(const Rat& slope, const Rat& shift) {
    if (slope.sign() <= 0) throw invalid_argument_error("affine: slope must be positive");
    return PiecewiseLinearMap({Rat(0)}, {shift}, slope, slope);
  }

  // slope and intercept on the cell containing x.
  std::pair<Rat, Rat> cell_at(const Rat& x) const {
    if (x < xs.front()) return {left_slope, ys.front() - left_slope * xs.front()};
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (x < xs[i + 1]) {
        Rat s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        return {s, ys[i] - s * xs[i]};
      }
    return {right_slope, ys.back() - right_slope * xs.back()};
  }
  Rat operator()(const Rat& x) const {
    auto [s, t] = cell_at(x);
    return s * x + t;
  }
  XReal apply(const XReal& x) const {
    if (x.is_infinite()) return x;
    return XReal((*this)(x.value()));
  }
  std::vector<Rat> cuts() const { return xs; }
};

// CDF of the image measure G_*(dF): jumps move to G(x); a density piece
// with density d(x) on an affine cell y = s*x + t becomes density
// d((y-t)/s)/s on the image interval.
inline CdfSpec pushforward_monotone(const CdfSpec& f, const PiecewiseLinearMap& g) {
  std::vector<Rat> jp;
  std::vector<Rat> js;
  for (std::size_t i = 0; i < f.jump_points().size(); ++i) {
    jp.push_back(g(f.jump_points()[i]));
    js.push_back(f.jump_sizes()[i]);
  }
  std::vector<DensityPiece> pieces;
  for (const auto& p : f.pieces()) {
    // Split the piece at the map's knots.
    std::vector<XReal> cuts{p.from};
    for (const auto& k : g.cuts())
      if (p.from < XReal(k) && XReal(k) < p.to) cuts.push_back(XReal(k));
    cuts.push_back(p.to);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      XReal mid_ref = cuts[i].is_infinite()
                          ? (cuts[i + 1].is_infinite() ? XReal(0) : cuts[i + 1] - XReal(1))
                          : (cuts[i + 1].is_infinite() ? cuts[i] + XReal(1)
                                                       : (cuts[i] + cuts[i + 1]) * XReal(Rat(1, 2)));
      auto [s, t] = g.cell_at(mid_ref.value());
      // d((y - t)/s) / s
      Expoly image_density =
          Rat(1) / s * p.density.compose_affine(Rat(1) / s, Rat(-t) / s);
      pieces.push_back(DensityPiece(g.apply(cuts[i]), g.apply(cuts[i + 1]), image_density));
    }
  }
  return CdfSpec(std::move(jp), std::move(js), std::move(pieces));
}

}  // namespace measurekit
