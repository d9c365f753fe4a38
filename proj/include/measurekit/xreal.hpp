// Exact scalar arithmetic on the extended rationals [-inf, inf].
//
// Finite values are arbitrary-precision rationals kept in lowest terms.
// The conventions 0 * (+-inf) = 0 and inf + (-inf) = 0 are built in; the
// latter is reported through the *_flagged variants so that integral code
// can reject ill-defined expressions instead of silently using it.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace measurekit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_argument_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

class XReal {
 public:
  enum class Kind : std::uint8_t { Finite, PosInf, NegInf };

  XReal() : kind_(Kind::Finite), v_(0) {}
  XReal(const Rat& v) : kind_(Kind::Finite), v_(v) {}
  XReal(Rat&& v) : kind_(Kind::Finite), v_(std::move(v)) {}
  XReal(long long n) : kind_(Kind::Finite), v_(n) {}
  XReal(int n) : kind_(Kind::Finite), v_(n) {}

  static XReal pos_inf() { return XReal(Kind::PosInf); }
  static XReal neg_inf() { return XReal(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_infinite() const { return kind_ != Kind::Finite; }

  // Precondition: is_finite().
  const Rat& value() const {
    if (!is_finite()) throw std::logic_error("XReal::value on infinite value");
    return v_;
  }

  int sign() const {
    if (is_pos_inf()) return 1;
    if (is_neg_inf()) return -1;
    return v_.sign();
  }

  friend bool operator==(const XReal& a, const XReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.v_ == b.v_);
  }
  friend bool operator!=(const XReal& a, const XReal& b) { return !(a == b); }

  // Total order with -inf < finite < +inf.
  friend bool operator<(const XReal& a, const XReal& b) {
    if (a.kind_ == b.kind_)
      return a.kind_ == Kind::Finite ? a.v_ < b.v_ : false;
    if (a.is_neg_inf()) return true;
    if (b.is_neg_inf()) return false;
    return b.is_pos_inf();
  }
  friend bool operator>(const XReal& a, const XReal& b) { return b < a; }
  friend bool operator<=(const XReal& a, const XReal& b) { return !(b < a); }
  friend bool operator>=(const XReal& a, const XReal& b) { return !(a < b); }

  // a + b, flagging whether the inf + (-inf) := 0 convention fired.
  static std::pair<XReal, bool> add_flagged(const XReal& a, const XReal& b) {
    if (a.is_finite() && b.is_finite()) return {XReal(a.v_ + b.v_), false};
    if (a.is_infinite() && b.is_infinite() && a.kind_ != b.kind_)
      return {XReal(0), true};
    return {a.is_infinite() ? a : b, false};
  }

  friend XReal operator+(const XReal& a, const XReal& b) {
    return add_flagged(a, b).first;
  }

  friend XReal operator-(const XReal& a) {
    switch (a.kind_) {
      case Kind::PosInf: return neg_inf();
      case Kind::NegInf: return pos_inf();
      default: return XReal(-a.v_);
    }
  }

  friend XReal operator-(const XReal& a, const XReal& b) { return a + (-b); }

  // 0 * (+-inf) = 0; otherwise a * inf = sgn(a) * inf.
  friend XReal operator*(const XReal& a, const XReal& b) {
    if (a.is_finite() && b.is_finite()) return XReal(a.v_ * b.v_);
    int s = a.sign() * b.sign();
    if (s == 0) return XReal(0);
    return s > 0 ? pos_inf() : neg_inf();
  }

  // Division with 0/0 := 0 (canonical choice used by per-atom density
  // ratios).  finite/inf = 0; inf/finite = sign-adjusted inf.
  // inf/inf and x/0 for x != 0 are rejected.
  friend XReal operator/(const XReal& a, const XReal& b) {
    if (b.is_infinite()) {
      if (a.is_infinite()) throw std::domain_error("XReal: inf/inf");
      return XReal(0);
    }
    if (b.v_.is_zero()) {
      if (a.is_finite() && a.v_.is_zero()) return XReal(0);
      throw std::domain_error("XReal: division by zero");
    }
    if (a.is_infinite())
      return a.sign() * b.sign() > 0 ? pos_inf() : neg_inf();
    return XReal(a.v_ / b.v_);
  }

  XReal& operator+=(const XReal& o) { return *this = *this + o; }
  XReal& operator*=(const XReal& o) { return *this = *this * o; }
  XReal& operator-=(const XReal& o) { return *this = *this - o; }

  XReal abs() const { return is_neg_inf() || (is_finite() && v_.sign() < 0) ? -*this : *this; }
  XReal pos_part() const { return *this > XReal(0) ? *this : XReal(0); }
  XReal neg_part() const { return (-*this).pos_part(); }

  // floor with floor(+-inf) := +-inf.
  XReal floor() const {
    if (is_infinite()) return *this;
    BigInt num = numerator(v_), den = denominator(v_);
    BigInt q = num / den;
    if (num.sign() < 0 && q * den != num) --q;
    return XReal(Rat(q));
  }

  double to_double() const {
    if (is_pos_inf()) return std::numeric_limits<double>::infinity();
    if (is_neg_inf()) return -std::numeric_limits<double>::infinity();
    return v_.convert_to<double>();
  }

  // "p/q" (or "p" when integral), "inf", "-inf".
  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    if (denominator(v_) == 1) return numerator(v_).str();
    return numerator(v_).str() + "/" + denominator(v_).str();
  }

  static XReal parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    try {
      return XReal(Rat(s));
    } catch (const std::exception&) {
      throw parse_error("not an extended rational: '" + s + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const XReal& x) {
    return os << x.str();
  }

 private:
  explicit XReal(Kind k) : kind_(k), v_(0) {}

  Kind kind_;
  Rat v_;
};

inline XReal min(const XReal& a, const XReal& b) { return a < b ? a : b; }
inline XReal max(const XReal& a, const XReal& b) { return a < b ? b : a; }

inline Rat rat_parse(const std::string& s) {
  XReal x = XReal::parse(s);
  if (!x.is_finite()) throw parse_error("expected a finite rational: '" + s + "'");
  return x.value();
}

inline std::string rat_str(const Rat& v) { return XReal(v).str(); }

// --- exact root brackets -----------------------------------------------

// Largest n >= 0 with n^k <= x.  Requires x >= 0, k >= 1.
inline BigInt int_root_floor(const BigInt& x, unsigned k) {
  if (x.sign() < 0) throw std::domain_error("int_root_floor: negative radicand");
  if (k == 0) throw std::domain_error("int_root_floor: zeroth root");
  if (x == 0 || x == 1 || k == 1) return x;
  BigInt lo = 0, hi = BigInt(1) << (static_cast<unsigned>(msb(x)) / k + 1);
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (pow(mid, k) <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

inline Rat rat_pow_int(const Rat& base, long long e) {
  if (e == 0) return Rat(1);
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long long n = e > 0 ? static_cast<unsigned long long>(e)
                               : static_cast<unsigned long long>(-e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// Exact enclosure of a nonnegative rational quantity.  lo == hi means the
// value is known exactly.
struct RatBracket {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
};

// Bracket of x^(1/k) for x >= 0 with width <= tol; collapses to the exact
// value when x is a perfect k-th power of a rational.
inline RatBracket root_bracket(const Rat& x, unsigned k, const Rat& tol) {
  if (x.sign() < 0) throw std::domain_error("root_bracket: negative radicand");
  BigInt num = numerator(x), den = denominator(x);
  BigInt rn = int_root_floor(num, k), rd = int_root_floor(den, k);
  if (pow(rn, k) == num && pow(rd, k) == den) {
    Rat v(rn, rd);
    return {v, v};
  }
  // Bisect on [lo, hi] starting from an integer-root enclosure.
  Rat lo(rn, rd + 1), hi(rn + 1, rd == 0 ? 1 : rd);
  if (rat_pow_int(lo, k) > x) lo = 0;
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    if (rat_pow_int(mid, k) <= x) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

// Bracket of x^(p) for x >= 0 and positive rational exponent p = m/k.
inline RatBracket pow_bracket(const Rat& x, const Rat& p, const Rat& tol) {
  if (p.sign() <= 0) throw std::domain_error("pow_bracket: exponent must be positive");
  long long m = numerator(p).convert_to<long long>();
  unsigned k = denominator(p).convert_to<unsigned>();
  return root_bracket(rat_pow_int(x, m), k, tol);
}

}  // namespace measurekit
