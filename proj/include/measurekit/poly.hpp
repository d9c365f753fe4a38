// Rational-coefficient polynomials and expolynomials p(x) * exp(r*x).
// Expolynomials are closed under products and antiderivatives, which is
// what the Stieltjes layer integrates symbolically.

#pragma once

#include "measurekit/xreal.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace measurekit {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& v) { return Poly({v}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  double operator()(double x) const {
    double acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].convert_to<double>();
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (Rat(-1) * b); }
  friend Poly operator*(const Rat& s, const Poly& p) {
    std::vector<Rat> c = p.c_;
    for (auto& v : c) v *= s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rat(BigInt(i)) * c_[i];
    return Poly(std::move(c));
  }
  Poly antiderivative() const {
    if (is_zero()) return Poly();
    std::vector<Rat> c(c_.size() + 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / Rat(BigInt(i + 1));
    return Poly(std::move(c));
  }
  // p(s*x + t)
  Poly compose_affine(const Rat& s, const Rat& t) const {
    Poly acc;
    Poly aff({t, s});
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * aff + Poly::constant(c_[i]);
    return acc;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero() && c_.size() > 1) continue;
      if (!out.empty()) out += " + ";
      out += rat_str(c_[i]);
      if (i == 1) out += "*x";
      else if (i > 1) out += "*x^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// p(x) * exp(rate * x).  rate == 0 is the exact polynomial layer.
struct Expoly {
  Poly poly;
  Rat rate;

  Expoly() = default;
  Expoly(Poly p, Rat r = Rat(0)) : poly(std::move(p)), rate(std::move(r)) {
    if (poly.is_zero()) rate = Rat(0);
  }
  static Expoly constant(const Rat& v) { return Expoly(Poly::constant(v)); }

  bool is_zero() const { return poly.is_zero(); }
  bool is_polynomial() const { return rate.is_zero(); }

  double operator()(double x) const {
    return poly(x) * (rate.is_zero() ? 1.0 : std::exp(rate.convert_to<double>() * x));
  }
  // Exact value when representable: always for the polynomial layer, and at
  // x = 0 or zeros of p otherwise.
  std::optional<Rat> exact_at(const Rat& x) const {
    if (is_polynomial()) return poly(x);
    Rat px = poly(x);
    if (px.is_zero()) return Rat(0);
    if (x.is_zero()) return px;
    return std::nullopt;
  }

  friend Expoly operator*(const Expoly& a, const Expoly& b) {
    return Expoly(a.poly * b.poly, a.rate + b.rate);
  }
  friend Expoly operator*(const Rat& s, const Expoly& e) { return Expoly(s * e.poly, e.rate); }
  friend Expoly operator+(const Expoly& a, const Expoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.rate != b.rate)
      throw std::domain_error("Expoly: sum of different rates is not an expolynomial");
    return Expoly(a.poly + b.poly, a.rate);
  }
  friend bool operator==(const Expoly& a, const Expoly& b) {
    return a.poly == b.poly && (a.is_zero() || a.rate == b.rate);
  }

  // Antiderivative, again an expolynomial: for rate r != 0, repeated
  // integration by parts gives exp(rx) * sum_k (-1)^k p^(k)(x) / r^(k+1).
  Expoly antiderivative() const {
    if (is_polynomial()) return Expoly(poly.antiderivative());
    Poly q;
    Poly der = poly;
    Rat r_pow = rate;
    int sign = 1;
    while (!der.is_zero()) {
      q = q + Rat(sign) / r_pow * der;
      der = der.derivative();
      r_pow *= rate;
      sign = -sign;
    }
    return Expoly(q, rate);
  }

  // e(s*y + t), an expolynomial in y up to the constant factor exp(rate*t):
  // only valid exactly when rate*t = 0; the affine substitutions used by the
  // monotone push-forward shift inside the polynomial part instead.
  Expoly compose_affine(const Rat& s, const Rat& t) const {
    if (is_polynomial()) return Expoly(poly.compose_affine(s, t));
    if (!t.is_zero())
      throw std::domain_error("Expoly::compose_affine: exponential shift is not rational");
    return Expoly(poly.compose_affine(s, t), rate * s);
  }

  std::string str() const {
    if (is_polynomial()) return poly.str();
    return "(" + poly.str() + ")*exp(" + rat_str(rate) + "*x)";
  }
};

}  // namespace measurekit
