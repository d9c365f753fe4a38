#include "measurekit/xreal.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>

using measurekit::Rat;
using measurekit::RatBracket;
using measurekit::XReal;

namespace {

// Long-hand fraction arithmetic on int64 pairs, independent of the
// multiprecision backend.  Inputs stay small enough not to overflow.
struct Frac {
  long long num, den;
  Frac(long long n, long long d) : num(n), den(d) {
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
};
Frac frac_add(Frac a, Frac b) { return Frac(a.num * b.den + b.num * a.den, a.den * b.den); }
Frac frac_mul(Frac a, Frac b) { return Frac(a.num * b.num, a.den * b.den); }
XReal xr(Frac f) { return XReal(Rat(f.num, f.den)); }

struct Lcg {
  std::uint64_t s;
  std::uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
  long long in_range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Frac frac() { return Frac(in_range(-40, 40), in_range(1, 12)); }
};

const XReal inf = XReal::pos_inf();
const XReal ninf = XReal::neg_inf();

}  // namespace

TEST_CASE("convention arithmetic") {
  CHECK(inf + ninf == XReal(0));
  CHECK(ninf + inf == XReal(0));
  CHECK(XReal::add_flagged(inf, ninf).second);
  CHECK_FALSE(XReal::add_flagged(inf, XReal(3)).second);

  CHECK(XReal(Rat(2, 3)) + XReal(Rat(1, 3)) == XReal(1));
  CHECK(ninf + XReal(5) == ninf);
  CHECK(XReal(5) + inf == inf);

  CHECK(XReal(0) * inf == XReal(0));
  CHECK(ninf * XReal(0) == XReal(0));
  CHECK(XReal(-2) * inf == ninf);
  CHECK(ninf * ninf == inf);
  CHECK(XReal(Rat(3, 2)) * XReal(4) == XReal(6));

  CHECK(inf - inf == XReal(0));
  CHECK((inf).abs() == inf);
  CHECK((ninf).abs() == inf);
}

TEST_CASE("total order -inf < finite < +inf") {
  CHECK(ninf < XReal(-1000000));
  CHECK(XReal(1000000) < inf);
  CHECK(ninf < inf);
  CHECK(XReal(Rat(1, 3)) < XReal(Rat(1, 2)));
  CHECK_FALSE(inf < inf);
  CHECK(inf <= inf);
}

TEST_CASE("positive and negative parts") {
  auto split = [](const XReal& x) { return std::pair{x.pos_part(), x.neg_part()}; };
  CHECK(split(ninf) == std::pair{XReal(0), inf});
  CHECK(split(XReal(7)) == std::pair{XReal(7), XReal(0)});
  CHECK(split(XReal(0)) == std::pair{XReal(0), XReal(0)});

  Lcg rng{7};
  for (int i = 0; i < 200; ++i) {
    XReal x = xr(rng.frac());
    CHECK(x.pos_part() - x.neg_part() == x);
    CHECK(x.pos_part() + x.neg_part() == x.abs());
  }
  // The decomposition identities also hold at the infinities.
  for (const XReal& x : {inf, ninf}) {
    CHECK(x.pos_part() - x.neg_part() == x);
    CHECK(x.pos_part() + x.neg_part() == x.abs());
  }
}

TEST_CASE("finite add/mul agree with long-hand fraction arithmetic") {
  Lcg rng{99};
  for (int i = 0; i < 500; ++i) {
    Frac a = rng.frac(), b = rng.frac();
    CHECK(xr(a) + xr(b) == xr(frac_add(a, b)));
    CHECK(xr(a) * xr(b) == xr(frac_mul(a, b)));
  }
}

TEST_CASE("commutativity and distributivity on nonnegative operands") {
  Lcg rng{123};
  auto draw = [&](bool nonneg) {
    long long pick = rng.in_range(0, 9);
    if (pick == 0) return inf;
    if (pick == 1 && !nonneg) return ninf;
    Frac f = rng.frac();
    if (nonneg && f.num < 0) f.num = -f.num;
    return xr(f);
  };
  for (int i = 0; i < 500; ++i) {
    XReal a = draw(false), b = draw(false);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
  for (int i = 0; i < 500; ++i) {
    XReal a = draw(true), b = draw(true), c = draw(true);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("monotone product limit: a_n * b increases to a * b") {
  // Chains 0 <= a_1 <= ... <= a_k <= a, against b in [0, inf].
  Lcg rng{5};
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<XReal> chain;
    XReal cur(0);
    for (int k = 0; k < 5; ++k) {
      Frac f = rng.frac();
      if (f.num < 0) f.num = -f.num;
      cur += xr(f);
      chain.push_back(cur);
    }
    XReal a = rng.in_range(0, 4) == 0 ? inf : chain.back();
    XReal b = rng.in_range(0, 4) == 0 ? inf
              : rng.in_range(0, 4) == 1 ? XReal(0)
                                        : xr(Frac(rng.in_range(0, 30), rng.in_range(1, 7)));
    XReal prev = XReal(0) * b;
    for (const auto& an : chain) {
      XReal cur_prod = measurekit::min(an, a) * b;
      CHECK(prev <= cur_prod);
      CHECK(cur_prod <= a * b);
      prev = cur_prod;
    }
    // The supremum over the chain capped at a is attained at a itself.
    CHECK(a * b == measurekit::max(prev, a * b));
  }
}

TEST_CASE("floor with floor(+-inf) = +-inf") {
  CHECK(XReal(Rat(10, 3)).floor() == XReal(3));
  CHECK(XReal(Rat(-10, 3)).floor() == XReal(-4));
  CHECK(XReal(Rat(-9, 3)).floor() == XReal(-3));
  CHECK(inf.floor() == inf);
  CHECK(ninf.floor() == ninf);
}

TEST_CASE("serialization round trip") {
  for (const char* s : {"3/4", "-3/4", "7", "0", "inf", "-inf", "-1234567891234567891/7"}) {
    XReal x = XReal::parse(s);
    CHECK(XReal::parse(x.str()) == x);
  }
  CHECK(XReal::parse("2/4").str() == "1/2");  // canonical lowest terms
  CHECK_THROWS_AS(XReal::parse("one"), measurekit::parse_error);
}

TEST_CASE("integer root and power brackets") {
  using measurekit::int_root_floor;
  using measurekit::BigInt;
  CHECK(int_root_floor(BigInt(27), 3) == 3);
  CHECK(int_root_floor(BigInt(26), 3) == 2);
  CHECK(int_root_floor(BigInt(1) << 100, 2) == BigInt(1) << 50);

  RatBracket exact = measurekit::root_bracket(Rat(9, 4), 2, Rat(1, 1000));
  CHECK(exact.exact());
  CHECK(exact.lo == Rat(3, 2));

  Rat tol(1, BigInt("1000000000000"));
  RatBracket b = measurekit::root_bracket(Rat(2), 2, tol);
  CHECK_FALSE(b.exact());
  CHECK(b.width() <= tol);
  CHECK(b.lo * b.lo <= Rat(2));
  CHECK(b.hi * b.hi >= Rat(2));
}
