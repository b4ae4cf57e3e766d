#include <array>
#include <numeric>

#include "doctest.h"
#include "x0quintic/elliptic.hpp"
#include "x0quintic/error.hpp"

using namespace x0q;

namespace {

EllipticCurveRecord curve(const char* label, i64 N, std::array<i64, 5> a) {
  EllipticCurveRecord E;
  E.label = label;
  E.conductor = N;
  E.a1 = a[0];
  E.a2 = a[1];
  E.a3 = a[2];
  E.a4 = a[3];
  E.a6 = a[4];
  return E;
}

const EllipticCurveRecord e37 = curve("37.a1", 37, {0, 0, 1, -1, 0});
const EllipticCurveRecord e11 = curve("11.a2", 11, {0, -1, 1, -10, -20});
const EllipticCurveRecord e43 = curve("43.a1", 43, {0, 1, 1, 0, 0});

i64 md(i64 a, i64 p) { return ((a % p) + p) % p; }

// Affine solutions of the Weierstrass equation mod p plus infinity.
i64 naive_count(const EllipticCurveRecord& E, i64 p) {
  i64 n = 1;
  for (i64 x = 0; x < p; ++x)
    for (i64 y = 0; y < p; ++y) {
      i64 lhs = y * y + E.a1 * x * y + E.a3 * y;
      i64 rhs = x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
      n += md(lhs - rhs, p) == 0;
    }
  return n;
}

// F_{p^2} as F_p[t]/(t^2 + s t + r) for an irreducible quadratic.
struct Fp2 {
  i64 p, s, r;
  using El = std::array<i64, 2>;
  El mul(El x, El y) const {
    i64 c0 = x[0] * y[0], c1 = x[0] * y[1] + x[1] * y[0], c2 = x[1] * y[1];
    // t^2 = -s t - r
    return {md(c0 - r * c2, p), md(c1 - s * c2, p)};
  }
  El add(El x, El y) const { return {md(x[0] + y[0], p), md(x[1] + y[1], p)}; }
  El k(i64 c) const { return {md(c, p), 0}; }
};

Fp2 field(i64 p) {
  for (i64 s = 0; s < p; ++s)
    for (i64 r = 0; r < p; ++r) {
      bool root = false;
      for (i64 t = 0; t < p; ++t) root |= md(t * t + s * t + r, p) == 0;
      if (!root) return {p, s, r};
    }
  FAIL("no irreducible quadratic");
  return {p, 0, 0};
}

i64 naive_count_p2(const EllipticCurveRecord& E, i64 p) {
  Fp2 F = field(p);
  i64 n = 1;
  for (i64 x0 = 0; x0 < p; ++x0)
    for (i64 x1 = 0; x1 < p; ++x1)
      for (i64 y0 = 0; y0 < p; ++y0)
        for (i64 y1 = 0; y1 < p; ++y1) {
          Fp2::El x{x0, x1}, y{y0, y1};
          auto xx = F.mul(x, x);
          auto lhs = F.add(F.add(F.mul(y, y), F.mul(F.k(E.a1), F.mul(x, y))), F.mul(F.k(E.a3), y));
          auto rhs = F.add(F.add(F.add(F.mul(xx, x), F.mul(F.k(E.a2), xx)), F.mul(F.k(E.a4), x)), F.k(E.a6));
          n += lhs == rhs;
        }
  return n;
}

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("point counts of 37a1") {
    CHECK(count_points_mod_p(e37, 2) == 5);
    CHECK(count_points_mod_p(e37, 3) == 7);
    CHECK(ap(e37, 2) == -2);
    CHECK(ap(e37, 3) == -3);
    CHECK(ap(e37, 37) == -1);
  }

  TEST_CASE("point counts match exhaustive enumeration") {
    for (const auto* E : {&e37, &e11, &e43})
      for (i64 p : primes_up_to(97))
        if (is_good_prime(*E, p)) CHECK_MESSAGE(count_points_mod_p(*E, p) == naive_count(*E, p), E->label << " p=" << p);
  }

  TEST_CASE("bad primes: split, non-split and additive") {
    CHECK(ap(e11, 11) == 1);  // split multiplicative
    CHECK(ap(e43, 43) == -1);
    auto e27 = curve("27.a1", 27, {0, 0, 1, 0, -7});
    CHECK(ap(e27, 3) == 0);
    CHECK_THROWS_AS(count_points_mod_p(e11, 11), Error);
  }

  TEST_CASE("Hecke recursion") {
    CHECK(an(e37, 1) == 1);
    CHECK(an(e37, 4) == 2);
    CHECK(an(e37, 6) == 6);
    HeckeTable h(e37);
    for (i64 m = 1; m <= 40; ++m)
      for (i64 n = 1; n <= 40; ++n)
        if (std::gcd(m, n) == 1) CHECK(h.an(m * n) == h.an(m) * h.an(n));
    // a_{p^2} = a_p^2 - p at good p
    for (i64 p : {2, 3, 5, 7, 11, 13}) CHECK(h.an(p * p) == h.ap(p) * h.ap(p) - p);
    // a_{37^k} = a_37^k at the bad prime
    CHECK(h.an(37 * 37) == 1);
  }

  TEST_CASE("first coefficients of 37a1") {
    const std::vector<i64> want{1, -2, -3, 2, -2, 6, -1, 0, 6, 4, -5, -6, -2, 2, 6, -4, 0, -12, 0, -4};
    HeckeTable h(e37);
    auto got = h.first(20);
    REQUIRE(got.size() == 20);
    for (size_t i = 0; i < 20; ++i) CHECK(got[i].value == want[i]);
  }

  TEST_CASE("points over F_{p^2} follow the trace identity") {
    CHECK(count_points_over_p2(e37, 2) == 5);
    CHECK(count_points_over_p2(e37, 3) == 7);
    for (const auto* E : {&e37, &e11, &e43})
      for (i64 p : {2, 3, 5})
        if (is_good_prime(*E, p)) CHECK_MESSAGE(count_points_over_p2(*E, p) == naive_count_p2(*E, p), E->label << " p=" << p);
  }

  TEST_CASE("validation rejects bad models") {
    CHECK_NOTHROW(validate_curve(e37));
    auto sing = curve("sing", 1, {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(validate_curve(sing), Error);
    auto wrong = e37;
    wrong.conductor = 38;
    CHECK_THROWS_AS(validate_curve(wrong), Error);
  }

  TEST_CASE("curve table parsing and label forms") {
    auto t = CurveTable::parse("# comment\n37.a1 37 0 0 1 -1 0 1 2 test\n11.a2 11 0 -1 1 -10 -20 0 1 test\n");
    REQUIRE(t.all().size() == 2);
    CHECK(t.at("37.a1").modular_degree == 2);
    CHECK(t.find("37a1") != nullptr);
    CHECK(t.find("99.z1") == nullptr);
    CHECK(t.at("11.a2").class_label() == "11.a");
    CHECK_THROWS_AS(CurveTable::parse("37.a1 37 0 0 1\n"), Error);
  }
}
