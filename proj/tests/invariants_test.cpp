#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "x0quintic/data_dir.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/gonality.hpp"
#include "x0quintic/invariants.hpp"

using namespace x0q;

namespace {

struct BruteInvariants {
  i64 nu2 = 0, nu3 = 0, cusps = 0;
};

BruteInvariants brute(i64 N) {
  BruteInvariants b;
  for (i64 x = 0; x < N; ++x) {
    b.nu2 += (x * x + 1) % N == 0;
    b.nu3 += (x * x + x + 1) % N == 0;
  }
  if (N == 1) b.nu2 = b.nu3 = 1;
  for (i64 d = 1; d <= N; ++d)
    if (N % d == 0) b.cusps += euler_phi(std::gcd(d, N / d));
  return b;
}

struct QuotientRow {
  i64 N, d, genus;
};

std::vector<QuotientRow> frozen_quotient_genera() {
  std::ifstream in(std::string(X0Q_TEST_DATA_DIR) + "/quotient_genus.txt");
  REQUIRE(in);
  std::vector<QuotientRow> rows;
  QuotientRow r;
  while (in >> r.N >> r.d >> r.genus) rows.push_back(r);
  return rows;
}

}  // namespace

TEST_SUITE("invariants") {
  TEST_CASE("genus examples") {
    CHECK(level_invariants(46).genus == 5);
    CHECK(level_invariants(112).genus == 11);
    CHECK(level_invariants(1).genus == 0);
    CHECK(genus(109) == 8);
    CHECK(genus(142) == 17);
  }

  TEST_CASE("elliptic point and cusp counts match brute force, genus identity up to 2100") {
    for (i64 N = 1; N <= 2100; ++N) {
      auto L = level_invariants(N);
      auto b = brute(N);
      REQUIRE_MESSAGE(L.nu2 == b.nu2, "N=" << N);
      REQUIRE_MESSAGE(L.nu3 == b.nu3, "N=" << N);
      REQUIRE_MESSAGE(L.cusps == b.cusps, "N=" << N);
      // 12g - 12 = psi - 3 nu2 - 4 nu3 - 6 cusps
      REQUIRE_MESSAGE(12 * L.genus - 12 == L.psi - 3 * L.nu2 - 4 * L.nu3 - 6 * L.cusps, "N=" << N);
      REQUIRE(L.genus >= 0);
    }
  }

  TEST_CASE("fixed point examples") {
    CHECK(al_fixed_points(46, 23) == 12);
    CHECK(al_fixed_points(60, 15) == 12);
    CHECK(al_fixed_points(174, 87) == 24);
  }

  TEST_CASE("quotient genus examples") {
    CHECK(quotient_genus(46, 23).genus == 0);
    CHECK(quotient_genus(104, 104).genus == 3);
    CHECK(quotient_genus(262, 131).genus == 9);
  }

  TEST_CASE("quotient genus agrees with traces of Atkin-Lehner operators on cusp forms") {
    // Frozen table: genus of X0(N)/w_d computed as (g + tr w_d) / 2 on S_2(N).
    auto rows = frozen_quotient_genera();
    CHECK(rows.size() > 600);
    for (const auto& r : rows) CHECK_MESSAGE(quotient_genus(r.N, r.d).genus == r.genus, "N=" << r.N << " d=" << r.d);
  }

  TEST_CASE("Riemann-Hurwitz parity for every Hall divisor") {
    for (i64 N = 2; N <= 600; ++N) {
      const i64 g = genus(N);
      for (i64 d : hall_divisors(N)) {
        if (d == 1) continue;
        const i64 f = al_fixed_points(N, d);
        REQUIRE(f >= 0);
        REQUIRE(f % 2 == 0);
        const i64 gq = quotient_genus(N, d).genus;
        REQUIRE_MESSAGE(2 * g + 2 - 4 * gq == f, "N=" << N << " d=" << d);
        REQUIRE(gq <= g);
      }
    }
  }

  TEST_CASE("Hall divisors") {
    CHECK(hall_divisors(12) == std::vector<i64>{3, 4, 12});
    CHECK(is_hall_divisor(46, 23));
    CHECK_FALSE(is_hall_divisor(12, 2));
    CHECK_THROWS_AS(quotient_genus(12, 2), Error);
  }

  TEST_CASE("Ogg point bound") {
    CHECK(ogg_point_lower_bound(46, 5) == 28);
    CHECK(ogg_point_lower_bound(46, 3) == 16);
    CHECK(ogg_point_lower_bound(1, 2) == 2);
    CHECK(ogg_degree_bound_to_elliptic(46, 5) == 1);
    CHECK(ogg_degree_bound_to_elliptic(468, 5) == 10);
    CHECK(ogg_degree_bound_to_elliptic(1, 2) == 1);
  }

  TEST_CASE("Abramovich bound") {
    CHECK(abramovich_gonality_bound(468) == 10);
    CHECK(abramovich_gonality_bound(505) == 7);
    CHECK(abramovich_gonality_bound(1) == 1);
  }

  TEST_CASE("bounds are monotone in psi") {
    for (i64 N = 1; N <= 2000; ++N)
      for (i64 M = N + 1; M <= N + 5; ++M)
        if (psi(M) >= psi(N)) CHECK(abramovich_gonality_bound(M) >= abramovich_gonality_bound(N));
  }

  TEST_CASE("gonality facts from the bundled table") {
    auto table = GonalityTable::load(data_path("gonality.txt"));
    auto g109 = gonality_fact(109, table);
    CHECK(g109.lower == 5);
    CHECK(g109.upper == 5);
    auto g112 = gonality_fact(112, table);
    CHECK(g112.lower == 6);
    CHECK(g112.upper == 6);
    auto g74 = gonality_fact(74, table);
    CHECK(g74.lower == 4);
    CHECK(g74.upper == 4);
    for (i64 N = 1; N <= 2000; ++N) {
      auto f = gonality_fact(N, table);
      CHECK(f.lower >= 1);
      if (f.upper) CHECK(f.lower <= *f.upper);
    }
  }
}
