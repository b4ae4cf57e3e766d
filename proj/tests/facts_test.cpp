#include "doctest.h"
#include "x0quintic/data_dir.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/facts.hpp"
#include "x0quintic/invariants.hpp"

using namespace x0q;

TEST_SUITE("facts") {
  TEST_CASE("level set parsing round trips") {
    auto s = LevelSet::parse("1-5,7, 9-10");
    CHECK(s.size() == 8);
    CHECK(s.contains(4));
    CHECK_FALSE(s.contains(6));
    CHECK(s.str() == "1-5,7,9-10");
    CHECK(LevelSet::parse(s.str()) == s);
    CHECK(LevelSet::of({3, 1, 2, 2}).str() == "1-3");
    CHECK(LevelSet::parse("").empty());
    CHECK(s.unite(LevelSet::parse("6,8")).str() == "1-10");
    CHECK_THROWS_AS(LevelSet::parse("5-3"), Error);
    CHECK_THROWS_AS(LevelSet::parse("a"), Error);
  }

  TEST_CASE("bundled fact table") {
    auto f = FactTable::load(data_path("facts.json"));
    CHECK(f.degree5_function(109) == "gonality-five");
    CHECK(f.degree5_function(125) == "degeneracy-map-to-genus-0");
    CHECK_FALSE(f.degree5_function(46));
    auto nt = f.no_translate(117);
    REQUIRE(nt);
    CHECK(nt->prime == 5);
    CHECK(f.algebraic_rank(nt->curve)->rank == 1);
    CHECK(f.density_degree_le4(1) == 1);
    CHECK(f.density_degree_le4(50) == 2);
    CHECK_FALSE(f.density_degree_le4(109));

    const auto& t = f.targets();
    CHECK(t.candidates.size() == 17);
    CHECK(t.density5_yes.str() == "109");
    CHECK(t.quintic_open.size() == 30);
    CHECK(t.pentaelliptic_max == 467);
  }

  TEST_CASE("quintic reference lists partition 1..191") {
    auto t = FactTable::load(data_path("facts.json")).targets();
    for (i64 N = 1; N <= 191; ++N) {
      int hits = t.quintic_infinite.contains(N) + t.quintic_finite.contains(N) + t.quintic_open.contains(N);
      CHECK_MESSAGE(hits == 1, "N=" << N);
    }
  }

  TEST_CASE("degree-5 function facts are consistent with genus") {
    auto f = FactTable::load(data_path("facts.json"));
    for (const auto& tl : f.degree5_functions())
      if (tl.tag == "riemann-roch-genus-le2")
        for (i64 N : tl.levels.to_vector()) CHECK(genus(N) <= 2);
  }

  TEST_CASE("malformed fact files are rejected") {
    CHECK_THROWS_AS(FactTable::parse("{"), Error);
    CHECK_THROWS_AS(FactTable::parse("{}"), Error);
  }
}
