#include <filesystem>
#include <fstream>
#include <sstream>
#include <atomic>
#include <thread>

#include "doctest.h"
#include "x0quintic/data_dir.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/snapshot.hpp"

using namespace x0q;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SnapshotRecord rec(const std::string& key, const std::string& payload) {
  return {key, "http://example.invalid/api/" + key, "2024-01-01T00:00:00Z", payload};
}

}  // namespace

TEST_SUITE("snapshot") {
  TEST_CASE("append, find and duplicate keys") {
    Snapshot s;
    s.append(rec("a?x=1", "[1,2]"));
    s.append(rec("b?y=2", "[]"));
    CHECK(s.size() == 2);
    CHECK(s.contains("a?x=1"));
    CHECK(s.find("a?x=1")->payload == "[1,2]");
    CHECK_FALSE(s.find("c"));
    CHECK_THROWS_AS(s.append(rec("a?x=1", "[3]")), Error);
    CHECK_THROWS_AS(s.append(rec("c", "[1,")), Error);
    CHECK(s.keys() == std::vector<std::string>{"a?x=1", "b?y=2"});
  }

  TEST_CASE("serialize and parse round trip byte for byte") {
    Snapshot s;
    s.set_origin("unit test");
    s.append(rec("k1", R"([{"b":1,"a":[1,2,3]}])"));
    s.append(rec("k2", "[]"));
    const auto text = s.serialize();
    auto back = Snapshot::parse(text);
    CHECK(back.serialize() == text);
    CHECK(back.origin() == "unit test");
    CHECK(back.find("k1")->payload == R"([{"a":[1,2,3],"b":1}])");
  }

  TEST_CASE("bundled snapshot reserializes to the same bytes") {
    const auto path = data_path("snapshot.json");
    const auto text = slurp(path);
    auto s = Snapshot::parse(text);
    CHECK(s.size() > 600);
    CHECK(s.serialize() == text);
  }

  TEST_CASE("save writes a loadable file") {
    Snapshot s;
    s.append(rec("k", "[7]"));
    const auto path = (std::filesystem::temp_directory_path() / "x0q_snapshot_save_test.json").string();
    s.save(path);
    CHECK(Snapshot::load(path).serialize() == s.serialize());
    std::filesystem::remove(path);
  }

  TEST_CASE("concurrent readers and a writer") {
    Snapshot s;
    for (int i = 0; i < 50; ++i) s.append(rec("k" + std::to_string(i), "[]"));
    std::vector<std::thread> ts;
    std::atomic<int> found{0};
    for (int t = 0; t < 4; ++t)
      ts.emplace_back([&] {
        for (int i = 0; i < 50; ++i) found += s.contains("k" + std::to_string(i));
      });
    ts.emplace_back([&] {
      for (int i = 50; i < 100; ++i) s.append(rec("k" + std::to_string(i), "[]"));
    });
    for (auto& t : ts) t.join();
    CHECK(found == 200);
    CHECK(s.size() == 100);
  }

  TEST_CASE("bad input") {
    CHECK_THROWS_AS(Snapshot::parse("not json"), Error);
    CHECK_THROWS_AS(Snapshot::parse(R"({"records":[{"query_key":"k"}]})"), Error);
    CHECK_THROWS_AS(Snapshot::load("/nonexistent/snapshot.json"), Error);
  }
}
