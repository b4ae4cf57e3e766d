#include <atomic>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/lmfdb.hpp"

using namespace x0q;
using nlohmann::json;

namespace {

// Minimal stand-in for the database API on a loopback port.
class FakeApi {
 public:
  FakeApi() {
    srv_.Get("/api/mf_newforms/", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      json data = json::array();
      if (req.get_param_value("level") == "37")
        data.push_back({{"label", "37.2.a.a"}, {"level", 37}, {"dim", 1}, {"analytic_rank", 1}});
      if (req.get_param_value("level") == "500") {
        res.status = 500;
        return;
      }
      if (req.get_param_value("level") == "501") {
        res.set_content("{oops", "application/json");
        return;
      }
      res.set_content(json{{"data", data}}.dump(), "application/json");
    });
    srv_.Get("/api/ec_curvedata/", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      json data = json::array();
      if (req.get_param_value("conductor") == "37")
        data.push_back({{"lmfdb_label", "37.a1"}, {"conductor", 37}, {"ainvs", {0, 0, 1, -1, 0}}, {"rank", 1}, {"degree", 2}});
      if (req.get_param_value("conductor") == "43")
        data.push_back({{"lmfdb_label", "43.a1"}, {"conductor", 43}, {"ainvs", {0, 1, 1, 0, 5}}, {"rank", 1}, {"degree", 2}});
      res.set_content(json{{"data", data}}.dump(), "application/json");
    });
    port_ = srv_.bind_to_any_port("127.0.0.1");
    th_ = std::thread([this] { srv_.listen_after_bind(); });
    srv_.wait_until_ready();
  }
  ~FakeApi() {
    srv_.stop();
    th_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::atomic<int> hits{0};

 private:
  httplib::Server srv_;
  std::thread th_;
  int port_ = 0;
};

ClientOptions online(const std::string& base) {
  ClientOptions o;
  o.offline = false;
  o.base_url = base;
  o.politeness_delay = std::chrono::milliseconds(5);
  o.timeout = std::chrono::seconds(5);
  return o;
}

}  // namespace

TEST_SUITE("client") {
  TEST_CASE("query keys and URLs") {
    CHECK(newforms_query_key(97) == "mf_newforms?level_type=divides&level=97&weight=2&char_order=1");
    CHECK(positive_rank_curves_query_key(37) == "ec_curvedata?conductor=37&rank=1-&optimality=1");
    CHECK(query_url("https://www.lmfdb.org", degree_five_query_key()) ==
          "https://www.lmfdb.org/api/ec_curvedata/?degree=5&_format=json");
  }

  TEST_CASE("multiplicity counts divisors of the index") {
    NewformFactor f{"37.2.a.a", 37, 1, 1};
    CHECK(multiplicity(37, f) == 1);
    CHECK(multiplicity(74, f) == 2);
    CHECK(multiplicity(148, f) == 3);
    CHECK_THROWS_AS(multiplicity(75, f), Error);
  }

  TEST_CASE("offline misses and hits") {
    auto snap = std::make_shared<Snapshot>();
    snap->append({newforms_query_key(11), "u", "t", R"([{"label":"11.2.a.a","level":11,"dim":1,"analytic_rank":0}])"});
    Client c(snap, ClientOptions{});
    auto f = c.fetch_newform_factors(11);
    REQUIRE(f.size() == 1);
    CHECK(f[0].label == "11.2.a.a");
    try {
      c.fetch_newform_factors(12);
      FAIL("expected a snapshot miss");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::snapshot_miss);
    }
    CHECK(c.network_requests() == 0);
  }

  TEST_CASE("fetches once, then answers from the snapshot and persists") {
    FakeApi api;
    const auto path = (std::filesystem::temp_directory_path() / "x0q_client_persist.json").string();
    std::filesystem::remove(path);
    auto opts = online(api.url());
    opts.persist_path = path;
    auto snap = std::make_shared<Snapshot>();
    Client c(snap, opts);
    auto f = c.fetch_newform_factors(37);
    REQUIRE(f.size() == 1);
    CHECK(f[0].analytic_rank == 1);
    c.fetch_newform_factors(37);
    CHECK(api.hits == 1);
    CHECK(c.network_requests() == 1);

    auto curves = c.positive_rank_elliptic_with_conductor(37);
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].modular_degree == 2);
    CHECK(api.hits == 2);

    auto saved = Snapshot::load(path);
    CHECK(saved.size() == 2);
    CHECK(saved.contains(newforms_query_key(37)));
    CHECK(saved.find(newforms_query_key(37))->url.find("/api/mf_newforms/?level_type=divides&level=37") != std::string::npos);

    // a fresh offline client on the saved file needs no network
    Client replay(std::make_shared<Snapshot>(saved), ClientOptions{});
    CHECK(replay.fetch_newform_factors(37)[0].label == "37.2.a.a");
    std::filesystem::remove(path);
  }

  TEST_CASE("HTTP and payload failures") {
    FakeApi api;
    Client c(std::make_shared<Snapshot>(), online(api.url()));
    try {
      c.fetch_newform_factors(500);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::network_unavailable);
    }
    try {
      c.fetch_newform_factors(501);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
    }
    // 43.a1 with a wrong a6 fails validation
    CHECK_THROWS_AS(c.positive_rank_elliptic_with_conductor(43), Error);
  }

  TEST_CASE("database model must agree with the bundled model") {
    FakeApi api;
    auto models = CurveTable::parse("37.a1 37 0 0 1 -1 1 1 2 bundled\n");
    Client c(std::make_shared<Snapshot>(), online(api.url()), &models);
    try {
      c.positive_rank_elliptic_with_conductor(37);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invariant_violation);
    }
  }

  TEST_CASE("unreachable server") {
    ClientOptions o = online("http://127.0.0.1:1");
    o.timeout = std::chrono::seconds(2);
    Client c(std::make_shared<Snapshot>(), o);
    try {
      c.fetch_newform_factors(37);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::network_unavailable);
    }
  }
}
