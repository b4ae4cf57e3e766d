#include "x0quintic/lmfdb.hpp"

#include <algorithm>
#include <ctime>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "x0quintic/error.hpp"

namespace x0q {

using nlohmann::json;

namespace {

json parse_payload(const std::string& key, const std::string& payload) {
  try {
    json j = json::parse(payload);
    if (!j.is_array()) throw Error(Errc::parse_error, key + ": payload is not a list");
    return j;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, key + ": " + e.what());
  }
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

EllipticCurveRecord curve_from_entry(const json& e, const CurveTable* models, const char* provenance) {
  EllipticCurveRecord E;
  try {
    E.label = e.at("lmfdb_label").get<std::string>();
    E.conductor = e.at("conductor").get<i64>();
    const auto& a = e.at("ainvs");
    if (!a.is_array() || a.size() != 5) throw Error(Errc::parse_error, E.label + ": ainvs must have 5 entries");
    E.a1 = a[0].get<i64>();
    E.a2 = a[1].get<i64>();
    E.a3 = a[2].get<i64>();
    E.a4 = a[3].get<i64>();
    E.a6 = a[4].get<i64>();
    E.rank = e.at("rank").get<int>();
    E.modular_degree = e.at("degree").get<i64>();
  } catch (const json::exception& ex) {
    throw Error(Errc::parse_error, std::string("curve record: ") + ex.what());
  }
  E.provenance = provenance;
  if (models) {
    if (const auto* m = models->find(E.label)) {
      if (m->a1 != E.a1 || m->a2 != E.a2 || m->a3 != E.a3 || m->a4 != E.a4 || m->a6 != E.a6)
        throw Error(Errc::invariant_violation, E.label + ": database model differs from the bundled model");
      E.provenance = std::string(provenance) + "+" + m->provenance;
    }
  }
  validate_curve(E);
  return E;
}

}  // namespace

i64 multiplicity(i64 N, const NewformFactor& factor) {
  if (N < 1 || factor.level < 1 || N % factor.level != 0)
    throw Error(Errc::invalid_argument, factor.label + " does not occur at level " + std::to_string(N));
  return static_cast<i64>(divisors(N / factor.level).size());
}

std::string newforms_query_key(i64 N) {
  return "mf_newforms?level_type=divides&level=" + std::to_string(N) + "&weight=2&char_order=1";
}

std::string positive_rank_curves_query_key(i64 M) {
  return "ec_curvedata?conductor=" + std::to_string(M) + "&rank=1-&optimality=1";
}

std::string degree_five_query_key() { return "ec_curvedata?degree=5"; }

std::string qexpansion_query_key(const std::string& newform_label) { return "mf_newforms?label=" + newform_label; }

std::string query_url(const std::string& base_url, const std::string& query_key) {
  auto q = query_key.find('?');
  std::string collection = query_key.substr(0, q);
  std::string params = q == std::string::npos ? "" : query_key.substr(q + 1);
  std::string url = base_url + "/api/" + collection + "/?";
  if (!params.empty()) url += params + "&";
  return url + "_format=json";
}

Client::Client(std::shared_ptr<Snapshot> snapshot, ClientOptions options, const CurveTable* models)
    : snapshot_(std::move(snapshot)), options_(std::move(options)), models_(models) {
  if (!snapshot_) snapshot_ = std::make_shared<Snapshot>();
}

std::string Client::query(const std::string& query_key) {
  if (auto rec = snapshot_->find(query_key)) return rec->payload;
  if (options_.offline) throw Error(Errc::snapshot_miss, "offline and the snapshot has no record for " + query_key);
  return fetch(query_key);
}

std::string Client::fetch(const std::string& query_key) {
  std::lock_guard lock(fetch_mu_);
  if (auto rec = snapshot_->find(query_key)) return rec->payload;

  const auto now = std::chrono::steady_clock::now();
  if (requests_ > 0 && now - last_request_ < options_.politeness_delay)
    std::this_thread::sleep_for(options_.politeness_delay - (now - last_request_));
  last_request_ = std::chrono::steady_clock::now();
  ++requests_;

  const std::string url = query_url(options_.base_url, query_key);
  const std::string path = url.substr(options_.base_url.size());
  httplib::Client cli(options_.base_url);
  cli.set_connection_timeout(options_.timeout);
  cli.set_read_timeout(options_.timeout);
  cli.set_follow_location(true);
  auto res = cli.Get(path);
  if (!res) throw Error(Errc::network_unavailable, url + ": " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw Error(Errc::network_unavailable, url + ": HTTP " + std::to_string(res->status));

  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, url + ": " + e.what());
  }
  json data = body.is_object() && body.contains("data") ? body["data"] : body;
  if (!data.is_array()) throw Error(Errc::parse_error, url + ": response has no data list");

  SnapshotRecord rec{query_key, url, utc_now(), data.dump()};
  snapshot_->append(rec);
  if (!options_.persist_path.empty()) snapshot_->save(options_.persist_path);
  return rec.payload;
}

std::vector<NewformFactor> Client::fetch_newform_factors(i64 N) {
  if (N < 1) throw Error(Errc::invalid_argument, "level must be >= 1");
  const std::string key = newforms_query_key(N);
  std::vector<NewformFactor> out;
  for (const auto& e : parse_payload(key, query(key))) {
    NewformFactor f;
    try {
      f.label = e.at("label").get<std::string>();
      f.level = e.at("level").get<i64>();
      f.dimension = e.at("dim").get<i64>();
      f.analytic_rank = e.at("analytic_rank").get<i64>();
    } catch (const json::exception& ex) {
      throw Error(Errc::parse_error, key + ": " + ex.what());
    }
    if (f.level < 1 || f.dimension < 1 || f.analytic_rank < 0 || N % f.level != 0)
      throw Error(Errc::invariant_violation, key + ": bad newform record " + f.label);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const NewformFactor& a, const NewformFactor& b) {
    return a.level != b.level ? a.level < b.level : a.label < b.label;
  });
  return out;
}

std::vector<EllipticCurveRecord> Client::positive_rank_elliptic_with_conductor(i64 M) {
  if (M < 1) throw Error(Errc::invalid_argument, "conductor must be >= 1");
  const std::string key = positive_rank_curves_query_key(M);
  std::vector<EllipticCurveRecord> out;
  for (const auto& e : parse_payload(key, query(key))) {
    auto E = curve_from_entry(e, models_, "snapshot");
    if (E.conductor != M) throw Error(Errc::invariant_violation, key + ": " + E.label + " has the wrong conductor");
    if (E.rank < 1) continue;
    out.push_back(std::move(E));
  }
  return out;
}

std::vector<EllipticCurveRecord> Client::positive_rank_elliptic_with_conductor_dividing(i64 N) {
  std::vector<EllipticCurveRecord> out;
  for (i64 M : divisors(N)) {
    auto part = positive_rank_elliptic_with_conductor(M);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<EllipticCurveRecord> Client::modular_degree_five_curves() {
  const std::string key = degree_five_query_key();
  std::vector<EllipticCurveRecord> out;
  for (const auto& e : parse_payload(key, query(key))) {
    auto E = curve_from_entry(e, models_, "snapshot");
    if (E.modular_degree != 5) throw Error(Errc::invariant_violation, key + ": " + E.label + " is not of degree 5");
    out.push_back(std::move(E));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.conductor != b.conductor ? a.conductor < b.conductor : a.label < b.label;
  });
  return out;
}

std::vector<i64> Client::qexpansion(const std::string& newform_label) {
  const std::string key = qexpansion_query_key(newform_label);
  auto data = parse_payload(key, query(key));
  if (data.size() != 1) throw Error(Errc::snapshot_miss, key + ": expected one record");
  try {
    return data[0].at("traces").get<std::vector<i64>>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, key + ": " + e.what());
  }
}

}  // namespace x0q
