#include "x0quintic/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "x0quintic/error.hpp"

namespace x0q {

using nlohmann::json;

Snapshot::Snapshot(const Snapshot& other) {
  std::shared_lock lock(other.mu_);
  origin_ = other.origin_;
  records_ = other.records_;
  index_ = other.index_;
}

Snapshot& Snapshot::operator=(const Snapshot& other) {
  if (this == &other) return *this;
  Snapshot tmp(other);
  std::unique_lock lock(mu_);
  origin_ = std::move(tmp.origin_);
  records_ = std::move(tmp.records_);
  index_ = std::move(tmp.index_);
  return *this;
}

Snapshot Snapshot::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::snapshot_miss, "cannot open snapshot " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Snapshot Snapshot::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("snapshot: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array())
    throw Error(Errc::parse_error, "snapshot: expected an object with a records array");
  Snapshot s;
  if (doc.contains("origin")) s.origin_ = doc["origin"].get<std::string>();
  for (const auto& r : doc["records"]) {
    for (const char* k : {"query_key", "url", "fetched_at", "payload"})
      if (!r.contains(k)) throw Error(Errc::parse_error, std::string("snapshot record without ") + k);
    SnapshotRecord rec{r["query_key"].get<std::string>(), r["url"].get<std::string>(),
                       r["fetched_at"].get<std::string>(), r["payload"].dump()};
    s.append(std::move(rec));
  }
  return s;
}

std::optional<SnapshotRecord> Snapshot::find(const std::string& query_key) const {
  std::shared_lock lock(mu_);
  auto it = index_.find(query_key);
  if (it == index_.end()) return std::nullopt;
  return records_[it->second];
}

bool Snapshot::contains(const std::string& query_key) const {
  std::shared_lock lock(mu_);
  return index_.count(query_key) > 0;
}

void Snapshot::append(SnapshotRecord rec) {
  if (rec.query_key.empty()) throw Error(Errc::invalid_argument, "snapshot record needs a query key");
  // Stored compact with sorted keys so that save/load is byte stable.
  try {
    rec.payload = json::parse(rec.payload).dump();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, rec.query_key + ": payload is not JSON: " + e.what());
  }
  std::unique_lock lock(mu_);
  if (index_.count(rec.query_key))
    throw Error(Errc::invariant_violation, "snapshot already holds " + rec.query_key);
  index_[rec.query_key] = records_.size();
  records_.push_back(std::move(rec));
}

size_t Snapshot::size() const {
  std::shared_lock lock(mu_);
  return records_.size();
}

std::vector<std::string> Snapshot::keys() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& r : records_) out.push_back(r.query_key);
  return out;
}

std::string Snapshot::origin() const {
  std::shared_lock lock(mu_);
  return origin_;
}

void Snapshot::set_origin(std::string origin) {
  std::unique_lock lock(mu_);
  origin_ = std::move(origin);
}

std::string Snapshot::serialize() const {
  std::shared_lock lock(mu_);
  std::ostringstream out;
  out << "{\n  \"origin\": " << json(origin_).dump() << ",\n  \"records\": [";
  for (size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    out << (i ? ",\n" : "\n") << "    {\"query_key\": " << json(r.query_key).dump()
        << ", \"url\": " << json(r.url).dump() << ", \"fetched_at\": " << json(r.fetched_at).dump()
        << ",\n     \"payload\": " << r.payload << "}";
  }
  out << (records_.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

void Snapshot::save(const std::string& path) const {
  const std::string text = serialize();
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::invalid_argument, "cannot write snapshot " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Errc::invalid_argument, "cannot replace snapshot " + path);
}

}  // namespace x0q
