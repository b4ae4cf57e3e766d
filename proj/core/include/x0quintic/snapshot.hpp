#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace x0q {

struct SnapshotRecord {
  std::string query_key;   // e.g. "mf_newforms?level_type=divides&level=97&weight=2&char_order=1"
  std::string url;
  std::string fetched_at;  // ISO 8601, UTC
  std::string payload;     // compact JSON text, stored verbatim
};

// Append-only store of query results. Reads may run concurrently; appends
// take the writer lock.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(const Snapshot& other);
  Snapshot& operator=(const Snapshot& other);

  static Snapshot load(const std::string& path);
  static Snapshot parse(const std::string& text);

  std::optional<SnapshotRecord> find(const std::string& query_key) const;
  bool contains(const std::string& query_key) const;
  // Throws invariant_violation if the key is already present.
  void append(SnapshotRecord rec);

  size_t size() const;
  std::vector<std::string> keys() const;
  std::string origin() const;
  void set_origin(std::string origin);

  // Records in insertion order, two-space indent, trailing newline.
  std::string serialize() const;
  void save(const std::string& path) const;

 private:
  mutable std::shared_mutex mu_;
  std::string origin_;
  std::vector<SnapshotRecord> records_;
  std::map<std::string, size_t> index_;
};

}  // namespace x0q
