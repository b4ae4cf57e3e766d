#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "x0quintic/elliptic.hpp"
#include "x0quintic/snapshot.hpp"

namespace x0q {

struct NewformFactor {
  std::string label;  // "37.2.a.a"
  i64 level = 1;
  i64 dimension = 1;
  i64 analytic_rank = 0;
};

// Copies of the factor inside J0(N): number of divisors of N / level.
i64 multiplicity(i64 N, const NewformFactor& factor);

struct ClientOptions {
  bool offline = true;
  std::string base_url = "https://www.lmfdb.org";
  std::chrono::milliseconds politeness_delay{1000};
  std::chrono::seconds timeout{30};
  // Where fetched records are written back; empty keeps them in memory only.
  std::string persist_path;
};

// Query keys mirror the public API: "<collection>?<params>".
std::string newforms_query_key(i64 N);
std::string positive_rank_curves_query_key(i64 M);
std::string degree_five_query_key();
std::string qexpansion_query_key(const std::string& newform_label);
std::string query_url(const std::string& base_url, const std::string& query_key);

class Client {
 public:
  Client(std::shared_ptr<Snapshot> snapshot, ClientOptions options, const CurveTable* models = nullptr);

  // Payload for a query key: snapshot first, then the network unless offline.
  // Offline misses throw snapshot_miss; failed fetches throw network_unavailable.
  std::string query(const std::string& query_key);

  std::vector<NewformFactor> fetch_newform_factors(i64 N);
  // Optimal curve of each positive-rank isogeny class with conductor dividing N.
  std::vector<EllipticCurveRecord> positive_rank_elliptic_with_conductor_dividing(i64 N);
  std::vector<EllipticCurveRecord> positive_rank_elliptic_with_conductor(i64 M);
  std::vector<EllipticCurveRecord> modular_degree_five_curves();
  std::vector<i64> qexpansion(const std::string& newform_label);

  const Snapshot& snapshot() const { return *snapshot_; }
  size_t network_requests() const { return requests_; }

 private:
  std::string fetch(const std::string& query_key);

  std::shared_ptr<Snapshot> snapshot_;
  ClientOptions options_;
  const CurveTable* models_;
  std::mutex fetch_mu_;
  std::chrono::steady_clock::time_point last_request_{};
  size_t requests_ = 0;
};

}  // namespace x0q
