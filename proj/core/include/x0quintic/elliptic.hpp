#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "x0quintic/arith.hpp"

namespace x0q {

struct EllipticCurveRecord {
  std::string label;  // LMFDB style, e.g. "37.a1"
  i64 conductor = 1;
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  int rank = 0;
  i64 modular_degree = 1;
  std::string provenance;

  // Isogeny class part of the label ("37.a1" -> "37.a").
  std::string class_label() const;
};

struct HeckeCoefficient {
  i64 n;
  i64 value;
};

// Discriminant of the model reduced mod m (m >= 2).
i64 discriminant_mod(const EllipticCurveRecord& E, i64 m);
// Exact discriminant; throws invalid_argument if it does not fit in 128 bits.
__int128 discriminant(const EllipticCurveRecord& E);
bool is_good_prime(const EllipticCurveRecord& E, i64 p);

// #E(F_p) including infinity. Requires good reduction.
i64 count_points_mod_p(const EllipticCurveRecord& E, i64 p);
// Nonsingular points of the reduction including infinity; valid for all p.
i64 count_nonsingular_points_mod_p(const EllipticCurveRecord& E, i64 p);

i64 ap(const EllipticCurveRecord& E, i64 p);
i64 an(const EllipticCurveRecord& E, i64 n);

// Caches a_p so that many a_n lookups on one curve stay cheap.
class HeckeTable {
 public:
  explicit HeckeTable(const EllipticCurveRecord& E) : E_(E) {}
  i64 ap(i64 p);
  i64 an(i64 n);
  std::vector<HeckeCoefficient> first(i64 count);

 private:
  EllipticCurveRecord E_;
  std::map<i64, i64> ap_;
};

// #E(F_{p^2}) = p^2 + 1 - (a_p^2 - 2p); rejects bad primes.
i64 count_points_over_p2(const EllipticCurveRecord& E, i64 p);

// Checks nonsingularity, conductor support and the Hasse bound at p <= hasse_limit.
void validate_curve(const EllipticCurveRecord& E, i64 hasse_limit = 50);

class CurveTable {
 public:
  // Line format: label conductor a1 a2 a3 a4 a6 rank modular_degree provenance
  static CurveTable load(const std::string& path);
  static CurveTable parse(const std::string& text);

  const EllipticCurveRecord* find(const std::string& label) const;
  const EllipticCurveRecord& at(const std::string& label) const;
  const std::vector<EllipticCurveRecord>& all() const { return curves_; }
  void add(EllipticCurveRecord E);

 private:
  std::vector<EllipticCurveRecord> curves_;
  std::map<std::string, size_t> index_;
};

}  // namespace x0q
