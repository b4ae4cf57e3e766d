#pragma once

#include <optional>
#include <string>
#include <vector>

#include "x0quintic/arith.hpp"
#include "x0quintic/gonality.hpp"

namespace x0q {

struct AuxMap {
  enum class Kind { atkin_lehner, gonality_map } kind = Kind::atkin_lehner;
  i64 d = 0;       // Hall divisor for Atkin-Lehner quotients
  i64 degree = 2;  // m
  i64 target_genus = 0;
  std::string name() const;  // "w23" or "P1"
};

struct CsCertificate {
  i64 level = 1;
  i64 genus = 0;
  AuxMap aux;
  i64 n = 5;
  i64 target_genus = 0;  // genus of Z: 0 for P^1, 1 for an elliptic curve
  i64 bound = 0;
  bool excluded = false;
  bool coprime_degrees = false;
};

i64 cs_bound(i64 m, i64 gY, i64 n, i64 gZ);

AuxMap atkin_lehner_aux(i64 N, i64 d);
// Degree-m map to P^1 taken from a cited gonality upper bound; nullopt if none.
std::optional<AuxMap> gonality_aux(i64 N, const GonalityTable& table);

// Throws not_applicable when gcd(m, 5) != 1 or the map is trivial.
CsCertificate cs_excludes_deg5(i64 N, i64 target_genus, const AuxMap& aux);

// Tries every Hall-divisor quotient, then a cited low-degree map to P^1,
// and returns the first certificate that excludes.
std::optional<CsCertificate> cs_search(i64 N, i64 target_genus, const GonalityTable& table);

}  // namespace x0q
