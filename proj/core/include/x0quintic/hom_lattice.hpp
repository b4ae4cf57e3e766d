#pragma once

#include <optional>
#include <string>
#include <vector>

#include "x0quintic/elliptic.hpp"

namespace x0q {

using IntMatrix = std::vector<std::vector<i64>>;

struct GramMatrix {
  i64 level = 1;
  EllipticCurveRecord curve;
  std::vector<i64> basis;  // divisors of N/M, increasing
  IntMatrix entries;

  size_t dim() const { return basis.size(); }
  i64 value(const std::vector<i64>& v) const;
};

struct RepresentationReport {
  i64 target = 0;
  bool represented = false;
  std::optional<std::vector<i64>> witness;
  std::string bound_proof;
};

// True when N/M is squarefree or coprime to M.
bool gram_formula_regime(i64 N, i64 M);

i64 gram_entry(const EllipticCurveRecord& E, i64 N, i64 d1, i64 d2);
i64 gram_entry(HeckeTable& hecke, const EllipticCurveRecord& E, i64 N, i64 d1, i64 d2);
GramMatrix gram_matrix(const EllipticCurveRecord& E, i64 N);

bool is_positive_definite(const IntMatrix& Q);
std::vector<i64> leading_minors(const IntMatrix& Q);

// Coordinate box containing {v : v^T Q v <= max_t}: |v_i| <= floor(sqrt(max_t * (Q^-1)_ii)),
// computed with exact rational elimination.
std::vector<i64> ellipsoid_box(const IntMatrix& Q, i64 max_t);

std::vector<RepresentationReport> represented_values(const IntMatrix& Q, i64 max_t);
std::vector<RepresentationReport> represented_values(const GramMatrix& Q, i64 max_t);

enum class PentaCase { form_misses_5, regime_divisibility, degree5_list, degree1, undecided };
const char* penta_case_name(PentaCase c);

struct CurveExclusion {
  std::string label;
  i64 conductor = 0;
  i64 modular_degree = 0;
  PentaCase reason = PentaCase::undecided;
  std::optional<IntMatrix> gram;
  std::optional<i64> form_minimum;
  std::string detail;
};

struct PentaDecision {
  i64 level = 1;
  bool excluded = false;
  std::vector<CurveExclusion> traces;
  std::vector<std::pair<i64, i64>> unsupported_pairs;  // (N, M) outside the formula regime
};

// curves: positive-rank curves of conductor dividing N;
// degree_five_labels: the modular-degree-5 curves with their ranks.
PentaDecision pentaelliptic_exclusion(i64 N, const std::vector<EllipticCurveRecord>& curves,
                                      const std::vector<EllipticCurveRecord>& degree_five);

}  // namespace x0q
