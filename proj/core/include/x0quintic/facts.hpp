#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "x0quintic/arith.hpp"

namespace x0q {

// Finite set of levels written as "1-33,35,37-40".
class LevelSet {
 public:
  LevelSet() = default;
  static LevelSet parse(const std::string& text);
  static LevelSet of(std::vector<i64> levels);

  bool contains(i64 N) const { return levels_.count(N) > 0; }
  size_t size() const { return levels_.size(); }
  bool empty() const { return levels_.empty(); }
  std::vector<i64> to_vector() const { return {levels_.begin(), levels_.end()}; }
  std::string str() const;  // compressed ranges, same syntax as parse

  LevelSet unite(const LevelSet& o) const;
  bool operator==(const LevelSet&) const = default;

 private:
  std::set<i64> levels_;
};

struct TaggedLevels {
  LevelSet levels;
  std::string tag;
};

struct NoTranslateFact {
  i64 level = 0;
  std::string curve;
  i64 prime = 0;
  std::string tag;
};

struct RankFact {
  std::string curve;
  int rank = 0;
  std::string tag;
};

struct CsRow {
  i64 level = 0;
  i64 genus = 0;
  std::string aux;  // "w<d>" or "P1"
  i64 degree = 2;
  i64 aux_genus = 0;
};

struct FactTargets {
  LevelSet candidates;
  LevelSet density5_yes;
  LevelSet quintic_infinite;
  LevelSet quintic_finite;
  LevelSet quintic_open;
  i64 pentaelliptic_max = 0;
  std::vector<CsRow> cs_p1;
  std::vector<CsRow> cs_elliptic;
};

// Cited facts the engine cannot recompute, plus the reference lists its
// outputs are compared against.
class FactTable {
 public:
  static FactTable load(const std::string& path);
  static FactTable parse(const std::string& json_text);

  // degree in {2, 3, 4}
  const TaggedLevels& degree_list(int degree) const;
  bool has_infinitely_many_degree_le4(i64 N) const;
  // Smallest d <= 4 with infinitely many degree-d points, if any.
  std::optional<int> density_degree_le4(i64 N) const;
  LevelSet degree_le4_union() const;

  // Tag of the fact giving a degree-5 function on X0(N).
  std::optional<std::string> degree5_function(i64 N) const;
  const std::vector<TaggedLevels>& degree5_functions() const { return functions_; }

  std::optional<NoTranslateFact> no_translate(i64 N) const;
  std::optional<RankFact> algebraic_rank(const std::string& curve) const;

  const FactTargets& targets() const { return targets_; }

 private:
  std::vector<TaggedLevels> degree_le4_;  // indexed by degree - 2
  std::vector<TaggedLevels> functions_;
  std::vector<NoTranslateFact> no_translate_;
  std::vector<RankFact> ranks_;
  FactTargets targets_;
};

}  // namespace x0q
