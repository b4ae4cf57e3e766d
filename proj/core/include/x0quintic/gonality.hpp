#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "x0quintic/arith.hpp"

namespace x0q {

enum class GonalitySource { cited, ogg_bound, abramovich_bound, none };
const char* gonality_source_name(GonalitySource s);

struct GonalityFact {
  i64 level = 1;
  i64 lower = 1;
  std::optional<i64> upper;
  GonalitySource source = GonalitySource::none;
  std::string citation;  // tag of the cited fact, empty for computed bounds
};

// Bundled gonality facts over Q, one record per level or level range.
// Line format: "<N or A-B> <lower> <upper or -> <tag>", '#' starts a comment.
class GonalityTable {
 public:
  static GonalityTable load(const std::string& path);
  static GonalityTable parse(const std::string& text);

  std::optional<GonalityFact> cited(i64 N) const;
  size_t size() const { return ranges_.size(); }

 private:
  struct Range {
    i64 lo, hi;
    i64 lower;
    std::optional<i64> upper;
    std::string tag;
  };
  std::vector<Range> ranges_;
};

// Best interval from the cited facts and the two computed lower bounds.
// Throws invariant_violation if a cited upper bound is below a computed one.
GonalityFact gonality_fact(i64 N, const GonalityTable& table);

}  // namespace x0q
