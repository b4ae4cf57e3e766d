#include "x0quintic/gonality.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "x0quintic/error.hpp"
#include "x0quintic/invariants.hpp"

namespace x0q {

const char* gonality_source_name(GonalitySource s) {
  switch (s) {
    case GonalitySource::cited: return "cited";
    case GonalitySource::ogg_bound: return "ogg-bound";
    case GonalitySource::abramovich_bound: return "abramovich-bound";
    case GonalitySource::none: return "none";
  }
  return "none";
}

GonalityTable GonalityTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open gonality table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

GonalityTable GonalityTable::parse(const std::string& text) {
  GonalityTable t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string lv, lo, up, tag;
    if (!(ls >> lv)) continue;
    if (!(ls >> lo >> up >> tag))
      throw Error(Errc::parse_error, "gonality table line " + std::to_string(lineno) + ": expected 4 fields");
    Range r{};
    try {
      if (auto dash = lv.find('-'); dash != std::string::npos) {
        r.lo = std::stoll(lv.substr(0, dash));
        r.hi = std::stoll(lv.substr(dash + 1));
      } else {
        r.lo = r.hi = std::stoll(lv);
      }
      r.lower = (lo == "-") ? 1 : std::stoll(lo);
      if (up != "-") r.upper = std::stoll(up);
    } catch (const std::logic_error&) {
      throw Error(Errc::parse_error, "gonality table line " + std::to_string(lineno) + ": bad number");
    }
    if (r.lo < 1 || r.hi < r.lo || (r.upper && *r.upper < r.lower))
      throw Error(Errc::parse_error, "gonality table line " + std::to_string(lineno) + ": inconsistent record");
    r.tag = tag;
    t.ranges_.push_back(std::move(r));
  }
  return t;
}

std::optional<GonalityFact> GonalityTable::cited(i64 N) const {
  std::optional<GonalityFact> best;
  for (const auto& r : ranges_) {
    if (N < r.lo || N > r.hi) continue;
    if (!best) {
      best = GonalityFact{N, r.lower, r.upper, GonalitySource::cited, r.tag};
      continue;
    }
    // several records may cover N; intersect them
    if (r.lower > best->lower) {
      best->lower = r.lower;
      best->citation = r.tag;
    }
    if (r.upper && (!best->upper || *r.upper < *best->upper)) best->upper = r.upper;
  }
  return best;
}

GonalityFact gonality_fact(i64 N, const GonalityTable& table) {
  GonalityFact fact{N, 1, std::nullopt, GonalitySource::none, ""};
  if (auto c = table.cited(N)) fact = *c;

  const i64 abr = abramovich_gonality_bound(N);
  const auto ogg = best_ogg_gonality_bound(N);
  i64 computed = std::max(abr, ogg.bound);
  if (fact.upper && computed > *fact.upper)
    throw Error(Errc::invariant_violation, "cited gonality upper bound " + std::to_string(*fact.upper) +
                                               " at N=" + std::to_string(N) + " is below the computed lower bound " +
                                               std::to_string(computed));
  if (computed > fact.lower) {
    fact.lower = computed;
    fact.source = (ogg.bound >= abr) ? GonalitySource::ogg_bound : GonalitySource::abramovich_bound;
    fact.citation.clear();
  }
  return fact;
}

}  // namespace x0q
