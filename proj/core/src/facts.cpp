#include "x0quintic/facts.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/invariants.hpp"

namespace x0q {

using nlohmann::json;

LevelSet LevelSet::parse(const std::string& text) {
  LevelSet s;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    auto trim = [](std::string x) {
      size_t a = x.find_first_not_of(" \t\n");
      size_t b = x.find_last_not_of(" \t\n");
      return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
    };
    part = trim(part);
    if (part.empty()) continue;
    try {
      size_t used = 0;
      i64 lo = std::stoll(part, &used), hi = lo;
      if (used < part.size()) {
        if (part[used] != '-') throw std::invalid_argument(part);
        std::string rest = part.substr(used + 1);
        hi = std::stoll(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(part);
      }
      if (lo < 1 || hi < lo) throw std::invalid_argument(part);
      for (i64 n = lo; n <= hi; ++n) s.levels_.insert(n);
    } catch (const std::logic_error&) {
      throw Error(Errc::parse_error, "bad level list entry '" + part + "'");
    }
  }
  return s;
}

LevelSet LevelSet::of(std::vector<i64> levels) {
  LevelSet s;
  s.levels_.insert(levels.begin(), levels.end());
  return s;
}

std::string LevelSet::str() const {
  std::string out;
  auto it = levels_.begin();
  while (it != levels_.end()) {
    i64 lo = *it, hi = lo;
    for (++it; it != levels_.end() && *it == hi + 1; ++it) hi = *it;
    if (!out.empty()) out += ",";
    out += std::to_string(lo);
    if (hi > lo) out += "-" + std::to_string(hi);
  }
  return out;
}

LevelSet LevelSet::unite(const LevelSet& o) const {
  LevelSet s = *this;
  s.levels_.insert(o.levels_.begin(), o.levels_.end());
  return s;
}

FactTable FactTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open fact table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

namespace {

std::vector<CsRow> cs_rows(const json& rows) {
  std::vector<CsRow> out;
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != 5) throw Error(Errc::parse_error, "CS row needs 5 fields");
    out.push_back({r[0].get<i64>(), r[1].get<i64>(), r[2].get<std::string>(), r[3].get<i64>(), r[4].get<i64>()});
  }
  return out;
}

}  // namespace

FactTable FactTable::parse(const std::string& json_text) {
  FactTable t;
  try {
    json doc = json::parse(json_text);
    t.degree_le4_.resize(3);
    std::vector<bool> seen(3, false);
    for (const auto& e : doc.at("degree_le4")) {
      int d = e.at("degree").get<int>();
      if (d < 2 || d > 4) throw Error(Errc::parse_error, "degree list must be for 2, 3 or 4");
      t.degree_le4_[d - 2] = {LevelSet::parse(e.at("levels").get<std::string>()), e.at("tag").get<std::string>()};
      seen[d - 2] = true;
    }
    for (bool s : seen)
      if (!s) throw Error(Errc::parse_error, "fact table misses a degree list");
    for (const auto& e : doc.at("degree5_functions"))
      t.functions_.push_back({LevelSet::parse(e.at("levels").get<std::string>()), e.at("tag").get<std::string>()});
    for (const auto& e : doc.at("no_positive_rank_translate"))
      t.no_translate_.push_back({e.at("level").get<i64>(), e.at("curve").get<std::string>(), e.at("prime").get<i64>(),
                                 e.at("tag").get<std::string>()});
    for (const auto& e : doc.at("algebraic_rank"))
      t.ranks_.push_back({e.at("curve").get<std::string>(), e.at("rank").get<int>(), e.at("tag").get<std::string>()});
    const auto& g = doc.at("targets");
    auto& tg = t.targets_;
    tg.candidates = LevelSet::parse(g.at("candidates").get<std::string>());
    tg.density5_yes = LevelSet::parse(g.at("density5_yes").get<std::string>());
    tg.quintic_infinite = LevelSet::parse(g.at("quintic_infinite").get<std::string>());
    tg.quintic_finite = LevelSet::parse(g.at("quintic_finite").get<std::string>());
    tg.quintic_open = LevelSet::parse(g.at("quintic_open").get<std::string>());
    tg.pentaelliptic_max = g.at("pentaelliptic_max").get<i64>();
    tg.cs_p1 = cs_rows(g.at("cs_p1"));
    tg.cs_elliptic = cs_rows(g.at("cs_elliptic"));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("fact table: ") + e.what());
  }
  return t;
}

const TaggedLevels& FactTable::degree_list(int degree) const {
  if (degree < 2 || degree > 4) throw Error(Errc::invalid_argument, "degree list exists for 2, 3 and 4 only");
  return degree_le4_[static_cast<size_t>(degree - 2)];
}

std::optional<int> FactTable::density_degree_le4(i64 N) const {
  if (N < 1) throw Error(Errc::invalid_argument, "level must be >= 1");
  if (genus(N) == 0) return 1;
  for (int d = 2; d <= 4; ++d)
    if (degree_list(d).levels.contains(N)) return d;
  return std::nullopt;
}

bool FactTable::has_infinitely_many_degree_le4(i64 N) const { return density_degree_le4(N).has_value(); }

LevelSet FactTable::degree_le4_union() const {
  return degree_le4_[0].levels.unite(degree_le4_[1].levels).unite(degree_le4_[2].levels);
}

std::optional<std::string> FactTable::degree5_function(i64 N) const {
  for (const auto& f : functions_)
    if (f.levels.contains(N)) return f.tag;
  return std::nullopt;
}

std::optional<NoTranslateFact> FactTable::no_translate(i64 N) const {
  for (const auto& f : no_translate_)
    if (f.level == N) return f;
  return std::nullopt;
}

std::optional<RankFact> FactTable::algebraic_rank(const std::string& curve) const {
  for (const auto& f : ranks_)
    if (f.curve == curve) return f;
  return std::nullopt;
}

}  // namespace x0q
