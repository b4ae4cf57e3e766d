#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "x0quintic/cs_filter.hpp"
#include "x0quintic/facts.hpp"
#include "x0quintic/gonality.hpp"
#include "x0quintic/hom_lattice.hpp"
#include "x0quintic/lmfdb.hpp"

namespace x0q {

enum class Density5 { yes, no, not_applicable, open };
enum class Quintic { infinite, finite, open };
const char* density5_name(Density5 v);  // "yes", "no", "n/a", "open"
const char* quintic_name(Quintic v);    // "infinite", "finite", "open"

struct RuleRecord {
  std::string rule;
  std::map<std::string, std::string> inputs;
  std::string output;
  std::string citation;
  bool assumes_bsd = false;
};

struct ProofTrace {
  std::vector<RuleRecord> steps;
  bool empty() const { return steps.empty(); }
  bool assumes_bsd() const;
};

struct Verdict {
  i64 level = 1;
  Density5 density5 = Density5::open;
  Quintic quintic = Quintic::open;
  ProofTrace trace;
  std::vector<std::string> assumptions;
};

struct RuleOutcome {
  bool applies = false;
  RuleRecord record;
};

// How "no degree-5 map to a positive-rank elliptic curve" was settled for N.
struct PentaCoverage {
  i64 level = 1;
  bool excluded = false;
  std::string mechanism;  // "hom-lattice-sweep", "ogg-bound", "uncovered"
  std::string detail;
  std::optional<PentaDecision> decision;
};

struct Table1Factor {
  std::string label;
  i64 dimension = 1;
  i64 multiplicity = 1;
  std::string w4;  // "yes†", "yes*", "yes⁺" or "?"
};

struct Table1Row {
  i64 level = 1;
  i64 genus = 0;
  std::string degree5_function;  // "no", "?" or "yes"
  std::vector<Table1Factor> factors;
};

struct CsTableRow {
  CsRow expected;
  i64 genus = 0;
  i64 aux_genus = 0;
  i64 aux_degree = 0;
  i64 bound = 0;
  bool excluded = false;
  bool matches = false;
};

class Engine {
 public:
  Engine(FactTable facts, GonalityTable gonality, std::shared_ptr<Client> client,
         std::shared_ptr<const CurveTable> curves = nullptr);
  // Loads facts.json, gonality.txt, curves.txt and snapshot.json from data_dir().
  static Engine bundled(ClientOptions options = {}, const std::string& snapshot_path = "");

  const FactTable& facts() const { return facts_; }
  const GonalityTable& gonality() const { return gonality_; }
  Client& client() { return *client_; }
  const CurveTable& curves() const { return *curves_; }

  bool has_infinitely_many_degree_le4(i64 N) const;
  std::vector<i64> candidate_levels_density5();

  RuleOutcome rank0_rule(i64 N);
  RuleOutcome dim_bound_rule(i64 N);
  RuleOutcome df_exclusion_rule(i64 N);
  RuleOutcome no_translate_rule(i64 N);
  RuleOutcome candidate_exclusion_rule(i64 N);
  RuleOutcome degree_le4_rule(i64 N) const;
  RuleOutcome gonality_five_rule(i64 N);
  RuleOutcome degree5_function_rule(i64 N) const;
  RuleOutcome rank0_cs_rule(i64 N);
  RuleOutcome open_level_rule(i64 N);
  RuleOutcome density_exceeds_five_rule(i64 N);

  PentaCoverage pentaelliptic(i64 N);

  Verdict classify_density5(i64 N);
  Verdict classify_quintic(i64 N);
  // Parallel over levels; results in level order.
  std::vector<Verdict> classify_range(i64 lo, i64 hi, unsigned threads = 0);

  std::vector<Table1Row> render_table1();
  std::vector<CsTableRow> cs_table(bool elliptic_target);

  // Re-runs the rule named in the record at its recorded level and compares.
  bool replay(const RuleRecord& record);

 private:
  RuleRecord record(const std::string& rule, i64 N, const std::string& citation) const;
  std::vector<NewformFactor> positive_factors(i64 N);
  const std::vector<EllipticCurveRecord>& degree_five();

  FactTable facts_;
  GonalityTable gonality_;
  std::shared_ptr<Client> client_;
  std::shared_ptr<const CurveTable> curves_;
  std::mutex cache_mu_;
  std::map<i64, PentaCoverage> penta_cache_;
  std::optional<std::vector<EllipticCurveRecord>> degree_five_;
};

}  // namespace x0q
