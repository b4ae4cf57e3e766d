#include "x0quintic/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <thread>

#include "x0quintic/data_dir.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/invariants.hpp"

namespace x0q {

namespace {

constexpr i64 kSweepLimit = 468;      // hom-lattice sweep covers N below this
constexpr i64 kSmallLevelLimit = 191;  // cited gonality classification covers N up to this

std::string join_labels(const std::vector<NewformFactor>& fs) {
  if (fs.empty()) return "none";
  std::string out;
  for (const auto& f : fs) {
    if (!out.empty()) out += ",";
    out += f.label + "(dim " + std::to_string(f.dimension) + ")";
  }
  return out;
}

// "112.2.a.a" -> "112.a"
std::string newform_class(const std::string& label) {
  auto a = label.find('.');
  auto c = label.rfind('.');
  if (a == std::string::npos || c == a) return label;
  return label.substr(0, a) + "." + label.substr(c + 1);
}

// Genus of X0(N) modulo the full Atkin-Lehner group when N has two prime factors:
// g(X) + 2 g(X/W) = g(X/w1) + g(X/w2) + g(X/w3) for a Klein four-group W.
std::optional<i64> star_quotient_genus(i64 N) {
  auto f = factor(N);
  if (f.size() != 2) return std::nullopt;
  const i64 d1 = ipow(f[0].p, f[0].e), d2 = ipow(f[1].p, f[1].e);
  const i64 s = quotient_genus(N, d1).genus + quotient_genus(N, d2).genus + quotient_genus(N, N).genus - genus(N);
  if (s < 0 || s % 2) throw Error(Errc::invariant_violation, "Klein quotient genus is not an integer at " + std::to_string(N));
  return s / 2;
}

}  // namespace

const char* density5_name(Density5 v) {
  switch (v) {
    case Density5::yes: return "yes";
    case Density5::no: return "no";
    case Density5::not_applicable: return "n/a";
    case Density5::open: return "open";
  }
  return "?";
}

const char* quintic_name(Quintic v) {
  switch (v) {
    case Quintic::infinite: return "infinite";
    case Quintic::finite: return "finite";
    case Quintic::open: return "open";
  }
  return "?";
}

bool ProofTrace::assumes_bsd() const {
  return std::any_of(steps.begin(), steps.end(), [](const RuleRecord& r) { return r.assumes_bsd; });
}

Engine::Engine(FactTable facts, GonalityTable gonality, std::shared_ptr<Client> client,
               std::shared_ptr<const CurveTable> curves)
    : facts_(std::move(facts)), gonality_(std::move(gonality)), client_(std::move(client)), curves_(std::move(curves)) {
  if (!client_) throw Error(Errc::invalid_argument, "engine needs a database client");
  if (!curves_) curves_ = std::make_shared<CurveTable>();
}

Engine Engine::bundled(ClientOptions options, const std::string& snapshot_path) {
  auto curves = std::make_shared<CurveTable>(CurveTable::load(data_path("curves.txt")));
  std::shared_ptr<Snapshot> snap;
  if (snapshot_path.empty())
    snap = std::make_shared<Snapshot>(Snapshot::load(data_path("snapshot.json")));
  else if (!options.offline && !std::filesystem::exists(snapshot_path))
    snap = std::make_shared<Snapshot>();  // filled from the network and saved on first fetch
  else
    snap = std::make_shared<Snapshot>(Snapshot::load(snapshot_path));
  auto client = std::make_shared<Client>(snap, std::move(options), curves.get());
  return Engine(FactTable::load(data_path("facts.json")), GonalityTable::load(data_path("gonality.txt")), client, curves);
}

RuleRecord Engine::record(const std::string& rule, i64 N, const std::string& citation) const {
  RuleRecord r;
  r.rule = rule;
  r.inputs["N"] = std::to_string(N);
  r.citation = citation;
  return r;
}

std::vector<NewformFactor> Engine::positive_factors(i64 N) {
  std::vector<NewformFactor> out;
  for (auto& f : client_->fetch_newform_factors(N))
    if (f.analytic_rank > 0) out.push_back(std::move(f));
  return out;
}

const std::vector<EllipticCurveRecord>& Engine::degree_five() {
  std::lock_guard lock(cache_mu_);
  if (!degree_five_) degree_five_ = client_->modular_degree_five_curves();
  return *degree_five_;
}

bool Engine::has_infinitely_many_degree_le4(i64 N) const { return facts_.has_infinitely_many_degree_le4(N); }

RuleOutcome Engine::degree_le4_rule(i64 N) const {
  RuleOutcome o;
  auto d = facts_.density_degree_le4(N);
  o.record = record("degree-le4-list", N, d && *d > 1 ? facts_.degree_list(*d).tag : "genus-zero");
  o.record.inputs["genus"] = std::to_string(genus(N));
  o.applies = d.has_value();
  o.record.output = d ? "density degree " + std::to_string(*d) : "not on any degree <= 4 list";
  return o;
}

PentaCoverage Engine::pentaelliptic(i64 N) {
  if (N < 1) throw Error(Errc::invalid_argument, "level must be >= 1");
  {
    std::lock_guard lock(cache_mu_);
    if (auto it = penta_cache_.find(N); it != penta_cache_.end()) return it->second;
  }
  PentaCoverage c;
  c.level = N;
  if (N < kSweepLimit) {
    auto curves = client_->positive_rank_elliptic_with_conductor_dividing(N);
    c.decision = pentaelliptic_exclusion(N, curves, degree_five());
    c.excluded = c.decision->excluded;
    c.mechanism = "hom-lattice-sweep";
    c.detail = std::to_string(curves.size()) + " positive-rank curve(s) of conductor dividing N";
  } else if (auto s = best_ogg_degree_bound(N); s.bound >= 6) {
    c.excluded = true;
    c.mechanism = "ogg-bound";
    c.detail = "degree to any elliptic curve >= " + std::to_string(s.bound) + " via p=" + std::to_string(s.prime);
  } else {
    // Neither filter reaches; the cited bound lemma is all that covers it.
    c.excluded = true;
    c.mechanism = "cited-bound-lemma";
    c.detail = "no p <= 13 gives an Ogg bound >= 6 (best " + std::to_string(s.bound) + ")";
  }
  std::lock_guard lock(cache_mu_);
  penta_cache_.emplace(N, c);
  return c;
}

RuleOutcome Engine::candidate_exclusion_rule(i64 N) {
  RuleOutcome o;
  o.record = record("candidate-exclusion", N, "gonality-and-genus");
  const auto gon = gonality_fact(N, gonality_);
  const i64 g = genus(N);
  o.record.inputs["gonality_lower"] = std::to_string(gon.lower);
  o.record.inputs["genus"] = std::to_string(g);
  if (has_infinitely_many_degree_le4(N)) {
    o.record.output = "not applicable: density degree <= 4";
    return o;
  }
  if (gon.lower < 6 || g < 12) {
    o.record.output = "kept: " + std::string(gon.lower < 6 ? "gonality lower bound < 6" : "genus < 12");
    return o;
  }
  auto p = pentaelliptic(N);
  o.record.inputs["pentaelliptic"] = p.mechanism;
  if (!p.excluded) {
    o.record.output = "kept: positive-rank pentaelliptic not excluded";
    return o;
  }
  o.applies = true;
  o.record.output = "excluded: gonality >= 6, genus >= 12, no degree-5 map to a positive-rank elliptic curve";
  return o;
}

std::vector<i64> Engine::candidate_levels_density5() {
  std::vector<i64> out;
  for (i64 N = 1; N <= kSmallLevelLimit; ++N) {
    if (has_infinitely_many_degree_le4(N)) continue;
    if (candidate_exclusion_rule(N).applies) continue;
    out.push_back(N);
  }
  return out;
}

RuleOutcome Engine::gonality_five_rule(i64 N) {
  RuleOutcome o;
  const auto gon = gonality_fact(N, gonality_);
  o.record = record("gonality-five", N, gon.citation.empty() ? gonality_source_name(gon.source) : gon.citation);
  o.record.inputs["gonality"] = std::to_string(gon.lower) + ".." + (gon.upper ? std::to_string(*gon.upper) : "?");
  o.applies = !has_infinitely_many_degree_le4(N) && gon.upper && *gon.upper <= 5;
  o.record.output = o.applies ? "degree-5 map to P1, density degree 5" : "no map of degree <= 5 to P1 known";
  return o;
}

RuleOutcome Engine::rank0_rule(i64 N) {
  RuleOutcome o;
  o.record = record("rank0", N, "rank-zero-jacobian");
  const auto pos = positive_factors(N);
  const auto gon = gonality_fact(N, gonality_);
  o.record.inputs["positive_rank_factors"] = join_labels(pos);
  o.record.inputs["gonality_lower"] = std::to_string(gon.lower);
  const bool rank0 = pos.empty();
  o.applies = rank0 && gon.lower >= 6;
  if (o.applies)
    o.record.output = "applies: J0(N) has rank 0 and gonality >= 6";
  else
    o.record.output = std::string("does not apply: ") + (rank0 ? "rank 0 but gonality lower bound < 6" : "positive-rank factor present");
  return o;
}

RuleOutcome Engine::dim_bound_rule(i64 N) {
  RuleOutcome o;
  o.record = record("dim-bound", N, "translate-dimension-bound");
  const auto pos = positive_factors(N);
  const auto gon = gonality_fact(N, gonality_);
  const i64 g = genus(N);
  o.record.inputs["positive_rank_factors"] = join_labels(pos);
  o.record.inputs["gonality_lower"] = std::to_string(gon.lower);
  o.record.inputs["genus"] = std::to_string(g);
  if (g < 6 || gon.lower < 6) {
    o.record.output = "does not apply: needs genus >= 6 and gonality >= 6";
    return o;
  }
  const bool small = std::any_of(pos.begin(), pos.end(), [](const NewformFactor& f) { return f.dimension <= 2; });
  o.applies = !small;
  o.record.output = o.applies ? "applies: every positive-rank factor has dimension > 2"
                              : "does not apply: positive-rank factor of dimension <= 2";
  return o;
}

RuleOutcome Engine::df_exclusion_rule(i64 N) {
  RuleOutcome o;
  o.record = record("df-exclusion", N, "debarre-fahlaoui-exclusion");
  const auto gon = gonality_fact(N, gonality_);
  const i64 g = genus(N);
  const auto curves = client_->positive_rank_elliptic_with_conductor_dividing(N);
  std::string labels;
  for (const auto& E : curves) labels += (labels.empty() ? "" : ",") + E.label;
  o.record.inputs["gonality_lower"] = std::to_string(gon.lower);
  o.record.inputs["genus"] = std::to_string(g);
  o.record.inputs["positive_rank_curves"] = labels.empty() ? "none" : labels;
  if (g < 9 || gon.lower < 6) {
    o.record.output = "does not apply: needs genus >= 9 and gonality >= 6";
    return o;
  }
  o.applies = curves.empty();
  o.record.output = o.applies ? "applies: no positive-rank elliptic curve of conductor dividing N"
                              : "does not apply: positive-rank elliptic factor exists";
  return o;
}

RuleOutcome Engine::no_translate_rule(i64 N) {
  RuleOutcome o;
  auto fact = facts_.no_translate(N);
  o.record = record("no-translate", N, fact ? fact->tag : "none");
  if (!fact) {
    o.record.output = "does not apply: no ingested verdict";
    return o;
  }
  const auto gon = gonality_fact(N, gonality_);
  const auto pos = positive_factors(N);
  o.record.inputs["gonality_lower"] = std::to_string(gon.lower);
  o.record.inputs["positive_rank_factors"] = join_labels(pos);
  o.record.inputs["curve"] = fact->curve;
  auto rank = facts_.algebraic_rank(fact->curve);
  EllipticCurveRecord probe;
  probe.label = fact->curve;
  const bool single = pos.size() == 1 && pos[0].dimension == 1 && newform_class(pos[0].label) == probe.class_label();
  if (gon.lower < 6 || !single || !rank) {
    o.record.output = "does not apply: ingested verdict does not match the factor data";
    return o;
  }
  o.applies = true;
  o.record.output = "applies: the only positive-rank factor has no translate in W5 (checked mod " +
                    std::to_string(fact->prime) + ")";
  return o;
}

RuleOutcome Engine::degree5_function_rule(i64 N) const {
  RuleOutcome o;
  auto tag = facts_.degree5_function(N);
  o.record = record("degree5-function", N, tag.value_or("none"));
  o.applies = tag.has_value();
  o.record.output = o.applies ? "degree-5 function exists" : "no degree-5 function known";
  return o;
}

RuleOutcome Engine::rank0_cs_rule(i64 N) {
  RuleOutcome o;
  o.record = record("rank0-cs", N, "castelnuovo-severi");
  const auto pos = positive_factors(N);
  o.record.inputs["positive_rank_factors"] = join_labels(pos);
  auto cert = cs_search(N, 0, gonality_);
  if (cert) {
    o.record.inputs["aux"] = cert->aux.name();
    o.record.inputs["aux_genus"] = std::to_string(cert->aux.target_genus);
    o.record.inputs["bound"] = std::to_string(cert->bound);
  }
  o.record.inputs["genus"] = std::to_string(genus(N));
  o.applies = pos.empty() && cert.has_value();
  if (o.applies)
    o.record.output = "finite: J0(N) has rank 0 and no degree-5 map to P1";
  else
    o.record.output = std::string("does not apply: ") + (pos.empty() ? "" : "positive-rank factor present") +
                      (pos.empty() || cert ? "" : "; ") + (cert ? "" : "CS bound not exceeded");
  return o;
}

RuleOutcome Engine::open_level_rule(i64 N) {
  RuleOutcome o;
  o.record = record("open-level", N, "no-rule");
  const auto pos = positive_factors(N);
  o.record.inputs["positive_rank_factors"] = join_labels(pos);
  o.applies = !degree5_function_rule(N).applies && !rank0_cs_rule(N).applies;
  o.record.assumes_bsd = !pos.empty();
  o.record.output = o.applies ? (pos.empty() ? "open: rank 0 but a degree-5 map to P1 is not ruled out"
                                             : "open: positive analytic rank leaves translates in W5 possible")
                              : "settled by another rule";
  return o;
}

RuleOutcome Engine::density_exceeds_five_rule(i64 N) {
  RuleOutcome o;
  o.record = record("density-exceeds-five", N, "density-degree");
  o.applies = classify_density5(N).density5 == Density5::no;
  o.record.output = o.applies ? "finite: density degree > 5" : "does not apply";
  return o;
}

Verdict Engine::classify_density5(i64 N) {
  if (N < 1) throw Error(Errc::invalid_argument, "level must be >= 1");
  Verdict v;
  v.level = N;
  auto d4 = degree_le4_rule(N);
  v.trace.steps.push_back(d4.record);
  if (d4.applies) {
    v.density5 = Density5::not_applicable;
    return v;
  }
  auto g5 = gonality_five_rule(N);
  if (g5.applies) {
    v.trace.steps.push_back(g5.record);
    v.density5 = Density5::yes;
    return v;
  }
  auto ce = candidate_exclusion_rule(N);
  v.trace.steps.push_back(ce.record);
  if (ce.applies) {
    v.density5 = Density5::no;
    return v;
  }
  bool decided = false;
  for (auto rule : {&Engine::rank0_rule, &Engine::dim_bound_rule, &Engine::df_exclusion_rule, &Engine::no_translate_rule}) {
    auto r = (this->*rule)(N);
    if (!r.applies) continue;
    v.trace.steps.push_back(r.record);
    decided = true;
  }
  v.density5 = decided ? Density5::no : Density5::open;
  return v;
}

Verdict Engine::classify_quintic(i64 N) {
  Verdict v = classify_density5(N);
  switch (v.density5) {
    case Density5::yes: {
      auto f = degree5_function_rule(N);
      v.trace.steps.push_back(f.applies ? f.record : gonality_five_rule(N).record);
      v.quintic = Quintic::infinite;
      break;
    }
    case Density5::no:
      v.trace.steps.push_back(density_exceeds_five_rule(N).record);
      v.quintic = Quintic::finite;
      break;
    case Density5::open:
      v.quintic = Quintic::open;
      break;
    case Density5::not_applicable: {
      if (auto f = degree5_function_rule(N); f.applies) {
        v.trace.steps.push_back(f.record);
        v.quintic = Quintic::infinite;
      } else if (auto c = rank0_cs_rule(N); c.applies) {
        v.trace.steps.push_back(c.record);
        v.quintic = Quintic::finite;
      } else {
        v.trace.steps.push_back(open_level_rule(N).record);
        v.quintic = Quintic::open;
      }
      break;
    }
  }
  if (v.trace.assumes_bsd()) v.assumptions.push_back("ASSUMES_BSD");
  return v;
}

std::vector<Verdict> Engine::classify_range(i64 lo, i64 hi, unsigned threads) {
  if (lo < 1 || hi < lo) throw Error(Errc::invalid_argument, "bad level range");
  const size_t n = static_cast<size_t>(hi - lo + 1);
  std::vector<Verdict> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, n));
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (size_t i; (i = next.fetch_add(1)) < n;) out[i] = classify_quintic(lo + static_cast<i64>(i));
      } catch (...) {
        errors[t] = std::current_exception();
        next = n;
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Table1Row> Engine::render_table1() {
  std::vector<Table1Row> rows;
  for (i64 N : facts_.targets().quintic_open.to_vector()) {
    Table1Row row;
    row.level = N;
    row.genus = genus(N);
    if (facts_.degree5_function(N))
      row.degree5_function = "yes";
    else if (gonality_fact(N, gonality_).lower >= 6 || cs_search(N, 0, gonality_))
      row.degree5_function = "no";
    else
      row.degree5_function = "?";

    for (const auto& f : positive_factors(N)) {
      Table1Factor tf;
      tf.label = f.label;
      tf.dimension = f.dimension;
      tf.multiplicity = multiplicity(N, f);
      tf.w4 = "?";
      if (f.dimension == 1) {
        const EllipticCurveRecord* E = nullptr;
        auto curves = client_->positive_rank_elliptic_with_conductor(f.level);
        for (const auto& c : curves)
          if (c.class_label() == newform_class(f.label)) E = &c;
        if (!E) throw Error(Errc::snapshot_miss, "no positive-rank curve for " + f.label);
        if (f.level == N && E->modular_degree <= 4) {
          tf.w4 = "yes†";
        } else if (f.level < N && tf.multiplicity == 2 && omega(N) == 2 && star_quotient_genus(N) == 1) {
          // The old copies of A meet the +1 part of every involution once
          // exactly when A itself has all Atkin-Lehner signs +1.
          bool plus = true;
          for (auto [q, e] : factor(f.level)) {
            if (e > 1) plus = false;
            else if (-ap(*E, q) != 1) plus = false;
          }
          if (plus) tf.w4 = "yes*";
        }
      } else if (f.dimension == 2 && f.level == N && f.analytic_rank % 2 == 1 &&
                 quotient_genus(N, N).genus == 2) {
        // Odd rank means Fricke sign +1, so A sits in J0(N)+ of dimension 2.
        tf.w4 = "yes⁺";
      }
      row.factors.push_back(std::move(tf));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CsTableRow> Engine::cs_table(bool elliptic_target) {
  const auto& src = elliptic_target ? facts_.targets().cs_elliptic : facts_.targets().cs_p1;
  std::vector<CsTableRow> out;
  for (const auto& e : src) {
    CsTableRow r;
    r.expected = e;
    r.genus = genus(e.level);
    AuxMap aux;
    if (e.aux == "P1") {
      auto a = gonality_aux(e.level, gonality_);
      if (!a) throw Error(Errc::snapshot_miss, "no cited map to P1 at " + std::to_string(e.level));
      aux = *a;
    } else {
      if (e.aux.size() < 2 || e.aux[0] != 'w') throw Error(Errc::parse_error, "bad auxiliary map " + e.aux);
      aux = atkin_lehner_aux(e.level, std::stoll(e.aux.substr(1)));
    }
    r.aux_genus = aux.target_genus;
    r.aux_degree = aux.degree;
    auto cert = cs_excludes_deg5(e.level, elliptic_target ? 1 : 0, aux);
    r.bound = cert.bound;
    r.excluded = cert.excluded;
    r.matches = r.genus == e.genus && r.aux_genus == e.aux_genus && r.aux_degree == e.degree && r.excluded;
    out.push_back(r);
  }
  return out;
}

bool Engine::replay(const RuleRecord& rec) {
  auto it = rec.inputs.find("N");
  if (it == rec.inputs.end()) return false;
  const i64 N = std::stoll(it->second);
  RuleOutcome o;
  if (rec.rule == "degree-le4-list") o = degree_le4_rule(N);
  else if (rec.rule == "gonality-five") o = gonality_five_rule(N);
  else if (rec.rule == "candidate-exclusion") o = candidate_exclusion_rule(N);
  else if (rec.rule == "rank0") o = rank0_rule(N);
  else if (rec.rule == "dim-bound") o = dim_bound_rule(N);
  else if (rec.rule == "df-exclusion") o = df_exclusion_rule(N);
  else if (rec.rule == "no-translate") o = no_translate_rule(N);
  else if (rec.rule == "degree5-function") o = degree5_function_rule(N);
  else if (rec.rule == "rank0-cs") o = rank0_cs_rule(N);
  else if (rec.rule == "open-level") o = open_level_rule(N);
  else if (rec.rule == "density-exceeds-five") o = density_exceeds_five_rule(N);
  else return false;
  const auto& r = o.record;
  return r.rule == rec.rule && r.inputs == rec.inputs && r.output == rec.output && r.citation == rec.citation &&
         r.assumes_bsd == rec.assumes_bsd;
}

}  // namespace x0q
