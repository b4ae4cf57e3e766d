#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "x0quintic/classifier.hpp"
#include "x0quintic/error.hpp"
#include "x0quintic/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitData = 3;

struct Range {
  x0q::i64 lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw x0q::Error(x0q::Errc::invalid_argument, "range must look like A..B");
  Range r{std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
  if (r.lo < 1 || r.hi < r.lo) throw x0q::Error(x0q::Errc::invalid_argument, "bad range " + s);
  return r;
}

// Compares a verdict with the reference lists; returns a description of the mismatch.
std::string divergence(const x0q::Engine& eng, const x0q::Verdict& v) {
  const auto& t = eng.facts().targets();
  const bool yes_expected = t.density5_yes.contains(v.level);
  if ((v.density5 == x0q::Density5::yes) != yes_expected)
    return "density degree 5 at N=" + std::to_string(v.level) + " disagrees with the reference";
  if (v.density5 == x0q::Density5::open) return "no rule decides density degree at N=" + std::to_string(v.level);
  if (v.level <= 191) {
    const x0q::LevelSet* want = v.quintic == x0q::Quintic::infinite ? &t.quintic_infinite
                                : v.quintic == x0q::Quintic::finite ? &t.quintic_finite
                                                                     : &t.quintic_open;
    if (!want->contains(v.level))
      return "quintic verdict at N=" + std::to_string(v.level) + " disagrees with the reference";
  } else if (v.quintic != x0q::Quintic::finite) {
    return "quintic verdict at N=" + std::to_string(v.level) + " should be finite";
  }
  return {};
}

int report_divergences(const std::vector<std::string>& msgs) {
  for (const auto& m : msgs) std::cerr << "divergence: " << m << "\n";
  return msgs.empty() ? kExitOk : kExitDivergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density degree and quintic points on X0(N)"};
  app.require_subcommand(1);
  app.fallthrough();

  bool offline = false, trace = false;
  std::string snapshot, format = "text", base_url = "https://www.lmfdb.org";
  app.add_flag("--offline", offline, "Never touch the network; answer from the snapshot only");
  app.add_option("--snapshot", snapshot, "Snapshot file to read (and extend when online)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--trace", trace, "Print the proof trace of every verdict");
  app.add_option("--base-url", base_url, "Database base URL");

  auto* classify = app.add_subcommand("classify", "Classify one level or a range of levels");
  x0q::i64 level = 0;
  std::string range;
  auto* level_opt = classify->add_option("--level", level, "Level N")->check(CLI::PositiveNumber);
  auto* range_opt = classify->add_option("--range", range, "Levels A..B");
  level_opt->excludes(range_opt);
  unsigned threads = 0;
  classify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* report = app.add_subcommand("report", "Regenerate one of the reference results");
  std::string theorem;
  report->add_option("--theorem", theorem, "Which result")
      ->required()
      ->check(CLI::IsMember({"density5", "quintic", "table1", "candidates", "cs-tables"}));
  x0q::i64 report_max = 467;
  report->add_option("--max", report_max, "Largest level for density5")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Positive-rank pentaelliptic sweep");
  bool penta = false;
  x0q::i64 sweep_max = 467;
  sweep->add_flag("--pentaelliptic", penta, "Run the degree-5 map sweep")->required();
  sweep->add_option("--max", sweep_max, "Largest level")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFailure;
  }

  try {
    x0q::ClientOptions opts;
    opts.offline = offline;
    opts.base_url = base_url;
    if (!offline && !snapshot.empty()) opts.persist_path = snapshot;
    auto eng = x0q::Engine::bundled(opts, snapshot);
    const auto fmt = x0q::parse_format(format);

    if (*classify) {
      if (!*level_opt && !*range_opt) throw x0q::Error(x0q::Errc::invalid_argument, "classify needs --level or --range");
      Range r = *level_opt ? Range{level, level} : parse_range(range);
      auto vs = eng.classify_range(r.lo, r.hi, threads);
      std::cout << x0q::render_verdicts(vs, fmt, trace);
      std::vector<std::string> div;
      for (const auto& v : vs)
        if (auto m = divergence(eng, v); !m.empty()) div.push_back(m);
      return report_divergences(div);
    }

    if (*report) {
      std::vector<std::string> div;
      if (theorem == "candidates") {
        auto c = eng.candidate_levels_density5();
        std::cout << x0q::render_candidates(c, fmt);
        if (x0q::LevelSet::of(c) != eng.facts().targets().candidates) div.push_back("candidate list differs");
      } else if (theorem == "density5") {
        auto vs = eng.classify_range(1, report_max);
        std::cout << x0q::render_density5(vs, fmt);
        if (trace) std::cout << x0q::render_verdicts(vs, fmt, true);
        for (const auto& v : vs)
          if (auto m = divergence(eng, v); !m.empty()) div.push_back(m);
      } else if (theorem == "quintic") {
        auto vs = eng.classify_range(1, 191);
        std::cout << x0q::render_quintic(vs, fmt);
        if (fmt == x0q::Format::text) std::cout << "N >= 192: finitely many quintic points\n";
        if (trace) std::cout << x0q::render_verdicts(vs, fmt, true);
        for (const auto& v : vs)
          if (auto m = divergence(eng, v); !m.empty()) div.push_back(m);
      } else if (theorem == "table1") {
        std::cout << x0q::render_table1(eng.render_table1(), fmt);
      } else {
        auto p1 = eng.cs_table(false);
        auto ell = eng.cs_table(true);
        std::cout << x0q::render_cs_tables(p1, ell, fmt);
        for (const auto* rows : {&p1, &ell})
          for (const auto& r : *rows)
            if (!r.matches) div.push_back("CS row N=" + std::to_string(r.expected.level));
      }
      return report_divergences(div);
    }

    if (*sweep) {
      if (sweep_max >= 468) throw x0q::Error(x0q::Errc::invalid_argument, "the lattice sweep covers N < 468");
      std::vector<x0q::PentaCoverage> cov;
      for (x0q::i64 N = 1; N <= sweep_max; ++N) cov.push_back(eng.pentaelliptic(N));
      std::cout << x0q::render_sweep(cov, fmt, trace);
      std::vector<std::string> div;
      for (const auto& c : cov)
        if (!c.excluded) div.push_back("N=" + std::to_string(c.level) + " undecided");
      return report_divergences(div);
    }
  } catch (const x0q::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == x0q::Errc::network_unavailable || e.code() == x0q::Errc::snapshot_miss) return kExitData;
    if (e.code() == x0q::Errc::divergence) return kExitDivergence;
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
