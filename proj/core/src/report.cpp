#include "x0quintic/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "x0quintic/error.hpp"

namespace x0q {

using nlohmann::ordered_json;

namespace {

ordered_json rule_json(const RuleRecord& r) {
  ordered_json j;
  j["rule"] = r.rule;
  j["inputs"] = r.inputs;
  j["output"] = r.output;
  j["citation"] = r.citation;
  j["assumes_bsd"] = r.assumes_bsd;
  return j;
}

ordered_json verdict_json(const Verdict& v, bool with_trace) {
  ordered_json j;
  j["level"] = v.level;
  j["verdicts"] = {{"density_degree_5", density5_name(v.density5)}, {"quintic_points", quintic_name(v.quintic)}};
  j["trace"] = ordered_json::array();
  if (with_trace)
    for (const auto& s : v.trace.steps) j["trace"].push_back(rule_json(s));
  j["assumptions"] = v.assumptions;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string level_list(const std::vector<i64>& xs) {
  return LevelSet::of(xs).str();
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json j = ordered_json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

std::string matrix_text(const IntMatrix& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.size(); ++i) {
    s += i ? ";" : "";
    for (size_t k = 0; k < m[i].size(); ++k) s += (k ? " " : "") + std::to_string(m[i][k]);
  }
  return s + "]";
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  throw Error(Errc::invalid_argument, "format must be text or json");
}

std::string render_verdicts(const std::vector<Verdict>& vs, Format f, bool with_trace) {
  if (f == Format::json) {
    if (vs.size() == 1) return dump(verdict_json(vs[0], with_trace));
    ordered_json arr = ordered_json::array();
    for (const auto& v : vs) arr.push_back(verdict_json(v, with_trace));
    return dump(arr);
  }
  std::ostringstream out;
  for (const auto& v : vs) {
    out << "N=" << v.level << "  density_degree_5=" << density5_name(v.density5)
        << "  quintic_points=" << quintic_name(v.quintic);
    for (const auto& a : v.assumptions) out << "  [" << a << "]";
    out << "\n";
    if (!with_trace) continue;
    for (const auto& s : v.trace.steps) {
      out << "    " << s.rule << " (" << s.citation << "): " << s.output;
      if (s.assumes_bsd) out << " [ASSUMES_BSD]";
      out << "\n";
      for (const auto& [k, val] : s.inputs)
        if (k != "N") out << "        " << k << " = " << val << "\n";
    }
  }
  return out.str();
}

std::string render_candidates(const std::vector<i64>& levels, Format f) {
  if (f == Format::json) return dump(ordered_json{{"candidates", levels}, {"count", levels.size()}});
  std::ostringstream out;
  out << "candidate levels for density degree 5 (" << levels.size() << "):";
  for (i64 n : levels) out << " " << n;
  out << "\n";
  return out.str();
}

std::string render_density5(const std::vector<Verdict>& vs, Format f) {
  std::vector<i64> yes, no, na, open;
  for (const auto& v : vs) {
    switch (v.density5) {
      case Density5::yes: yes.push_back(v.level); break;
      case Density5::no: no.push_back(v.level); break;
      case Density5::not_applicable: na.push_back(v.level); break;
      case Density5::open: open.push_back(v.level); break;
    }
  }
  if (f == Format::json)
    return dump(ordered_json{{"yes", yes}, {"no", level_list(no)}, {"n/a", level_list(na)}, {"open", open}});
  std::ostringstream out;
  out << "density degree 5: " << level_list(yes) << "\n";
  out << "density degree > 5: " << level_list(no) << "\n";
  out << "density degree <= 4: " << level_list(na) << "\n";
  out << "undecided: " << (open.empty() ? "none" : level_list(open)) << "\n";
  return out.str();
}

std::string render_quintic(const std::vector<Verdict>& vs, Format f) {
  std::vector<i64> inf, fin, open;
  for (const auto& v : vs) {
    if (v.quintic == Quintic::infinite) inf.push_back(v.level);
    else if (v.quintic == Quintic::finite) fin.push_back(v.level);
    else open.push_back(v.level);
  }
  if (f == Format::json)
    return dump(ordered_json{{"infinite", level_list(inf)}, {"finite", level_list(fin)}, {"open", level_list(open)},
                             {"open_count", open.size()}});
  std::ostringstream out;
  out << "infinitely many quintic points (" << inf.size() << "): " << level_list(inf) << "\n";
  out << "finitely many quintic points (" << fin.size() << "): " << level_list(fin) << "\n";
  out << "open (" << open.size() << "): " << level_list(open) << "\n";
  return out.str();
}

std::string render_table1(const std::vector<Table1Row>& rows, Format f) {
  if (f == Format::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j{{"N", r.level}, {"genus", r.genus}, {"deg5_function", r.degree5_function}};
      j["factors"] = ordered_json::array();
      for (const auto& a : r.factors)
        j["factors"].push_back({{"A", a.label}, {"dim", a.dimension}, {"multiplicity", a.multiplicity}, {"W4", a.w4}});
      arr.push_back(j);
    }
    return dump(arr);
  }
  std::ostringstream out;
  out << std::left << std::setw(5) << "N" << std::setw(7) << "genus" << std::setw(6) << "deg5" << std::setw(12) << "A"
      << std::setw(5) << "dim" << std::setw(6) << "mult" << "in W4\n";
  for (const auto& r : rows) {
    if (r.factors.empty()) {
      out << std::setw(5) << r.level << std::setw(7) << r.genus << std::setw(6) << r.degree5_function
          << "(no positive-rank factor)\n";
      continue;
    }
    bool first = true;
    for (const auto& a : r.factors) {
      if (first)
        out << std::setw(5) << r.level << std::setw(7) << r.genus << std::setw(6) << r.degree5_function;
      else
        out << std::setw(18) << "";
      out << std::setw(12) << a.label << std::setw(5) << a.dimension << std::setw(6) << a.multiplicity << a.w4 << "\n";
      first = false;
    }
  }
  return out.str();
}

std::string render_cs_tables(const std::vector<CsTableRow>& p1, const std::vector<CsTableRow>& elliptic, Format f) {
  auto rows_json = [](const std::vector<CsTableRow>& rs) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rs)
      arr.push_back({{"N", r.expected.level},
                     {"g", r.genus},
                     {"Y", r.expected.aux},
                     {"deg", r.aux_degree},
                     {"gY", r.aux_genus},
                     {"bound", r.bound},
                     {"excluded", r.excluded},
                     {"matches", r.matches}});
    return arr;
  };
  if (f == Format::json) return dump(ordered_json{{"to_P1", rows_json(p1)}, {"to_elliptic", rows_json(elliptic)}});
  std::ostringstream out;
  auto table = [&](const char* title, const std::vector<CsTableRow>& rs) {
    out << title << "\n";
    out << std::left << std::setw(6) << "N" << std::setw(5) << "g" << std::setw(7) << "Y" << std::setw(5) << "deg"
        << std::setw(5) << "gY" << std::setw(7) << "bound" << "status\n";
    for (const auto& r : rs)
      out << std::setw(6) << r.expected.level << std::setw(5) << r.genus << std::setw(7) << r.expected.aux
          << std::setw(5) << r.aux_degree << std::setw(5) << r.aux_genus << std::setw(7) << r.bound
          << (r.matches ? "excluded" : (r.excluded ? "excluded, differs from reference" : "NOT excluded")) << "\n";
  };
  table("no degree-5 map to P1:", p1);
  out << "\n";
  table("no degree-5 map to an elliptic curve:", elliptic);
  return out.str();
}

std::string render_sweep(const std::vector<PentaCoverage>& levels, Format f, bool with_trace) {
  size_t undecided = 0;
  for (const auto& c : levels) undecided += !c.excluded;
  if (f == Format::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : levels) {
      ordered_json j{{"level", c.level}, {"status", c.excluded ? "EXCLUDED" : "UNDECIDED"}, {"mechanism", c.mechanism}};
      if (with_trace && c.decision) {
        j["curves"] = ordered_json::array();
        for (const auto& t : c.decision->traces) {
          ordered_json cj{{"label", t.label},
                          {"conductor", t.conductor},
                          {"modular_degree", t.modular_degree},
                          {"reason", penta_case_name(t.reason)},
                          {"detail", t.detail}};
          if (t.gram) cj["gram"] = matrix_json(*t.gram);
          if (t.form_minimum) cj["form_minimum"] = *t.form_minimum;
          j["curves"].push_back(cj);
        }
      }
      arr.push_back(j);
    }
    return dump(ordered_json{{"levels", arr}, {"undecided", undecided}});
  }
  std::ostringstream out;
  for (const auto& c : levels) {
    out << "N=" << c.level << " " << (c.excluded ? "EXCLUDED" : "UNDECIDED") << " (" << c.mechanism;
    if (c.decision) out << ", " << c.decision->traces.size() << " curve(s)";
    out << ")\n";
    if (!with_trace || !c.decision) continue;
    for (const auto& t : c.decision->traces) {
      out << "    " << t.label << " deg f=" << t.modular_degree << " " << penta_case_name(t.reason);
      if (t.gram) out << " gram=" << matrix_text(*t.gram);
      if (t.form_minimum) out << " min=" << *t.form_minimum;
      out << "\n";
    }
  }
  out << "levels: " << levels.size() << ", undecided: " << undecided << "\n";
  return out.str();
}

}  // namespace x0q
