#pragma once

#include <string>
#include <vector>

#include "x0quintic/classifier.hpp"

namespace x0q {

enum class Format { text, json };
Format parse_format(const std::string& s);

// One object per level: {level, verdicts, trace[], assumptions[]}.
std::string render_verdicts(const std::vector<Verdict>& vs, Format f, bool with_trace);
std::string render_candidates(const std::vector<i64>& levels, Format f);
std::string render_density5(const std::vector<Verdict>& vs, Format f);
std::string render_quintic(const std::vector<Verdict>& vs, Format f);
std::string render_table1(const std::vector<Table1Row>& rows, Format f);
std::string render_cs_tables(const std::vector<CsTableRow>& p1, const std::vector<CsTableRow>& elliptic, Format f);
std::string render_sweep(const std::vector<PentaCoverage>& levels, Format f, bool with_trace);

}  // namespace x0q
