#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qchow/ring.hpp"

namespace qchow {

using ParamValue = std::variant<long, bool, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

struct CheckEntry {
  std::string name;
  ParamMap params;
  bool pass = true;
  std::optional<std::string> witness;  // always set on failure
};

struct TableLevels {
  int level = 0;
  std::vector<int> members;
};

struct Conventions {
  Orientation orientation = Orientation::ld;
  Orientation delta_middle = Orientation::ld;
  // Steenrod semantics carry the usual base-field caveat; recorded, not
  // enforced.
  std::string steenrod = "cohomological type; assumes characteristic != 2";
};

struct Report {
  int n = 0;
  Conventions conventions;
  std::vector<CheckEntry> checks;
  std::vector<TableLevels> tables;
  double timing_ms = 0;  // human output only, not part of the JSON schema

  bool all_pass() const;
};

std::string report_to_json(const Report& report, bool pretty = false);
Report report_from_json(const std::string& text);

// Human-readable rendering: one line per check plus any tables.
std::string report_to_text(const Report& report);

}  // namespace qchow
