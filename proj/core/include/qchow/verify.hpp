#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qchow/report.hpp"

namespace qchow {

// Outcome of one identity family at one dimension.
struct FamilyResult {
  long cases = 0;
  bool pass = true;
  std::optional<std::string> witness;
  ParamMap extra;

  void fail(const std::string& why) {
    if (pass) {
      pass = false;
      witness = why;
    }
  }
};

struct VerifyFamily {
  std::string name;
  int max_n;  // largest dimension the family is meant to run at
  std::function<FamilyResult(const QuadricContext&)> run;
};

const std::vector<VerifyFamily>& verify_families();

struct VerifyOptions {
  int n_min = 2;
  int n_max = 10;
  std::string filter;  // substring over family names; empty selects all
  Orientation orientation = Orientation::ld;
  std::optional<Orientation> delta_middle;
  int bound = 14;
};

// Runs every matching family over the dimension range and aggregates one
// check entry per (family, n).
Report run_verify(const VerifyOptions& opts);

}  // namespace qchow
