#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qchow/edi.hpp"
#include "qchow/expr.hpp"
#include "qchow/report.hpp"
#include "qchow/verify.hpp"

namespace qchow::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;
constexpr int kContradiction = 3;

struct GlobalFlags {
  int n = 0;
  std::string orientation = "ld";
  std::string delta_middle;  // empty follows the orientation
  bool json = false;
  bool trace = false;
  int max_n = 14;
};

Orientation parse_orientation(const std::string& s) {
  if (s == "ld") return Orientation::ld;
  if (s == "ldprime") return Orientation::ldprime;
  throw std::domain_error("orientation must be ld or ldprime");
}

QuadricContext make_context(const GlobalFlags& g) {
  if (g.n > g.max_n) {
    throw std::domain_error("n=" + std::to_string(g.n) + " exceeds the --max-n bound " +
                            std::to_string(g.max_n));
  }
  std::optional<Orientation> delta;
  if (!g.delta_middle.empty()) delta = parse_orientation(g.delta_middle);
  return QuadricContext(g.n, parse_orientation(g.orientation), delta);
}

Report base_report(const GlobalFlags& g) {
  Report report;
  report.n = g.n;
  report.conventions.orientation = parse_orientation(g.orientation);
  report.conventions.delta_middle = g.delta_middle.empty()
                                        ? report.conventions.orientation
                                        : parse_orientation(g.delta_middle);
  return report;
}

void print_report(const Report& report, bool json) {
  if (json) {
    std::cout << report_to_json(report) << "\n";
  } else {
    std::cout << report_to_text(report);
  }
}

std::string format_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::string out;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(pairs[k].first) + ":" + std::to_string(pairs[k].second);
  }
  return out;
}

CheckEntry firing_entry(const RuleFiring& f) {
  CheckEntry entry;
  entry.name = "firing";
  entry.params["rule"] = std::string(rule_name(f.rule));
  entry.params["level"] = static_cast<long>(f.level);
  entry.params["m"] = static_cast<long>(f.m);
  if (f.l) entry.params["l"] = static_cast<long>(*f.l);
  if (f.a) entry.params["a"] = static_cast<long>(*f.a);
  if (!f.added.empty()) entry.params["added"] = format_pairs(f.added);
  if (!f.clipped.empty()) entry.params["clipped"] = format_pairs(f.clipped);
  entry.pass = !f.contradiction;
  if (f.contradiction) entry.witness = "contradiction";
  return entry;
}

// "level:m1,m2" possibly repeated with ';'
void apply_seed_spec(EDITable& table, const std::string& spec) {
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    auto colon = group.find(':');
    if (colon == std::string::npos) {
      throw std::domain_error("seed spec needs the form level:m1,m2,...");
    }
    int level = std::stoi(group.substr(0, colon));
    std::stringstream values(group.substr(colon + 1));
    std::string value;
    while (std::getline(values, value, ',')) {
      if (value.empty()) continue;
      table.add(level, std::stoi(value));
    }
  }
}

void apply_seed_json(EDITable& table, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open seed file " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  const nlohmann::json& tables = j.is_object() && j.contains("tables") ? j["tables"] : j;
  for (const nlohmann::json& entry : tables) {
    int level = entry.at("level").get<int>();
    for (int m : entry.at("members").get<std::vector<int>>()) table.add(level, m);
  }
}

void append_table(Report& report, const EDITable& table) {
  for (int i = 0; i <= table.d(); ++i) {
    report.tables.push_back({i, table.members(i)});
  }
}

int run_eval(const GlobalFlags& g, const std::string& text,
             const std::optional<std::string>& expect) {
  QuadricContext ctx = make_context(g);
  ExprPtr ast = parse_expr(text, ctx);
  EvalValue value = eval_expr(ast, ctx);
  std::string rendered = to_string(value, ctx);
  bool pass = !expect || *expect == rendered;

  if (g.json) {
    Report report = base_report(g);
    CheckEntry entry;
    entry.name = "eval";
    entry.params["expr"] = print_expr(ast);
    entry.params["value"] = rendered;
    entry.pass = pass;
    if (!pass) entry.witness = "expected " + *expect;
    report.checks.push_back(std::move(entry));
    print_report(report, true);
  } else {
    std::cout << rendered << "\n";
    if (!pass) std::cout << "expected: " << *expect << "\n";
  }
  return pass ? kOk : kCheckFailure;
}

int run_verify_cmd(const GlobalFlags& g, int n_min, const std::string& suite) {
  VerifyOptions opts;
  opts.n_min = n_min;
  opts.n_max = g.n;
  opts.filter = suite;
  opts.orientation = parse_orientation(g.orientation);
  if (!g.delta_middle.empty()) opts.delta_middle = parse_orientation(g.delta_middle);
  opts.bound = g.max_n;
  Report report = run_verify(opts);
  print_report(report, g.json);
  return report.all_pass() ? kOk : kCheckFailure;
}

int run_edi(const GlobalFlags& g, const std::string& mode, bool aniso,
            std::optional<int> i1, const std::vector<std::string>& seeds,
            const std::string& seed_json, const std::vector<std::string>& filters,
            long limit) {
  if (g.n > g.max_n) {
    throw std::domain_error("n=" + std::to_string(g.n) + " exceeds the --max-n bound " +
                            std::to_string(g.max_n));
  }
  WittContext witt;
  witt.anisotropic = aniso || i1.has_value();
  witt.i1 = i1;
  EDITable seed(g.n);
  validate_witt(witt, seed.d());
  for (const std::string& spec : seeds) apply_seed_spec(seed, spec);
  if (!seed_json.empty()) apply_seed_json(seed, seed_json);

  Report report = base_report(g);

  if (mode == "propagate") {
    PropagationResult result = propagate(seed, witt);
    CheckEntry entry;
    entry.name = "propagate";
    entry.params["rounds"] = static_cast<long>(result.rounds);
    entry.params["firings"] = static_cast<long>(result.trail.size());
    entry.pass = result.ok();
    if (!result.ok()) {
      const RuleFiring& f = *result.contradiction;
      entry.witness = std::string("contradiction via ") + rule_name(f.rule) +
                      " at level " + std::to_string(f.level) + ", m=" + std::to_string(f.m);
    }
    report.checks.push_back(std::move(entry));
    if (g.trace) {
      for (const RuleFiring& f : result.trail) report.checks.push_back(firing_entry(f));
      if (result.contradiction) report.checks.push_back(firing_entry(*result.contradiction));
    }
    append_table(report, result.table);
    print_report(report, g.json);
    return result.ok() ? kOk : kContradiction;
  }

  if (mode == "enumerate") {
    std::vector<LevelFilter> level_filters;
    for (const std::string& spec : filters) {
      auto colon = spec.find(':');
      if (colon == std::string::npos) {
        throw std::domain_error("filter spec needs the form level:m1,m2,...");
      }
      LevelFilter f;
      f.level = std::stoi(spec.substr(0, colon));
      std::stringstream values(spec.substr(colon + 1));
      std::string value;
      while (std::getline(values, value, ',')) {
        if (!value.empty()) f.required.push_back(std::stoi(value));
      }
      level_filters.push_back(std::move(f));
    }
    if (!seed.empty()) {
      throw std::domain_error("enumeration takes --filter constraints, not seeds");
    }
    long emitted = 0;
    uint64_t count = enumerate_admissible(
        g.n, witt, level_filters,
        [&](const EDITable& table) {
          if (emitted < limit) {
            append_table(report, table);
            ++emitted;
          }
          return true;
        },
        g.max_n);
    CheckEntry entry;
    entry.name = "enumerate";
    entry.params["count"] = static_cast<long>(count);
    entry.params["emitted"] = emitted;
    report.checks.push_back(std::move(entry));
    print_report(report, g.json);
    return kOk;
  }

  throw std::domain_error("unknown edi mode: " + mode);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"exact mod-2 Chow calculus on powers of split quadrics"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--n", g.n, "quadric dimension")->required();
  app.add_option("--orientation", g.orientation,
                 "which middle class is designated l_d (ld|ldprime)");
  app.add_option("--delta-middle-convention", g.delta_middle,
                 "middle class used by the delta family (ld|ldprime)");
  app.add_flag("--json", g.json, "emit the JSON report instead of text");
  app.add_flag("--trace", g.trace, "include the rule-firing audit trail");
  app.add_option("--max-n", g.max_n, "refuse dimensions above this bound");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a cycle expression");
  std::string expr_text;
  std::string expect_text;
  eval_cmd->add_option("expr", expr_text, "expression to evaluate")->required();
  eval_cmd->add_option("--expect", expect_text,
                       "fail (exit 1) unless the printed value matches");

  auto* verify_cmd = app.add_subcommand("verify", "run the identity suites");
  int n_min = 2;
  std::string suite;
  verify_cmd->add_option("--n-min", n_min, "lower end of the dimension range");
  verify_cmd->add_option("--suite", suite, "only run suites whose name contains this");

  auto* edi_cmd = app.add_subcommand("edi", "propagate or enumerate invariant tables");
  std::string mode = "propagate";
  bool aniso = false;
  int i1_value = 0;
  std::vector<std::string> seeds;
  std::string seed_json;
  std::vector<std::string> filters;
  long limit = 20;
  edi_cmd->add_option("--mode", mode, "propagate|enumerate");
  edi_cmd->add_flag("--aniso", aniso, "assume the quadric is anisotropic");
  auto* i1_opt = edi_cmd->add_option("--i1", i1_value,
                                     "first Witt index (implies --aniso)");
  edi_cmd->add_option("--seed", seeds, "seed memberships, e.g. 4:1,5");
  edi_cmd->add_option("--seed-json", seed_json, "seed table from a JSON report");
  edi_cmd->add_option("--filter", filters,
                      "restrict enumeration to tables containing level:m1,m2,...");
  edi_cmd->add_option("--limit", limit, "how many tables to include in the output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval_cmd->parsed()) {
      std::optional<std::string> expect;
      if (eval_cmd->count("--expect")) expect = expect_text;
      return run_eval(g, expr_text, expect);
    }
    if (verify_cmd->parsed()) {
      return run_verify_cmd(g, n_min, suite);
    }
    std::optional<int> i1;
    if (i1_opt->count()) i1 = i1_value;
    return run_edi(g, mode, aniso, i1, seeds, seed_json, filters, limit);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qchow::cli
