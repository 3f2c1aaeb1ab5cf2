#include "qchow/report.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qchow {

using nlohmann::json;

bool Report::all_pass() const {
  for (const CheckEntry& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

json params_to_json(const ParamMap& params) {
  json out = json::object();
  for (const auto& [key, value] : params) {
    std::visit([&](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

ParamMap params_from_json(const json& j) {
  ParamMap out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_boolean()) {
      out[it.key()] = v.get<bool>();
    } else if (v.is_number_integer()) {
      out[it.key()] = v.get<long>();
    } else if (v.is_string()) {
      out[it.key()] = v.get<std::string>();
    } else {
      throw std::invalid_argument("unsupported parameter value for key " + it.key());
    }
  }
  return out;
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "ld") return Orientation::ld;
  if (s == "ldprime") return Orientation::ldprime;
  throw std::invalid_argument("unknown orientation: " + s);
}

}  // namespace

std::string report_to_json(const Report& report, bool pretty) {
  json j;
  j["n"] = report.n;
  j["conventions"] = {
      {"orientation", to_string(report.conventions.orientation)},
      {"delta_middle", to_string(report.conventions.delta_middle)},
      {"steenrod", report.conventions.steenrod},
  };
  j["checks"] = json::array();
  for (const CheckEntry& c : report.checks) {
    json entry;
    entry["name"] = c.name;
    entry["params"] = params_to_json(c.params);
    entry["pass"] = c.pass;
    entry["witness"] = c.witness ? json(*c.witness) : json(nullptr);
    j["checks"].push_back(std::move(entry));
  }
  j["tables"] = json::array();
  for (const TableLevels& t : report.tables) {
    j["tables"].push_back({{"level", t.level}, {"members", t.members}});
  }
  return pretty ? j.dump(2) : j.dump();
}

Report report_from_json(const std::string& text) {
  json j = json::parse(text);
  Report report;
  report.n = j.at("n").get<int>();
  const json& conv = j.at("conventions");
  report.conventions.orientation =
      orientation_from_string(conv.at("orientation").get<std::string>());
  report.conventions.delta_middle =
      orientation_from_string(conv.at("delta_middle").get<std::string>());
  report.conventions.steenrod = conv.at("steenrod").get<std::string>();
  for (const json& entry : j.at("checks")) {
    CheckEntry c;
    c.name = entry.at("name").get<std::string>();
    c.params = params_from_json(entry.at("params"));
    c.pass = entry.at("pass").get<bool>();
    if (!entry.at("witness").is_null()) {
      c.witness = entry.at("witness").get<std::string>();
    }
    report.checks.push_back(std::move(c));
  }
  for (const json& entry : j.at("tables")) {
    TableLevels t;
    t.level = entry.at("level").get<int>();
    t.members = entry.at("members").get<std::vector<int>>();
    report.tables.push_back(std::move(t));
  }
  return report;
}

std::string report_to_text(const Report& report) {
  std::ostringstream out;
  out << "n=" << report.n << " orientation=" << to_string(report.conventions.orientation)
      << " delta_middle=" << to_string(report.conventions.delta_middle) << "\n";
  for (const CheckEntry& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    for (const auto& [key, value] : c.params) {
      out << " " << key << "=";
      std::visit(
          [&](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, bool>) {
              out << (v ? "true" : "false");
            } else {
              out << v;
            }
          },
          value);
    }
    if (c.witness) out << "\n      witness: " << *c.witness;
    out << "\n";
  }
  for (const TableLevels& t : report.tables) {
    out << "  level " << t.level << ": {";
    for (size_t k = 0; k < t.members.size(); ++k) {
      if (k) out << ",";
      out << t.members[k];
    }
    out << "}\n";
  }
  if (report.timing_ms > 0) out << "  elapsed: " << report.timing_ms << " ms\n";
  return out.str();
}

}  // namespace qchow
