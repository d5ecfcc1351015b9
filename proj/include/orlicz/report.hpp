#ifndef ORLICZ_REPORT_HPP
#define ORLICZ_REPORT_HPP

// Run reports: one result table plus named constants and pass/fail checks.
// CSV carries the table alone and is byte-reproducible for a fixed config;
// JSON mirrors the whole report and adds the wall-clock duration.

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace orlicz {

/// Fixed 17-significant-digit rendering; round-trips doubles and keeps
/// repeated runs byte-identical.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Report {
  std::string command;
  std::map<std::string, std::string> config;  // resolved configuration echo
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // numeric cells preformatted
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::pair<std::string, bool>> checks;
  bool pass = true;  // conjunction of the checks
  double duration_seconds = 0.0;

  void add_constant(const std::string& name, double v) { constants.push_back({name, v}); }
  void add_check(const std::string& name, bool ok) {
    checks.push_back({name, ok});
    pass = pass && ok;
  }
};

inline std::string to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["command"] = rep.command;
  j["config"] = rep.config;
  j["columns"] = rep.columns;
  j["rows"] = rep.rows;
  nlohmann::ordered_json consts;
  for (const auto& [name, v] : rep.constants) consts[name] = v;
  j["constants"] = consts;
  nlohmann::ordered_json checks;
  for (const auto& [name, ok] : rep.checks) checks[name] = ok;
  j["checks"] = checks;
  j["pass"] = rep.pass;
  j["duration_seconds"] = rep.duration_seconds;
  return j.dump(2) + "\n";
}

inline std::string to_csv(const Report& rep) {
  std::string out;
  for (std::size_t c = 0; c < rep.columns.size(); ++c) {
    if (c) out += ',';
    out += rep.columns[c];
  }
  out += '\n';
  for (const auto& row : rep.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace orlicz

#endif  // ORLICZ_REPORT_HPP
