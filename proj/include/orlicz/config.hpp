#ifndef ORLICZ_CONFIG_HPP
#define ORLICZ_CONFIG_HPP

// Flat key-value run configuration: a plain text file of `key value`
// lines plus command-line overrides. Typed getters throw ConfigError
// naming the offending key, which the driver maps to exit code 2.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz {

struct ConfigError : std::runtime_error {
  std::string key;
  ConfigError(std::string k, const std::string& msg)
      : std::runtime_error("key '" + k + "': " + msg), key(std::move(k)) {}
};

class Config {
 public:
  Config() = default;

  /// `key value` or `key = value` per line; '#' starts a comment.
  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      if (eq != std::string::npos) line[eq] = ' ';
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key)) continue;
      std::string rest;
      std::getline(ls, rest);
      std::size_t b = rest.find_first_not_of(" \t=");
      std::size_t e = rest.find_last_not_of(" \t\r");
      if (b == std::string::npos)
        throw ConfigError(key, "missing value at line " + std::to_string(lineno));
      cfg.set(key, rest.substr(b, e - b + 1));
    }
    return cfg;
  }

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
  }

  double get_double(const std::string& key, double dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    return parse_double(key, it->second);
  }

  int get_int(const std::string& key, int dflt) const {
    double v = get_double(key, dflt);
    if (v != std::floor(v)) throw ConfigError(key, "expected an integer, got '" + raw(key) + "'");
    return static_cast<int>(v);
  }

  bool get_bool(const std::string& key, bool dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError(key, "expected true/false, got '" + it->second + "'");
  }

  /// Comma-separated doubles.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError(key, "expected a comma-separated list");
    return out;
  }

  /// Semicolon-separated pairs `a,b;c,d`.
  std::vector<std::pair<double, double>> get_pairs(
      const std::string& key, const std::vector<std::pair<double, double>>& dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ';')) {
      auto comma = item.find(',');
      if (comma == std::string::npos)
        throw ConfigError(key, "expected `a,b` pairs separated by ';', got '" + item + "'");
      out.push_back({parse_double(key, item.substr(0, comma)),
                     parse_double(key, item.substr(comma + 1))});
    }
    if (out.empty()) throw ConfigError(key, "expected at least one `a,b` pair");
    return out;
  }

  double positive(const std::string& key, double dflt) const {
    double v = get_double(key, dflt);
    if (!(v > 0.0)) throw ConfigError(key, "must be positive, got " + std::to_string(v));
    return v;
  }

  int power_of_two(const std::string& key, int dflt) const {
    int v = get_int(key, dflt);
    if (v <= 0 || (v & (v - 1)) != 0)
      throw ConfigError(key, "must be a power of two, got " + std::to_string(v));
    return v;
  }

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::string raw(const std::string& key) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? std::string() : it->second;
  }

  static double parse_double(const std::string& key, const std::string& text) {
    const char* s = text.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    while (end && *end == ' ') ++end;
    if (end == s || (end && *end != '\0'))
      throw ConfigError(key, "expected a number, got '" + text + "'");
    return v;
  }

  std::map<std::string, std::string> kv_;
};

}  // namespace orlicz

#endif  // ORLICZ_CONFIG_HPP
