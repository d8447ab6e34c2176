#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "graspkit/common.hpp"

namespace graspkit {

/// Flat `key = value` text document with dotted keys. This is the
/// human-readable structured format used for episode metadata, manifests,
/// scene specs, suites, checkpoints, and run configs. Keys keep insertion
/// order on write so files diff cleanly.
class KvFile {
 public:
  KvFile() = default;

  static KvFile parse(const std::string& text) {
    KvFile kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = trim(line);
      if (s.empty() || s[0] == '#') continue;
      auto eq = s.find('=');
      require(eq != std::string::npos, Errc::ConfigError,
              "missing '=' on line " + std::to_string(lineno));
      kv.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    return kv;
  }

  static KvFile load(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::IoFailure, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  std::string serialize() const {
    std::ostringstream out;
    for (const auto& k : order_) out << k << " = " << values_.at(k) << "\n";
    return out.str();
  }

  void save(const fs::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), Errc::IoFailure, "cannot write " + path.string());
    out << serialize();
    require(out.good(), Errc::IoFailure, "short write to " + path.string());
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  void set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = value;
  }
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, bool v) { set(key, std::string(v ? "true" : "false")); }
  void set(const std::string& key, std::int64_t v) { set(key, std::to_string(v)); }
  void set(const std::string& key, int v) { set(key, static_cast<std::int64_t>(v)); }
  void set(const std::string& key, std::uint64_t v) { set(key, std::to_string(v)); }
  void set(const std::string& key, std::size_t v) { set(key, std::to_string(v)); }
  void set(const std::string& key, double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    set(key, s.str());
  }
  void set(const std::string& key, const std::vector<double>& v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    set(key, s.str());
  }

  const std::string& get(const std::string& key) const {
    auto it = values_.find(key);
    require(it != values_.end(), Errc::ConfigError, "missing key '" + key + "'");
    return it->second;
  }
  std::string get_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }
  std::int64_t get_int(const std::string& key) const { return std::stoll(get(key)); }
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
  }
  double get_double(const std::string& key) const { return std::stod(get(key)); }
  double get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }
  bool get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    raise(Errc::ConfigError, "key '" + key + "' is not a boolean: " + v);
  }
  bool get_bool_or(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
  }
  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(get(key));
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
  }

  const std::vector<std::string>& keys() const { return order_; }

  /// Keys under `prefix.` in file order, with the prefix stripped.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& k : order_)
      if (k.rfind(prefix + ".", 0) == 0) out.push_back(k.substr(prefix.size() + 1));
    return out;
  }

  bool operator==(const KvFile& other) const { return values_ == other.values_; }

 private:
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
};

}  // namespace graspkit
