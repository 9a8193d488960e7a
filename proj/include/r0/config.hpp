#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace r0 {

// Flat key=value config. '#' starts a comment, blank lines are skipped,
// whitespace around key and value is trimmed. Dotted keys form groups by
// convention only (reward.0.tau); the parser does not interpret them.
struct ConfigMap {
  struct Entry {
    std::string value;
    int line = 0;  // 0 for overrides
  };
  std::map<std::string, Entry> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  std::string where(const std::string& key) const;  // "key 'k' (line N)"
};

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

// Each override is "key=value"; malformed ones throw ConfigError.
void apply_overrides(ConfigMap& cfg, const std::vector<std::string>& overrides);

// Typed access with consumption tracking: finish() rejects any key that was
// never read, naming it and its line. Range violations name the key too.
class ConfigReader {
 public:
  explicit ConfigReader(const ConfigMap& cfg) : cfg_(cfg) {}

  bool has(const std::string& key) const { return cfg_.has(key); }

  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  int get_int(const std::string& key, int fallback, int lo, int hi);
  double get_double(const std::string& key, double fallback, double lo, double hi);
  bool get_bool(const std::string& key, bool fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);

  // "1.0, 2.5" -> vector; require_ variant throws when absent.
  std::vector<double> get_vector(const std::string& key, int dim);
  std::vector<double> require_vector(const std::string& key, int dim);
  // "1,1; -1,1" -> list of points.
  std::vector<std::vector<double>> require_points(const std::string& key, int dim);

  void finish() const;

 private:
  std::string raw(const std::string& key);
  const ConfigMap& cfg_;
  std::set<std::string> used_;
};

}  // namespace r0
