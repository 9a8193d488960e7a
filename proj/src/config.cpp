#include "r0/config.hpp"

#include <fstream>
#include <sstream>

#include "r0/errors.hpp"

namespace r0 {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + text + "' is not a number");
  }
  if (pos != text.size())
    throw ConfigError(where + ": '" + text + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(trim(part));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

}  // namespace

std::string ConfigMap::where(const std::string& key) const {
  auto it = entries.find(key);
  std::string s = "key '" + key + "'";
  if (it != entries.end() && it->second.line > 0)
    s += " (line " + std::to_string(it->second.line) + ")";
  return s;
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (cfg.has(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
    cfg.entries[key] = {value, lineno};
  }
  return cfg;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError("'" + path + "' " + e.what());
  }
}

void apply_overrides(ConfigMap& cfg, const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    std::size_t eq = ov.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override '" + ov + "': expected key=value");
    std::string key = trim(ov.substr(0, eq));
    cfg.entries[key] = {trim(ov.substr(eq + 1)), 0};
  }
}

std::string ConfigReader::raw(const std::string& key) {
  used_.insert(key);
  return cfg_.entries.at(key).value;
}

std::string ConfigReader::get_string(const std::string& key,
                                     const std::string& fallback) {
  return has(key) ? raw(key) : fallback;
}

std::string ConfigReader::require_string(const std::string& key) {
  if (!has(key)) throw ConfigError("missing required key '" + key + "'");
  return raw(key);
}

int ConfigReader::get_int(const std::string& key, int fallback, int lo, int hi) {
  if (!has(key)) return fallback;
  double v = parse_double(raw(key), cfg_.where(key));
  if (v != double(int(v)))
    throw ConfigError(cfg_.where(key) + ": expected an integer");
  if (int(v) < lo || int(v) > hi)
    throw ConfigError(cfg_.where(key) + ": value " + std::to_string(int(v)) +
                      " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return int(v);
}

double ConfigReader::get_double(const std::string& key, double fallback,
                                double lo, double hi) {
  if (!has(key)) return fallback;
  double v = parse_double(raw(key), cfg_.where(key));
  if (!(v >= lo && v <= hi))
    throw ConfigError(cfg_.where(key) + ": value outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

bool ConfigReader::get_bool(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  std::string v = raw(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(cfg_.where(key) + ": expected true/false");
}

std::uint64_t ConfigReader::get_u64(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) return fallback;
  std::string v = raw(key);
  try {
    std::size_t pos = 0;
    std::uint64_t r = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (const std::exception&) {
    throw ConfigError(cfg_.where(key) + ": expected an unsigned integer");
  }
}

std::vector<double> ConfigReader::get_vector(const std::string& key, int dim) {
  if (!has(key)) return {};
  std::vector<std::string> parts = split(raw(key), ',');
  std::vector<double> v;
  for (const std::string& p : parts) v.push_back(parse_double(p, cfg_.where(key)));
  if (dim > 0 && int(v.size()) != dim)
    throw ConfigError(cfg_.where(key) + ": expected " + std::to_string(dim) +
                      " components, got " + std::to_string(v.size()));
  return v;
}

std::vector<double> ConfigReader::require_vector(const std::string& key, int dim) {
  if (!has(key)) throw ConfigError("missing required key '" + key + "'");
  return get_vector(key, dim);
}

std::vector<std::vector<double>> ConfigReader::require_points(const std::string& key,
                                                              int dim) {
  if (!has(key)) throw ConfigError("missing required key '" + key + "'");
  std::vector<std::vector<double>> pts;
  for (const std::string& group : split(raw(key), ';')) {
    if (group.empty()) continue;
    std::vector<double> p;
    for (const std::string& c : split(group, ',')) {
      if (c.empty())
        throw ConfigError(cfg_.where(key) + ": empty component");
      p.push_back(parse_double(c, cfg_.where(key)));
    }
    if (int(p.size()) != dim)
      throw ConfigError(cfg_.where(key) + ": point needs " + std::to_string(dim) +
                        " components, got " + std::to_string(p.size()));
    pts.push_back(std::move(p));
  }
  if (pts.empty()) throw ConfigError(cfg_.where(key) + ": no points");
  return pts;
}

void ConfigReader::finish() const {
  for (const auto& [key, entry] : cfg_.entries)
    if (!used_.count(key))
      throw ConfigError("unknown " + cfg_.where(key));
}

}  // namespace r0
