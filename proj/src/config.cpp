#include "linnik/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace linnik {

namespace {

const char* kEnvPrefix = "LINNIKPAIR_";

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "precision_bits", "prime_limit", "workers", "output", "format", "seed_scale",
  };
  return keys;
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
  }
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  size_t e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

OutputFormat format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("config: unknown format '" + s + "'");
}

void RunConfig::validate() const {
  if (precision_bits < 64) throw std::invalid_argument("config: precision_bits must be >= 64");
  if (prime_limit < 1000) throw std::invalid_argument("config: prime_limit must be >= 1000");
}

void RunConfig::apply_seed_scale() {
  prime_limit = 1'000'000;
  // frakJ desk scale N = 1e4 is a per-subcommand preset; nothing else to pin
}

RunConfig& apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "precision_bits") {
    cfg.precision_bits = (unsigned)parse_u64(key, value);
  } else if (key == "prime_limit") {
    cfg.prime_limit = parse_u64(key, value);
  } else if (key == "workers") {
    cfg.worker_count = (unsigned)parse_u64(key, value);
  } else if (key == "output") {
    cfg.output_path = value;
  } else if (key == "format") {
    cfg.format = format_from_string(value);
  } else if (key == "seed_scale") {
    if (value == "1" || value == "true") cfg.apply_seed_scale();
  } else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    if (name.empty()) throw std::invalid_argument("config: empty tolerance name");
    try {
      cfg.tolerance_overrides[name] = std::stod(value);
    } catch (...) {
      throw std::invalid_argument("config: bad tolerance for " + key);
    }
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig& apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value in " + path);
    }
    apply_assignment(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

RunConfig& apply_environment(RunConfig& cfg) {
  for (const std::string& key : known_keys()) {
    std::string env_name = kEnvPrefix;
    for (char c : key) env_name += (char)std::toupper((unsigned char)c);
    const char* v = std::getenv(env_name.c_str());
    if (v != nullptr) apply_assignment(cfg, key, v);
  }
  return cfg;
}

}  // namespace linnik
