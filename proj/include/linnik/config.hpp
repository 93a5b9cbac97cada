#pragma once

// Run configuration with three override layers: defaults, then a flat
// key=value config file, then explicit (command-line) overrides. Unknown
// keys are rejected.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace linnik {

enum class OutputFormat { json, table, csv };

struct RunConfig {
  unsigned precision_bits = 128;
  uint64_t prime_limit = 1'000'000;
  unsigned worker_count = 0;  // 0 = hardware concurrency
  std::string output_path;    // empty = stdout
  OutputFormat format = OutputFormat::json;
  std::map<std::string, double> tolerance_overrides;

  void validate() const;  // precision >= 64, prime_limit >= 1e3
  // Desk-scale presets used by the acceptance runs.
  void apply_seed_scale();
};

// One "key=value" assignment; keys match the config-file keys.
RunConfig& apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat key=value file; '#' starts a comment. Unknown keys are rejected.
RunConfig& apply_config_file(RunConfig& cfg, const std::string& path);

// Environment overrides: LINNIKPAIR_<KEY> mirrors each config key.
RunConfig& apply_environment(RunConfig& cfg);

OutputFormat format_from_string(const std::string& s);

}  // namespace linnik
