#pragma once

// End-game composition: the minor-arc coefficient, the minimal-k solver for
// main - minor * lambda^(k - 15/2) > 0, and the aggregated report covering
// every recomputed constant.

#include <cstdint>
#include <map>
#include <string>

#include "linnik/config.hpp"
#include "linnik/interval.hpp"
#include "linnik/report.hpp"

namespace linnik::gate {

// Imported (not recomputed) inputs, overridable for fault-injection runs.
struct Imports {
  std::map<std::string, std::string> values = {
      {"pair_moment_f_bound", "305.8869"},
      {"pair_histogram_series_bound", "23.39"},
      {"cube_pair_integral_coefficient", "440.62"},
      {"mertens_product_coefficient", "40.197"},
      {"beyond_sieve_series_floor", "0.984127"},
      {"window_integral_floor", "2.338190371"},
  };
  std::string at(const std::string& name) const;
  ImportRecord record(const std::string& name, const std::string& source) const;
  void override_value(const std::string& name, const std::string& value);
};

// sqrt(305.8869) * (7744 * 23.39)^(1/4) * 54.62495^(1/4) * (16(1+delta))^(-13/18)
Interval minor_arc_coefficient(const Imports& imports = {});

// 7744 * 23.39 as exact decimal arithmetic.
Interval pair_moment_product(const Imports& imports = {});

// Smallest k with main - minor * lambda^(k - 15/2) certified positive.
// Escalates precision when the margin straddles zero at the critical k.
GateResult minimal_k(const Interval& lambda, double lambda_label, const Interval& main_term,
                     const Interval& minor_term, int64_t k_max = 4096);

enum class Section { series, two_adic, major, sieve, gate_only, all };

// Reports for one module pipeline; Section::all is the full aggregation.
// The report order is fixed and serialisation is byte-deterministic.
ReportBundle report_section(const RunConfig& cfg, Section which, const Imports& imports = {});

// Full aggregation across all modules at the given configuration.
ReportBundle full_report(const RunConfig& cfg, const Imports& imports = {});

}  // namespace linnik::gate
