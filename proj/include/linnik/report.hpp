#pragma once

// Verified-constant reports and their byte-deterministic serialisations.
// A report compares a computed enclosure against a reference decimal in a
// declared direction with a declared tolerance, and carries the list of
// imported (not recomputed) inputs it depends on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linnik/interval.hpp"

namespace linnik {

struct ImportRecord {
  std::string name;
  std::string value;   // decimal literal as imported
  std::string source;  // provenance label
};

enum class Direction { ge, le, eq };

std::string direction_str(Direction d);

struct ConstantReport {
  std::string name;
  std::string paper_value;  // reference decimal
  Direction direction = Direction::eq;
  Interval computed;
  std::string lo_rendered;  // canonical 25-digit outward renderings
  std::string hi_rendered;
  double tolerance = 0.0;   // slack; absolute unless tolerance_relative
  bool tolerance_relative = false;
  std::vector<ImportRecord> imports;
  std::string note;
  bool pass = false;

  static ConstantReport make(std::string name, std::string paper_value, Direction dir,
                             const Interval& computed, double tolerance,
                             bool tolerance_relative = false,
                             std::vector<ImportRecord> imports = {}, std::string note = {});
};

struct RenderedInterval {
  Interval value;
  std::string lo;  // canonical 25-digit outward renderings
  std::string hi;

  static RenderedInterval make(const Interval& v);
};

struct GateResult {
  double lambda = 0.0;
  Interval main_term;
  Interval minor_term;
  int64_t minimal_k = 0;
  bool determinate = false;
  RenderedInterval margin_below;  // at minimal_k - 1
  RenderedInterval margin_at;     // at minimal_k
  RenderedInterval margin_above;  // at minimal_k + 1
};

struct ELambdaRecord {
  double lambda = 0.0;
  unsigned L = 0;
  uint64_t grid = 0;
  double measure = 0.0;
  double exponent_fit = 0.0;
  bool fit_valid = false;
};

struct ReportBundle {
  std::string version = "1.0.0";
  unsigned precision_bits = 0;
  std::vector<ConstantReport> reports;
  std::optional<GateResult> gate;
  std::vector<ELambdaRecord> elambda;

  bool all_pass() const;
  const ConstantReport* find(const std::string& name) const;
};

std::string to_json(const ReportBundle& b);
ReportBundle parse_json(const std::string& text);
std::string to_table(const ReportBundle& b);
std::string to_csv(const ReportBundle& b);

namespace series {
struct LocalFactorRecord;
}
namespace pow2 {
struct PairHistogram;
}

// CSV of local-factor tables, columns p,n,lo,hi.
std::string local_factors_csv(const std::vector<series::LocalFactorRecord>& recs);

// CSV of a signed pair histogram, columns h,count.
std::string histogram_csv(const pow2::PairHistogram& hist);

// Atomic write: temp file in the target directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

std::string interval_lo_str(const Interval& x);
std::string interval_hi_str(const Interval& x);

}  // namespace linnik
