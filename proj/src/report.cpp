#include "linnik/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "linnik/powers_of_two.hpp"
#include "linnik/singular_series.hpp"

namespace linnik {

namespace {
constexpr int kRenderDigits = 25;

Interval slack_interval(const ConstantReport& r) {
  Interval s = Interval::exact_double(r.tolerance);
  if (r.tolerance_relative) s = s * Interval::decimal(r.paper_value).abs();
  return s;
}
}  // namespace

std::string direction_str(Direction d) {
  switch (d) {
    case Direction::ge:
      return ">=";
    case Direction::le:
      return "<=";
    case Direction::eq:
      return "=";
  }
  return "?";
}

std::string interval_lo_str(const Interval& x) { return x.lo_str(kRenderDigits); }
std::string interval_hi_str(const Interval& x) { return x.hi_str(kRenderDigits); }

RenderedInterval RenderedInterval::make(const Interval& v) {
  return RenderedInterval{v, interval_lo_str(v), interval_hi_str(v)};
}

ConstantReport ConstantReport::make(std::string name, std::string paper_value, Direction dir,
                                    const Interval& computed, double tolerance,
                                    bool tolerance_relative,
                                    std::vector<ImportRecord> imports, std::string note) {
  ConstantReport r;
  r.name = std::move(name);
  r.paper_value = std::move(paper_value);
  r.direction = dir;
  r.computed = computed;
  r.lo_rendered = interval_lo_str(computed);
  r.hi_rendered = interval_hi_str(computed);
  r.tolerance = tolerance;
  r.tolerance_relative = tolerance_relative;
  r.imports = std::move(imports);
  r.note = std::move(note);
  const Interval paper = Interval::decimal(r.paper_value);
  const Interval slack = slack_interval(r);
  switch (dir) {
    case Direction::ge:
      r.pass = computed.definitely_ge(paper - slack);
      break;
    case Direction::le:
      r.pass = computed.definitely_le(paper + slack);
      break;
    case Direction::eq:
      r.pass = Interval::span(paper - slack, paper + slack).overlaps(computed);
      break;
  }
  return r;
}

bool ReportBundle::all_pass() const {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  if (gate && !gate->determinate) return false;
  return true;
}

const ConstantReport* ReportBundle::find(const std::string& name) const {
  for (const auto& r : reports) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

nlohmann::json rendered_json(const RenderedInterval& x) {
  return nlohmann::json{{"lo", x.lo}, {"hi", x.hi}};
}

nlohmann::json report_json(const ConstantReport& r) {
  nlohmann::json imports = nlohmann::json::array();
  for (const auto& imp : r.imports) {
    imports.push_back({{"name", imp.name}, {"value", imp.value}, {"source", imp.source}});
  }
  return nlohmann::json{{"name", r.name},
                        {"paper_value", r.paper_value},
                        {"direction", direction_str(r.direction)},
                        {"lo", r.lo_rendered},
                        {"hi", r.hi_rendered},
                        {"tolerance", r.tolerance},
                        {"tolerance_relative", r.tolerance_relative},
                        {"imports", imports},
                        {"note", r.note},
                        {"pass", r.pass}};
}

}  // namespace

std::string to_json(const ReportBundle& b) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : b.reports) reports.push_back(report_json(r));
  nlohmann::json j{{"version", b.version},
                   {"precision_bits", b.precision_bits},
                   {"reports", reports}};
  if (b.gate) {
    j["gate"] = nlohmann::json{{"lambda", b.gate->lambda},
                               {"minimal_k", b.gate->minimal_k},
                               {"determinate", b.gate->determinate},
                               {"margins",
                                {{"below", rendered_json(b.gate->margin_below)},
                                 {"at", rendered_json(b.gate->margin_at)},
                                 {"above", rendered_json(b.gate->margin_above)}}}};
  }
  if (!b.elambda.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : b.elambda) {
      arr.push_back({{"lambda", e.lambda},
                     {"L", e.L},
                     {"grid", e.grid},
                     {"measure", e.measure},
                     {"exponent_fit", e.exponent_fit},
                     {"fit_valid", e.fit_valid}});
    }
    j["elambda"] = arr;
  }
  return j.dump(2) + "\n";
}

namespace {

Direction direction_from(const std::string& s) {
  if (s == ">=") return Direction::ge;
  if (s == "<=") return Direction::le;
  if (s == "=") return Direction::eq;
  throw std::invalid_argument("unknown direction: " + s);
}

RenderedInterval rendered_from(const nlohmann::json& j) {
  RenderedInterval out;
  out.lo = j.at("lo").get<std::string>();
  out.hi = j.at("hi").get<std::string>();
  out.value = Interval::span(Interval::decimal(out.lo), Interval::decimal(out.hi));
  return out;
}

}  // namespace

ReportBundle parse_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ReportBundle b;
  b.version = j.at("version").get<std::string>();
  b.precision_bits = j.at("precision_bits").get<unsigned>();
  for (const auto& rj : j.at("reports")) {
    ConstantReport r;
    r.name = rj.at("name").get<std::string>();
    r.paper_value = rj.at("paper_value").get<std::string>();
    r.direction = direction_from(rj.at("direction").get<std::string>());
    r.lo_rendered = rj.at("lo").get<std::string>();
    r.hi_rendered = rj.at("hi").get<std::string>();
    r.computed = Interval::span(Interval::decimal(r.lo_rendered), Interval::decimal(r.hi_rendered));
    r.tolerance = rj.at("tolerance").get<double>();
    r.tolerance_relative = rj.at("tolerance_relative").get<bool>();
    for (const auto& ij : rj.at("imports")) {
      r.imports.push_back(ImportRecord{ij.at("name").get<std::string>(),
                                       ij.at("value").get<std::string>(),
                                       ij.at("source").get<std::string>()});
    }
    r.note = rj.at("note").get<std::string>();
    r.pass = rj.at("pass").get<bool>();
    b.reports.push_back(std::move(r));
  }
  if (j.contains("gate")) {
    GateResult g;
    g.lambda = j.at("gate").at("lambda").get<double>();
    g.minimal_k = j.at("gate").at("minimal_k").get<int64_t>();
    g.determinate = j.at("gate").at("determinate").get<bool>();
    g.margin_below = rendered_from(j.at("gate").at("margins").at("below"));
    g.margin_at = rendered_from(j.at("gate").at("margins").at("at"));
    g.margin_above = rendered_from(j.at("gate").at("margins").at("above"));
    b.gate = g;
  }
  if (j.contains("elambda")) {
    for (const auto& ej : j.at("elambda")) {
      ELambdaRecord e;
      e.lambda = ej.at("lambda").get<double>();
      e.L = ej.at("L").get<unsigned>();
      e.grid = ej.at("grid").get<uint64_t>();
      e.measure = ej.at("measure").get<double>();
      e.exponent_fit = ej.at("exponent_fit").get<double>();
      e.fit_valid = ej.at("fit_valid").get<bool>();
      b.elambda.push_back(e);
    }
  }
  return b;
}

std::string to_table(const ReportBundle& b) {
  std::ostringstream os;
  const int name_w = 34, val_w = 16, enc_w = 33;
  os << std::left;
  os.width(name_w);
  os << "name";
  os.width(4);
  os << "dir";
  os.width(val_w);
  os << "paper";
  os.width(enc_w);
  os << "computed-lo";
  os.width(enc_w);
  os << "computed-hi";
  os << "pass\n";
  for (const auto& r : b.reports) {
    os.width(name_w);
    os << r.name;
    os.width(4);
    os << direction_str(r.direction);
    os.width(val_w);
    os << r.paper_value;
    os.width(enc_w);
    os << r.computed.lo_str(18);
    os.width(enc_w);
    os << r.computed.hi_str(18);
    os << (r.pass ? "pass" : "FAIL") << "\n";
  }
  if (b.gate) {
    os << "gate: lambda=" << b.gate->lambda << " minimal_k=" << b.gate->minimal_k
       << (b.gate->determinate ? "" : " (indeterminate)") << " margin_at=["
       << b.gate->margin_at.lo << ", " << b.gate->margin_at.hi << "]\n";
  }
  return os.str();
}

std::string to_csv(const ReportBundle& b) {
  std::ostringstream os;
  os << "name,direction,paper_value,lo,hi,tolerance,tolerance_relative,pass\n";
  for (const auto& r : b.reports) {
    os << r.name << ',' << direction_str(r.direction) << ',' << r.paper_value << ','
       << r.lo_rendered << ',' << r.hi_rendered << ',' << r.tolerance << ','
       << (r.tolerance_relative ? 1 : 0) << ',' << (r.pass ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string local_factors_csv(const std::vector<series::LocalFactorRecord>& recs) {
  std::ostringstream os;
  os << "p,n,lo,hi\n";
  for (const auto& rec : recs) {
    for (size_t i = 0; i < rec.values.size(); ++i) {
      os << rec.p << ',' << (i + 1) << ',' << rec.values[i].lo_str(20) << ','
         << rec.values[i].hi_str(20) << "\n";
    }
  }
  return os.str();
}

std::string histogram_csv(const pow2::PairHistogram& hist) {
  std::ostringstream os;
  os << "h,count\n";
  for (size_t i = 0; i < hist.counts.size(); ++i) {
    const auto c = hist.counts[i];
    if (c == 0) continue;
    // 128-bit counts rendered through repeated division
    std::string digits;
    unsigned __int128 v = c;
    while (v > 0) {
      digits.insert(digits.begin(), (char)('0' + (int)(v % 10)));
      v /= 10;
    }
    os << (hist.min_h + (int64_t)i) << ',' << digits << "\n";
  }
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp.string());
    out << content;
    if (!out.good()) throw std::runtime_error("write_atomic: write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw std::runtime_error("write_atomic: rename to " + path + " failed: " + ec.message());
  }
}

}  // namespace linnik
