// Command-line front end: per-module verification subcommands, a final
// verdict aggregator, witness search and the empirical large-|G| measure.
// Exit status: 0 when every executed check passes, 1 on check failure,
// 2 on usage errors.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "linnik/config.hpp"
#include "linnik/gate.hpp"
#include "linnik/major_arc.hpp"
#include "linnik/powers_of_two.hpp"
#include "linnik/report.hpp"
#include "linnik/search.hpp"
#include "linnik/sieve_constants.hpp"
#include "linnik/singular_series.hpp"

#include <json.hpp>

namespace {

using namespace linnik;

void emit(const RunConfig& cfg, const ReportBundle& bundle) {
  std::string text;
  switch (cfg.format) {
    case OutputFormat::json:
      text = to_json(bundle);
      break;
    case OutputFormat::table:
      text = to_table(bundle);
      break;
    case OutputFormat::csv:
      text = to_csv(bundle);
      break;
  }
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    write_atomic(cfg.output_path, text);
  }
}

int finish(const RunConfig& cfg, const ReportBundle& bundle) {
  emit(cfg, bundle);
  return bundle.all_pass() ? 0 : 1;
}

nlohmann::json witness_json(const search::RepresentationWitness& w) {
  return nlohmann::json{{"n", w.n},   {"p1", w.p1}, {"p2", w.p2},
                        {"p3", w.p3}, {"p4", w.p4}, {"vs", w.vs},
                        {"constrained", w.constrained}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linnikpair: rigorous recomputation of the constants behind a "
               "paired Goldbach-Linnik representation theorem"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_file;
  bool seed_scale = false;
  std::vector<std::string> overrides;
  unsigned precision = 0;
  uint64_t prime_limit = 0;
  long workers_flag = -1;
  std::string output, format;
  std::vector<std::string> tol_flags;
  app.add_option("--config", config_file, "flat key=value configuration file");
  app.add_flag("--seed-scale", seed_scale, "desk-scale parameter presets");
  app.add_option("--precision-bits", precision, "interval endpoint precision (>= 64)");
  app.add_option("--prime-limit", prime_limit, "sieve limit for tail products");
  app.add_option("--workers", workers_flag, "worker thread cap (0 = hardware)");
  app.add_option("--json", output, "write the report to this path");
  app.add_option("--format", format, "output format: json, table or csv");
  app.add_option("--tol", tol_flags, "per-constant tolerance override name=value");

  auto* cmd_verify = app.add_subcommand("verify-all", "run every check and aggregate");
  auto* cmd_local = app.add_subcommand("local-factors", "per-prime local factor minima");
  int64_t local_p = 0;
  std::string local_csv;
  cmd_local->add_option("--p", local_p, "single prime to tabulate");
  cmd_local->add_option("--csv", local_csv, "write the residue table as CSV");
  auto* cmd_two = app.add_subcommand("two-adic", "power-of-two profile mod q");
  int64_t two_q = 273;
  unsigned rk_k = 0, rk_L = 0;
  std::string rk_csv;
  cmd_two->add_option("--q", two_q, "odd modulus");
  cmd_two->add_option("--rk-k", rk_k, "pair count for the signed histogram export");
  cmd_two->add_option("--rk-L", rk_L, "exponent bound for the histogram export");
  cmd_two->add_option("--rk-csv", rk_csv, "write the r_k histogram as CSV (h,count)");
  auto* cmd_frakj = app.add_subcommand("frakj", "singular integral checks");
  uint64_t frakj_N = 10'000;
  cmd_frakj->add_option("--N", frakj_N, "desk scale for the exact sum");
  auto* cmd_sieve = app.add_subcommand("sieve", "sieve-constant chain");
  std::string t_csv;
  cmd_sieve->add_option("--t-csv", t_csv, "write the per-prime T table as CSV");
  auto* cmd_gate = app.add_subcommand("gate", "minor-arc constant and minimal k");
  auto* cmd_search = app.add_subcommand("search", "representation witness search");
  uint64_t search_n = 0, search_n1 = 0, search_n2 = 0;
  unsigned search_k = 0, search_L = 40;
  bool search_constrained = false;
  uint64_t range_lo = 0, range_hi = 0;
  std::string witnesses_out, coverage_out;
  cmd_search->add_option("--n", search_n, "single even target");
  cmd_search->add_option("--n1", search_n1, "paired target (larger)");
  cmd_search->add_option("--n2", search_n2, "paired target (smaller)");
  cmd_search->add_option("--k", search_k, "number of powers of two");
  cmd_search->add_option("--L", search_L, "largest exponent");
  cmd_search->add_flag("--constrained", search_constrained, "enforce dyadic prime windows");
  cmd_search->add_option("--range-lo", range_lo, "coverage sweep start (even)");
  cmd_search->add_option("--range-hi", range_hi, "coverage sweep end");
  cmd_search->add_option("--witnesses-out", witnesses_out, "JSON-lines witness output");
  cmd_search->add_option("--coverage-out", coverage_out, "CSV coverage statistics");
  auto* cmd_el = app.add_subcommand("elambda", "empirical large-|G| measure");
  double el_lambda = 0.8512;
  unsigned el_L = 16;
  uint64_t el_grid = 0;
  cmd_el->add_option("--lambda", el_lambda, "threshold fraction");
  cmd_el->add_option("--L", el_L, "number of powers of two");
  cmd_el->add_option("--grid", el_grid, "grid size (default 273 * 2^L)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    RunConfig cfg;
    if (!config_file.empty()) apply_config_file(cfg, config_file);
    apply_environment(cfg);
    if (precision > 0) cfg.precision_bits = precision;
    if (prime_limit > 0) cfg.prime_limit = prime_limit;
    if (workers_flag >= 0) cfg.worker_count = (unsigned)workers_flag;
    if (!output.empty()) cfg.output_path = output;
    if (!format.empty()) cfg.format = format_from_string(format);
    for (const auto& t : tol_flags) {
      const size_t eq = t.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--tol needs name=value");
      apply_assignment(cfg, "tol." + t.substr(0, eq), t.substr(eq + 1));
    }
    if (seed_scale) cfg.apply_seed_scale();
    cfg.validate();
    set_precision_bits(cfg.precision_bits);

    if (cmd_verify->parsed()) return finish(cfg, gate::full_report(cfg));

    if (cmd_local->parsed()) {
      if (local_p != 0) {
        const auto rec = series::local_factor_min(local_p);
        if (!local_csv.empty()) write_atomic(local_csv, local_factors_csv({rec}));
        std::cout << "p=" << rec.p << " min=[" << rec.min.lo_str(15) << ", "
                  << rec.min.hi_str(15) << "] argmin=" << rec.argmin
                  << (rec.argmin_unique ? "" : " (tie set)") << "\n";
        return 0;
      }
      if (!local_csv.empty()) {
        std::vector<series::LocalFactorRecord> recs;
        for (int64_t p : series::default_small_prime_set()) {
          recs.push_back(series::local_factor_min(p));
        }
        write_atomic(local_csv, local_factors_csv(recs));
      }
      return finish(cfg, gate::report_section(cfg, gate::Section::series));
    }

    if (cmd_two->parsed()) {
      if (!rk_csv.empty()) {
        if (rk_k == 0 || rk_L == 0) throw std::invalid_argument("--rk-csv needs --rk-k and --rk-L");
        write_atomic(rk_csv, histogram_csv(pow2::r_k_histogram(rk_k, rk_L)));
      }
      const auto prof = pow2::two_adic_profile(two_q);
      std::cout << "q=" << prof.q << " rho=" << prof.rho << " max f(r<q)=["
                << prof.max_nontrivial.lo_str(12) << ", " << prof.max_nontrivial.hi_str(12)
                << "] at r=" << prof.max_arg << " f(q)=[" << prof.f.back().lo_str(12) << ", "
                << prof.f.back().hi_str(12) << "]\n";
      if (two_q == 273) return finish(cfg, gate::report_section(cfg, gate::Section::two_adic));
      return 0;
    }

    if (cmd_frakj->parsed()) {
      const auto p = major::FrakJParams::make(frakj_N, frakj_N);
      const Interval exact = major::frakJ_exact(p, cfg.worker_count);
      const auto cont = major::frakJ_continuous(p, 256, cfg.worker_count);
      nlohmann::json j{{"N", p.N},
                       {"n", p.n},
                       {"lo", interval_lo_str(exact)},
                       {"hi", interval_hi_str(exact)},
                       {"method", "exact"},
                       {"bracket_lo", interval_lo_str(cont.discrete_lo)},
                       {"bracket_hi", interval_hi_str(cont.discrete_hi)}};
      std::cout << j.dump(2) << "\n";
      return finish(cfg, gate::report_section(cfg, gate::Section::major));
    }

    if (cmd_sieve->parsed()) {
      if (!t_csv.empty()) {
        std::string csv = "p,T1_lo,T1_hi,Tp_lo,Tp_hi,envelope\n";
        const PrimeTable pt = sieve_primes(500);
        for (uint64_t p : pt.primes) {
          if (p < 11) continue;
          const auto tv = sievec::T_values((int64_t)p);
          const std::string env =
              p >= 13 ? sievec::ratio_envelope((int64_t)p).hi_str(12) : std::string("n/a");
          csv += std::to_string(p) + "," + tv.T1.lo_str(18) + "," + tv.T1.hi_str(18) + "," +
                 tv.Tq.lo_str(18) + "," + tv.Tq.hi_str(18) + "," + env + "\n";
        }
        write_atomic(t_csv, csv);
      }
      return finish(cfg, gate::report_section(cfg, gate::Section::sieve));
    }

    if (cmd_gate->parsed()) {
      const ReportBundle bundle = gate::report_section(cfg, gate::Section::gate_only);
      if (bundle.gate) {
        std::cout << "minimal k = " << bundle.gate->minimal_k << " (margins: below=["
                  << bundle.gate->margin_below.lo << ", " << bundle.gate->margin_below.hi
                  << "], at=[" << bundle.gate->margin_at.lo << ", "
                  << bundle.gate->margin_at.hi << "])\n";
      }
      return finish(cfg, bundle);
    }

    if (cmd_search->parsed()) {
      std::string witness_lines;
      std::string coverage = "n,found,probes,millis\n";
      int exit_code = 0;
      auto run_one = [&](uint64_t n) {
        search::SearchParams params;
        params.k = search_k;
        params.L_bound = search_L;
        params.constrained = search_constrained;
        search::SearchStats stats;
        const auto t0 = std::chrono::steady_clock::now();
        const auto w = search::mitm_find(n, params, &stats);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        if (w) {
          const auto v = search::verify_witness(*w);
          if (!v.ok) throw std::runtime_error("witness failed verification: " + v.defect);
          witness_lines += witness_json(*w).dump() + "\n";
        }
        coverage += std::to_string(n) + "," + (w ? "1" : "0") + "," +
                    std::to_string(stats.probes) + "," + std::to_string(ms) + "\n";
        return w.has_value();
      };
      if (search_n1 != 0 && search_n2 != 0) {
        const auto pw =
            search::pair_find(search_n1, search_n2, search_k, search_L, search_constrained);
        if (pw) {
          for (const auto& w : {pw->first, pw->second}) {
            const auto v = search::verify_witness(w);
            if (!v.ok) throw std::runtime_error("witness failed verification: " + v.defect);
            witness_lines += witness_json(w).dump() + "\n";
          }
        } else {
          exit_code = 1;
        }
      } else if (range_lo != 0 && range_hi >= range_lo) {
        for (uint64_t n = range_lo + (range_lo % 2); n <= range_hi; n += 2) run_one(n);
      } else if (search_n != 0) {
        if (!run_one(search_n)) exit_code = 1;
      } else {
        std::cerr << "search: provide --n, --range-lo/--range-hi or --n1/--n2\n";
        return 2;
      }
      if (!witnesses_out.empty()) {
        write_atomic(witnesses_out, witness_lines);
      } else {
        std::cout << witness_lines;
      }
      if (!coverage_out.empty()) write_atomic(coverage_out, coverage);
      return exit_code;
    }

    if (cmd_el->parsed()) {
      if (el_grid == 0) el_grid = 273ull << el_L;
      const auto m =
          pow2::measure_E_lambda_empirical(el_lambda, el_L, el_grid, cfg.worker_count);
      nlohmann::json levels = nlohmann::json::array();
      for (const auto& lev : m.levels) {
        levels.push_back(
            {{"L", lev.L}, {"grid", lev.grid}, {"hits", lev.hits}, {"measure", lev.measure}});
      }
      nlohmann::json j{{"lambda", m.lambda},
                       {"L", m.L},
                       {"grid", m.grid},
                       {"measure", m.measure},
                       {"exponent_fit", m.fitted_exponent},
                       {"fit_valid", m.fit_valid},
                       {"levels", levels},
                       {"imported_rigorous_floor", "E(0.8512) > 25/36 + 1e-10"},
                       {"note", "statistical estimate, not a certified bound"}};
      const std::string text = j.dump(2) + "\n";
      if (cfg.output_path.empty()) {
        std::cout << text;
      } else {
        write_atomic(cfg.output_path, text);
      }
      return 0;
    }

    std::cerr << "no subcommand executed\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
