// qree — two-qubit entanglement measures from the command line.
//
//   qree measure <state.json> [--oracle] [--json]
//   qree trace   <state.json> [-o trace.json]
//   qree verify  [--family all|bd|gvp|gh|vpt|ht] [--samples N] [--seed S]
//                [--tol T] [--no-oracle] [--json]
//   qree oracle  <state.json> [--restarts R] [--iters N] [--tol T] [--seed S]
//                [--json]
//
// Exit codes: 0 success, 1 verification or computation failure, 2 usage or
// validation error.  QREE_LOG=quiet|info|debug controls stderr chatter.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qree/families.hpp"
#include "qree/measures.hpp"
#include "qree/oracle.hpp"
#include "qree/procedure.hpp"
#include "qree/state_io.hpp"
#include "qree/verify.hpp"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel g_log = LogLevel::info;

void init_log_level() {
  const char* env = std::getenv("QREE_LOG");
  if (env == nullptr) return;
  const std::string v(env);
  if (v == "quiet")
    g_log = LogLevel::quiet;
  else if (v == "info")
    g_log = LogLevel::info;
  else if (v == "debug")
    g_log = LogLevel::debug;
  else
    std::fprintf(stderr, "qree: ignoring unknown QREE_LOG value '%s'\n", env);
}

void log_info(const std::string& msg) {
  if (g_log >= LogLevel::info) std::fprintf(stderr, "qree: %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (g_log >= LogLevel::debug) std::fprintf(stderr, "qree[debug]: %s\n", msg.c_str());
}

double family_ree(const std::string& fam, const std::vector<double>& ps) {
  using namespace qree::families;
  if (fam == "bd") return bell_diagonal(ps[0], ps[1], ps[2], ps[3]).ree;
  if (fam == "gvp") return vedral_plenio(ps[0], ps[1], ps[2]).ree;
  if (fam == "gh") return gen_horodecki(ps[0], ps[1], ps[2]).ree;
  if (fam == "vpt") return vedral_plenio_type(ps[0], ps[1], ps[2]).ree;
  if (fam == "ht") return horodecki_type(ps[0], ps[1], ps[2], ps[3]).ree;
  throw qree::validation_error("unknown family: " + fam);
}

int run_measure(const std::string& path, bool use_oracle, bool as_json) {
  const qree::io::LoadedState st = qree::io::load_state_file(path);
  log_info("loaded " + st.kind + " state from " + path);

  qree::MeasureReport rep;
  rep.concurrence = qree::concurrence(st.rho);
  rep.eof = qree::entanglement_of_formation(st.rho);

  if (use_oracle) {
    const qree::oracle::OracleResult res = qree::oracle::solve(st.rho);
    rep.ree = res.ree;
    rep.method = qree::Method::oracle;
    log_debug("oracle converged=" + std::string(res.converged ? "yes" : "no") +
              " iterations=" + std::to_string(res.iterations));
  } else if (st.kind == "pure") {
    rep.ree = qree::ree_pure(*st.pure);
    rep.method = qree::Method::closed_form;
  } else if (st.kind == "family") {
    rep.ree = family_ree(st.family, st.params);
    rep.method = qree::Method::closed_form;
  } else {
    rep.ree = qree::ree_from_eof(st.rho).ree_value;
    rep.method = qree::Method::procedure;
  }

  if (as_json) {
    std::printf("%s\n", qree::io::measure_report_to_json(rep).dump(2).c_str());
  } else {
    std::printf("%-12s %s\n", "quantity", "value");
    std::printf("%-12s %.6f\n", "concurrence", rep.concurrence);
    std::printf("%-12s %.6f\n", "eof", rep.eof);
    std::printf("%-12s %.6f\n", "ree", rep.ree);
    std::printf("%-12s %s\n", "method", qree::method_name(rep.method));
  }
  return 0;
}

int run_trace(const std::string& path, const std::string& out_path) {
  const qree::io::LoadedState st = qree::io::load_state_file(path);
  log_info("loaded " + st.kind + " state from " + path);

  const qree::ProcedureTrace tr = qree::ree_from_eof(st.rho);
  if (tr.q0.has_value())
    log_info("mixture interior to the separable set; mixing weight q0 = " +
             std::to_string(*tr.q0));
  else
    log_info("mixture already on the separable boundary");

  const std::string text = qree::io::trace_to_json(tr).dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qree::validation_error("cannot open output file: " + out_path);
    out << text;
    log_info("trace written to " + out_path);
  }
  std::printf("ree %.6f\n", tr.ree_value);
  return 0;
}

int run_verify(const std::string& family, int samples, std::uint64_t seed, double tol,
               bool with_oracle, bool as_json) {
  qree::verify::VerifyOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.with_oracle = with_oracle;
  if (tol > 0.0) {
    opt.tol_state = tol;
    opt.tol_ree = tol / 10.0;
  }

  std::vector<qree::verify::VerificationRow> rows;
  if (family == "all") {
    rows = qree::verify::verify_all(opt);
  } else {
    rows = qree::verify::verify_family(family, opt);
  }

  if (as_json) {
    qree::io::json arr = qree::io::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"family", r.family},
                     {"params", r.params},
                     {"quantity", r.quantity},
                     {"expected", r.expected},
                     {"actual", r.actual},
                     {"abs_error", r.abs_error},
                     {"tol", r.tol},
                     {"pass", r.pass}});
    }
    std::printf("%s\n", arr.dump(2).c_str());
  } else {
    std::printf("%-5s %-34s %-25s %-13s %-13s %-12s %s\n", "fam", "params", "quantity",
                "expected", "actual", "abs_error", "result");
    for (const auto& r : rows)
      std::printf("%-5s %-34s %-25s %-13.6f %-13.6f %-12.6f %s\n", r.family.c_str(),
                  r.params.c_str(), r.quantity.c_str(), r.expected, r.actual, r.abs_error,
                  r.pass ? "pass" : "FAIL");
  }

  int failed = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failed;
  std::printf("%zu rows, %d failed\n", rows.size(), failed);
  return failed == 0 ? 0 : 1;
}

int run_oracle(const std::string& path, int restarts, int iters, double tol,
               std::uint64_t seed, bool as_json) {
  const qree::io::LoadedState st = qree::io::load_state_file(path);
  log_info("loaded " + st.kind + " state from " + path);

  qree::oracle::OracleConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = iters;
  cfg.tol = tol;
  cfg.seed = seed;
  const qree::oracle::OracleResult res = qree::oracle::solve(st.rho, cfg);
  for (std::size_t r = 0; r < res.per_restart_values.size(); ++r)
    log_debug("restart " + std::to_string(r) + ": " + std::to_string(res.per_restart_values[r]));

  if (as_json) {
    std::printf("%s\n", qree::io::oracle_result_to_json(res).dump(2).c_str());
  } else {
    std::printf("%-12s %.6f\n", "ree", res.ree);
    std::printf("%-12s %d\n", "iterations", res.iterations);
    std::printf("%-12s %s\n", "converged", res.converged ? "yes" : "no");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  init_log_level();

  CLI::App app{"two-qubit entanglement measures: concurrence, entanglement of "
               "formation, relative entropy of entanglement"};
  app.require_subcommand(1);

  // measure
  std::string m_path;
  bool m_oracle = false, m_json = false;
  CLI::App* measure = app.add_subcommand("measure", "concurrence, EoF and REE of a state");
  measure->add_option("file", m_path, "state file (JSON)")->required();
  measure->add_flag("--oracle", m_oracle, "compute REE with the numerical oracle");
  measure->add_flag("--json", m_json, "emit JSON instead of a table");

  // trace
  std::string t_path, t_out;
  CLI::App* trace = app.add_subcommand("trace", "full REE derivation trace for a state");
  trace->add_option("file", t_path, "state file (JSON)")->required();
  trace->add_option("-o,--output", t_out, "write the trace to this file");

  // verify
  std::string v_family = "all";
  int v_samples = 20;
  std::uint64_t v_seed = 1;
  double v_tol = 0.0;
  bool v_no_oracle = false, v_json = false;
  CLI::App* verify = app.add_subcommand("verify", "randomized checks against closed forms");
  verify->add_option("--family", v_family, "bd, gvp, gh, vpt, ht, or all")
      ->check(CLI::IsMember({"all", "bd", "gvp", "gh", "vpt", "ht"}));
  verify->add_option("--samples", v_samples, "specs per family")->check(CLI::PositiveNumber);
  verify->add_option("--seed", v_seed, "sampling seed");
  verify->add_option("--tol", v_tol, "state-distance tolerance (entropy rows use tol/10)");
  verify->add_flag("--no-oracle", v_no_oracle, "skip the oracle concordance rows");
  verify->add_flag("--json", v_json, "emit JSON rows instead of a table");

  // oracle
  std::string o_path;
  int o_restarts = 8, o_iters = 2000;
  double o_tol = 1e-7;
  std::uint64_t o_seed = 0;
  bool o_json = false;
  CLI::App* oracle = app.add_subcommand("oracle", "numerical REE minimizer");
  oracle->add_option("file", o_path, "state file (JSON)")->required();
  oracle->add_option("--restarts", o_restarts, "independent restarts")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--iters", o_iters, "iterations per restart")->check(CLI::PositiveNumber);
  oracle->add_option("--tol", o_tol, "convergence gap threshold");
  oracle->add_option("--seed", o_seed, "restart seed");
  oracle->add_flag("--json", o_json, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (measure->parsed()) return run_measure(m_path, m_oracle, m_json);
    if (trace->parsed()) return run_trace(t_path, t_out);
    if (verify->parsed())
      return run_verify(v_family, v_samples, v_seed, v_tol, !v_no_oracle, v_json);
    if (oracle->parsed()) return run_oracle(o_path, o_restarts, o_iters, o_tol, o_seed, o_json);
  } catch (const qree::validation_error& e) {
    std::fprintf(stderr, "qree: %s\n", e.what());
    return 2;
  } catch (const qree::error& e) {
    std::fprintf(stderr, "qree: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qree: %s\n", e.what());
    return 1;
  }
  return 0;
}
