#pragma once
// Randomized verification harness behind `qree verify`: samples parameter
// specs for each supported family, runs the constructive procedure (and
// optionally the numerical oracle) against the family's closed forms, and
// reports one row per checked quantity.
//
// Two row flavors share one pass rule (pass == abs_error <= tol):
//   * closeness rows:  abs_error = |expected - actual|, tol > 0;
//   * exceedance rows: the quantity must EXCEED `expected`; abs_error is the
//     shortfall max(0, expected - actual) and tol = 0.
// The second flavor expresses checks like "the shortcut construction misses
// the true minimizer by at least this much" on the family built to defeat it.

#include <cstdio>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "qree/families.hpp"
#include "qree/oracle.hpp"
#include "qree/procedure.hpp"
#include "qree/random.hpp"

namespace qree::verify {

struct VerificationRow {
  std::string family;
  std::string params;
  std::string quantity;
  double expected = 0.0;
  double actual = 0.0;
  double abs_error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int samples = 20;
  std::uint64_t seed = 1;
  double tol_state = 1e-8;   // Frobenius distance between 4x4 states
  double tol_ree = 1e-9;     // relative-entropy values
  double tol_boundary = 1e-9;
  double tol_oracle = 1e-4;  // oracle vs closed-form concordance
  bool with_oracle = true;   // oracle row on the first sample per family
};

namespace detail {

inline std::string format_params(std::initializer_list<double> ps) {
  std::string out = "(";
  bool first = true;
  for (double p : ps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p);
    if (!first) out += ", ";
    out += buf;
    first = false;
  }
  out += ")";
  return out;
}

inline VerificationRow row_close(std::string family, std::string params, std::string quantity,
                                 double expected, double actual, double tol) {
  VerificationRow r;
  r.family = std::move(family);
  r.params = std::move(params);
  r.quantity = std::move(quantity);
  r.expected = expected;
  r.actual = actual;
  r.abs_error = std::abs(expected - actual);
  r.tol = tol;
  r.pass = r.abs_error <= tol;
  return r;
}

inline VerificationRow row_exceed(std::string family, std::string params, std::string quantity,
                                  double required, double actual) {
  VerificationRow r;
  r.family = std::move(family);
  r.params = std::move(params);
  r.quantity = std::move(quantity);
  r.expected = required;
  r.actual = actual;
  r.abs_error = std::max(0.0, required - actual);
  r.tol = 0.0;
  r.pass = r.abs_error <= r.tol;
  return r;
}

inline double state_distance(const Mat4& a, const Mat4& b) { return frobenius_norm(a - b); }

inline oracle::OracleConfig fast_oracle_config(const VerifyOptions& opt) {
  oracle::OracleConfig cfg;
  cfg.restarts = 2;
  cfg.max_iters = 2000;
  cfg.tol = 1e-6;
  cfg.seed = opt.seed;
  return cfg;
}

inline void push_oracle_row(std::vector<VerificationRow>& rows, const std::string& family,
                            const std::string& params, const DensityMatrix& rho,
                            double ree_expected, const VerifyOptions& opt) {
  const oracle::OracleResult res = oracle::solve(rho, fast_oracle_config(opt));
  rows.push_back(row_close(family, params, "oracle_concordance", ree_expected, res.ree,
                           opt.tol_oracle));
}

// --- family parameter samplers ---------------------------------------------

inline std::array<double, 4> sample_bd(Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::array<double, 4> l{};
    rng.simplex(l.data(), 4);
    const double lmax = std::max(std::max(l[0], l[1]), std::max(l[2], l[3]));
    if (lmax > 0.52) return l;  // margin keeps the sample robustly entangled
  }
  throw infeasible_error("sample_bd: rejection sampling failed");
}

inline std::array<double, 3> sample_gvp(Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::array<double, 3> l{};
    rng.simplex(l.data(), 3);
    if (l[0] >= 0.05 && l[1] >= 1e-3 && l[2] >= 1e-3) return l;
  }
  throw infeasible_error("sample_gvp: rejection sampling failed");
}

inline std::array<double, 3> sample_gh(Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::array<double, 3> l{};
    rng.simplex(l.data(), 3);
    if (l[1] >= 1e-3 && l[2] >= 1e-3 &&
        l[0] - 2.0 * std::sqrt(l[1] * l[2]) >= 0.02)
      return l;
  }
  throw infeasible_error("sample_gh: rejection sampling failed");
}

inline std::array<double, 3> sample_vpt(Rng& rng) {
  // The family fixes A2 + A3 = 1; only the diagonal split and the
  // off-diagonal strength vary.  Keep D strictly inside (0, sqrt(A2 A3))
  // so the state is entangled but away from the pure edge.
  const double a2 = rng.uniform(0.05, 0.95);
  const double a3 = 1.0 - a2;
  const double d = rng.uniform(0.1, 0.9) * std::sqrt(a2 * a3);
  return {a2, a3, d};
}

// Specs where the shortcut construction measurably misses: a concurrence
// floor keeps the states robustly entangled, and a closed-form filter keeps
// only specs whose candidate state sits at least 2e-4 away from the true
// minimizer (the verification rows then re-measure that gap through the
// constructive procedure, an independent code path).
inline std::array<double, 4> sample_ht(Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::array<double, 3> w{};
    rng.simplex(w.data(), 3);
    const double a1 = w[0], a4 = w[1], a = 0.5 * w[2];
    const double root = std::sqrt(a1 * a4);
    if (a - root <= 0.011) continue;  // room for the concurrence floor 0.02
    const double d = root + 0.01 + rng.uniform() * (a - root - 0.011);
    try {
      const families::HorodeckiType f = families::horodecki_type(a1, a4, a, d);
      if (state_distance(f.procedure_candidate.matrix(), f.true_css.matrix()) > 2e-4)
        return {a1, a4, a, d};
    } catch (const error&) {
      continue;
    }
  }
  throw infeasible_error("sample_ht: rejection sampling failed");
}

// --- per-family verification -----------------------------------------------

inline void verify_bd(std::vector<VerificationRow>& rows, Rng& rng, const VerifyOptions& opt) {
  for (int i = 0; i < opt.samples; ++i) {
    const auto l = sample_bd(rng);
    const families::BellDiagonal f = families::bell_diagonal(l[0], l[1], l[2], l[3]);
    const std::string ps = format_params({l[0], l[1], l[2], l[3]});
    const ProcedureTrace tr = ree_from_eof(f.rho);
    rows.push_back(row_close("bd", ps, "closest_separable_state", 0.0,
                             state_distance(tr.sigma_star.matrix(), f.css.matrix()),
                             opt.tol_state));
    rows.push_back(row_close("bd", ps, "relative_entropy", f.ree, tr.ree_value, opt.tol_ree));
    rows.push_back(row_close("bd", ps, "mixture_on_boundary", 0.0,
                             std::abs(tr.boundary_at_step3.min_pt_eigenvalue),
                             opt.tol_boundary));
    if (opt.with_oracle && i == 0) push_oracle_row(rows, "bd", ps, f.rho, f.ree, opt);
  }
}

inline void verify_gvp(std::vector<VerificationRow>& rows, Rng& rng, const VerifyOptions& opt) {
  for (int i = 0; i < opt.samples; ++i) {
    const auto l = sample_gvp(rng);
    const families::VedralPlenio f = families::vedral_plenio(l[0], l[1], l[2]);
    const std::string ps = format_params({l[0], l[1], l[2]});
    const ProcedureTrace tr = ree_from_eof(f.rho);
    // The family's defining property: its two optimal-decomposition members
    // share one closest separable state (the optimal decomposition itself is
    // unique only up to phases, so the check runs on the family's members).
    double worst = 0.0;
    for (const EnsembleMember& m : f.ensemble.members)
      worst = std::max(worst,
                       state_distance(closest_separable_pure(m.state), f.css.matrix()));
    rows.push_back(row_close("gvp", ps, "member_css_agreement", 0.0, worst, opt.tol_state));
    rows.push_back(row_close("gvp", ps, "closest_separable_state", 0.0,
                             state_distance(tr.sigma_star.matrix(), f.css.matrix()),
                             opt.tol_state));
    rows.push_back(row_close("gvp", ps, "relative_entropy", f.ree, tr.ree_value, opt.tol_ree));
    if (opt.with_oracle && i == 0) push_oracle_row(rows, "gvp", ps, f.rho, f.ree, opt);
  }
}

inline void verify_gh(std::vector<VerificationRow>& rows, Rng& rng, const VerifyOptions& opt) {
  for (int i = 0; i < opt.samples; ++i) {
    const auto l = sample_gh(rng);
    const families::GenHorodecki f = families::gen_horodecki(l[0], l[1], l[2]);
    const std::string ps = format_params({l[0], l[1], l[2]});
    const ProcedureTrace tr = ree_from_eof(f.rho);
    // When the plain mixture already touches the separable boundary, the final
    // mixing step is skipped and the closed-form weight must be 1.
    const double mixing_err =
        tr.q0.has_value() ? std::abs(*tr.q0 - (1.0 - f.x)) : std::abs(1.0 - f.x);
    rows.push_back(row_close("gh", ps, "mixing_parameter", 0.0, mixing_err, opt.tol_state));
    rows.push_back(row_close("gh", ps, "closest_separable_state", 0.0,
                             state_distance(tr.sigma_star.matrix(), f.css.matrix()),
                             opt.tol_state));
    rows.push_back(row_close("gh", ps, "relative_entropy", f.ree, tr.ree_value, opt.tol_ree));
    if (opt.with_oracle && i == 0) push_oracle_row(rows, "gh", ps, f.rho, f.ree, opt);
  }
}

inline void verify_vpt(std::vector<VerificationRow>& rows, Rng& rng, const VerifyOptions& opt) {
  for (int i = 0; i < opt.samples; ++i) {
    const auto l = sample_vpt(rng);
    const families::VedralPlenioType f = families::vedral_plenio_type(l[0], l[1], l[2]);
    const std::string ps = format_params({l[0], l[1], l[2]});
    const ProcedureTrace tr = ree_from_eof(f.rho);
    rows.push_back(row_close("vpt", ps, "mixture_state", 0.0,
                             state_distance(tr.sigma_tilde.matrix(), f.css.matrix()),
                             opt.tol_state));
    rows.push_back(row_close("vpt", ps, "mixture_on_boundary", 0.0,
                             std::abs(tr.boundary_at_step3.min_pt_eigenvalue),
                             opt.tol_boundary));
    rows.push_back(row_close("vpt", ps, "relative_entropy", f.ree, tr.ree_value, opt.tol_ree));
    if (opt.with_oracle && i == 0) push_oracle_row(rows, "vpt", ps, f.rho, f.ree, opt);
  }
}

inline void verify_ht(std::vector<VerificationRow>& rows, Rng& rng, const VerifyOptions& opt) {
  for (int i = 0; i < opt.samples; ++i) {
    const auto l = sample_ht(rng);
    const families::HorodeckiType f = families::horodecki_type(l[0], l[1], l[2], l[3]);
    const std::string ps = format_params({l[0], l[1], l[2], l[3]});
    const ProcedureTrace tr = ree_from_eof(f.rho);
    // The construction lands exactly on its closed-form candidate...
    rows.push_back(row_close("ht", ps, "procedure_candidate", 0.0,
                             state_distance(tr.sigma_star.matrix(),
                                            f.procedure_candidate.matrix()),
                             opt.tol_state));
    // ...which measurably misses the true minimizer, by distance and value.
    rows.push_back(row_exceed("ht", ps, "procedure_gap_exceeds", 1e-4,
                              state_distance(tr.sigma_star.matrix(), f.true_css.matrix())));
    rows.push_back(row_exceed("ht", ps, "entropy_excess", 1e-12, tr.ree_value - f.ree));
    if (opt.with_oracle && i == 0) push_oracle_row(rows, "ht", ps, f.rho, f.ree, opt);
  }
}

}  // namespace detail

inline std::vector<VerificationRow> verify_family(const std::string& family,
                                                  const VerifyOptions& opt = {}) {
  std::vector<VerificationRow> rows;
  Rng rng(opt.seed);
  if (family == "bd")
    detail::verify_bd(rows, rng, opt);
  else if (family == "gvp")
    detail::verify_gvp(rows, rng, opt);
  else if (family == "gh")
    detail::verify_gh(rows, rng, opt);
  else if (family == "vpt")
    detail::verify_vpt(rows, rng, opt);
  else if (family == "ht")
    detail::verify_ht(rows, rng, opt);
  else
    throw validation_error("verify: unknown family '" + family +
                           "' (expected bd, gvp, gh, vpt, ht, or all)");
  return rows;
}

inline std::vector<VerificationRow> verify_all(const VerifyOptions& opt = {}) {
  std::vector<VerificationRow> rows;
  for (const char* fam : {"bd", "gvp", "gh", "vpt", "ht"}) {
    std::vector<VerificationRow> part = verify_family(fam, opt);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

inline bool all_pass(const std::vector<VerificationRow>& rows) {
  for (const VerificationRow& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace qree::verify
