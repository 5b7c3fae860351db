#pragma once
// Relative entropy of entanglement from the entanglement of formation, by
// construction of the closest separable state:
//
//   1. optimal pure-state decomposition of the source state;
//   2. closest separable state of each member, mixed with the ensemble
//      weights into a candidate sigma_tilde;
//   3. if sigma_tilde sits on the separable boundary (minimal partial-
//      transpose eigenvalue zero within tolerance), it is the closest
//      separable state;
//   4. otherwise the candidate is pushed to the boundary along the segment
//      toward the source state: sigma_star = q0 rho + (1 - q0) sigma_tilde at
//      the smallest boundary crossing q0.
//
// The trace type records every intermediate so each step can be audited.

#include <optional>
#include <vector>

#include "qree/schmidt.hpp"
#include "qree/wootters.hpp"

namespace qree {

// Position of a state relative to the separable boundary, decided by the
// minimal eigenvalue m of the partial transpose: exactly one of the three
// flags is set (|m| <= tol: boundary; m > tol: interior; m < -tol: entangled).
struct BoundaryVerdict {
  double min_pt_eigenvalue = 0.0;
  bool boundary = false;
  bool interior = false;
  bool entangled = false;
};

inline BoundaryVerdict classify_boundary(const Mat4& m, double tol = 1e-9) {
  BoundaryVerdict v;
  v.min_pt_eigenvalue = min_pt_eigenvalue(m);
  if (std::abs(v.min_pt_eigenvalue) <= tol)
    v.boundary = true;
  else if (v.min_pt_eigenvalue > 0.0)
    v.interior = true;
  else
    v.entangled = true;
  return v;
}

// Smallest q in [0, 1] where pi(q) = q rho + (1-q) sigma crosses the
// separable boundary, i.e. the first sign change of the minimal partial-
// transpose eigenvalue g(q).  Bracketed by a 64-interval scan, then bisected
// (up to 200 iterations, early exit at |g| <= 1e-12).  Throws
// infeasible_error when no crossing exists on the segment.
inline double solve_boundary_mixing(const Mat4& rho, const Mat4& sigma) {
  auto g = [&](double q) {
    return min_pt_eigenvalue(cx(q) * rho + cx(1.0 - q) * sigma);
  };

  constexpr int kIntervals = 64;
  double lo = -1.0, hi = -1.0;
  double g_prev = g(0.0);
  for (int k = 0; k < kIntervals; ++k) {
    const double q_next = static_cast<double>(k + 1) / kIntervals;
    const double g_next = g(q_next);
    if ((g_prev > 0.0 && g_next <= 0.0) || (g_prev >= 0.0 && g_next < 0.0)) {
      lo = static_cast<double>(k) / kIntervals;
      hi = q_next;
      break;
    }
    g_prev = g_next;
  }
  if (lo < 0.0)
    throw infeasible_error("solve_boundary_mixing: no boundary crossing on the segment");

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) <= 1e-12) return mid;
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct ProcedureTrace {
  DensityMatrix source;
  Ensemble ensemble;                      // empty when the source is separable
  std::vector<DensityMatrix> member_css;  // closest separable state per member
  DensityMatrix sigma_tilde;              // weight-mixed member candidates
  BoundaryVerdict boundary_at_step3;
  std::optional<double> q0;  // mixing parameter toward rho (absent off step 4)
  std::optional<double> x;   // complementary parameterization, x = 1 - q0
  DensityMatrix sigma_star;  // closest separable state
  double ree_value = 0.0;    // S(rho || sigma_star), nats
};

// Closest separable states of the ensemble members and their mixture.
inline std::pair<std::vector<DensityMatrix>, DensityMatrix> mix_member_css(const Ensemble& ens) {
  std::vector<DensityMatrix> css;
  css.reserve(ens.members.size());
  Mat4 mix;
  for (const auto& mem : ens.members) {
    Mat4 s = closest_separable_pure(mem.state);
    mix += mem.p * s;
    css.push_back(DensityMatrix::from_matrix(s));
  }
  return {std::move(css), DensityMatrix::from_matrix(mix)};
}

inline ProcedureTrace ree_from_eof(const DensityMatrix& rho, double boundary_tol = 1e-9) {
  // Separable states are their own closest separable state.
  if (concurrence(rho) <= 0.0) {
    return ProcedureTrace{rho,
                          Ensemble{},
                          {},
                          rho,
                          classify_boundary(rho.matrix(), boundary_tol),
                          std::nullopt,
                          std::nullopt,
                          rho,
                          0.0};
  }

  Ensemble ens = optimal_decomposition(rho);
  auto [css, sigma_tilde] = mix_member_css(ens);
  BoundaryVerdict verdict = classify_boundary(sigma_tilde.matrix(), boundary_tol);
  if (verdict.entangled)
    throw error("ree_from_eof: candidate mixture classified as entangled, which "
                "contradicts separability of its members");

  std::optional<double> q0;
  std::optional<double> x;
  DensityMatrix sigma_star = sigma_tilde;
  if (verdict.interior) {
    const double q = solve_boundary_mixing(rho.matrix(), sigma_tilde.matrix());
    q0 = q;
    x = 1.0 - q;
    sigma_star =
        DensityMatrix::from_matrix(cx(q) * rho.matrix() + cx(1.0 - q) * sigma_tilde.matrix());
  }

  const RelativeEntropy ree = relative_entropy(rho, sigma_star);
  if (!ree.finite)
    throw error("ree_from_eof: relative entropy to the candidate is infinite");

  return ProcedureTrace{rho,      std::move(ens), std::move(css), std::move(sigma_tilde),
                        verdict,  q0,             x,              std::move(sigma_star),
                        ree.nats};
}

}  // namespace qree
