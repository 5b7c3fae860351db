#pragma once
// Numerical oracle for the relative entropy of entanglement, independent of
// the constructive procedure: minimize f(sigma) = -tr(rho ln sigma) over
// separable sigma, represented as a mixture of product pure states.
//
// The solver is a conditional-gradient (Frank-Wolfe) method over the convex
// hull of product projectors — pairwise steps between the best linearized
// atom and the worst active atom, with exact line searches — accelerated by
// an interleaved local polish: every few iterations the current atoms are
// re-optimized directly in their Bloch-angle/log-weight parameterization with
// an L-BFGS descent.  The polish preserves feasibility (angles always encode
// product states, softmax weights a convex mixture) and monotonicity (Armijo
// steps only), while lifting the plain conditional-gradient convergence rate
// to the accuracy the comparisons here need.  Termination is governed by the
// Frank-Wolfe gap.
//
// Deterministic by construction: fixed restart seeds derived from the
// configured seed, sequential restarts, deterministic eigensolver, no
// parallelism.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qree/density_matrix.hpp"
#include "qree/measures.hpp"
#include "qree/random.hpp"

namespace qree::oracle {

struct OracleConfig {
  int restarts = 8;
  int max_iters = 2000;   // conditional-gradient iterations per restart
  double tol = 1e-7;      // Frank-Wolfe gap threshold
  std::uint64_t seed = 0;
};

struct OracleResult {
  double ree = 0.0;          // min over restarts of S(rho || sigma)
  DensityMatrix sigma;       // separable minimizer found
  int iterations = 0;        // iterations used by the winning restart
  bool converged = false;    // winning restart reached the gap threshold
  std::vector<double> per_restart_values;
  std::vector<double> objective_trace;  // winning restart, per-iteration f
};

namespace detail {

inline constexpr double kEvFloor = 1e-30;

struct Atom {
  Vec2 a, b;
  Vec4 v;     // kron(a, b)
  double w = 0.0;
};

inline Atom make_atom(const Vec2& a, const Vec2& b, double w) {
  return Atom{a, b, kron(a, b), w};
}

inline Mat4 mixture(const std::vector<Atom>& atoms) {
  Mat4 s;
  for (const Atom& at : atoms) s += at.w * projector(at.v);
  return s;
}

// f(sigma) = -tr(rho ln sigma), eigenvalues floored to keep the value finite
// on rank-deficient iterates.
inline double f_val(const Mat4& rho, const Mat4& sigma) {
  const HermitianEig<4> es = hermitian_eig(sigma);
  double f = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double lam = std::max(es.values[k], kEvFloor);
    double rkk = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        rkk += (std::conj(es.vectors(i, k)) * rho(i, j) * es.vectors(j, k)).real();
    f -= rkk * std::log(lam);
  }
  return f;
}

// Gradient of f: in sigma's eigenbasis, -(R o Phi) with Phi the divided
// differences of ln; gaps below 1e-10 use the derivative limit 1/lambda.
inline Mat4 grad_f(const Mat4& rho, const Mat4& sigma) {
  const HermitianEig<4> es = hermitian_eig(sigma);
  std::array<double, 4> ev;
  for (int k = 0; k < 4; ++k) ev[k] = std::max(es.values[k], kEvFloor);

  Mat4 r;  // R = V^dag rho V
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cx acc = 0.0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          acc += std::conj(es.vectors(p, i)) * rho(p, q) * es.vectors(q, j);
      r(i, j) = acc;
    }

  Mat4 core;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double den = ev[i] - ev[j];
      double phi;
      if (std::abs(den) < 1e-10)
        phi = 1.0 / std::max(0.5 * (ev[i] + ev[j]), kEvFloor);
      else
        phi = (std::log(ev[i]) - std::log(ev[j])) / den;
      core(i, j) = -r(i, j) * phi;
    }

  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cx acc = 0.0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          acc += es.vectors(i, p) * core(p, q) * std::conj(es.vectors(j, q));
      g(i, j) = acc;
    }
  return g;
}

// Best product atom for the linearized objective: minimize <ab|G|ab> by
// alternating closed one-qubit eigenproblems from six deterministic starts.
inline Atom lmo(const Mat4& g) {
  const double r = 1.0 / std::sqrt(2.0);
  const Vec2 starts[6] = {{1, 0}, {0, 1}, {r, r}, {r, -r}, {r, cx(0, r)}, {r, cx(0, -r)}};

  double best_val = 0.0;
  Vec2 best_a{1, 0}, best_b{1, 0};
  bool have = false;
  for (const Vec2& b0 : starts) {
    Vec2 b = b0;
    Vec2 a{1, 0};
    double val = 0.0, val_prev = 0.0;
    bool first = true;
    for (int sweep = 0; sweep < 30; ++sweep) {
      Mat2 ma;  // <.|_A x <b|  G  |.>_A x |b>
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          cx acc = 0.0;
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              acc += std::conj(b[k]) * g(2 * i + k, 2 * j + l) * b[l];
          ma(i, j) = acc;
        }
      HermitianEig<2> ea = hermitian_eig(0.5 * (ma + dagger(ma)));
      a = eig_column(ea, 0);

      Mat2 mb;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          cx acc = 0.0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              acc += std::conj(a[i]) * g(2 * i + k, 2 * j + l) * a[j];
          mb(k, l) = acc;
        }
      HermitianEig<2> eb = hermitian_eig(0.5 * (mb + dagger(mb)));
      b = eig_column(eb, 0);
      val = eb.values[0];
      if (!first && std::abs(val - val_prev) < 1e-15) break;
      val_prev = val;
      first = false;
    }
    if (!have || val < best_val) {
      best_val = val;
      best_a = a;
      best_b = b;
      have = true;
    }
  }
  return make_atom(best_a, best_b, 0.0);
}

// Exact line search along sigma + t H, t in [0, tmax]: bisection on the
// directional derivative (f is convex along the segment).
inline double line_search(const Mat4& rho, const Mat4& sigma, const Mat4& h, double tmax) {
  auto d = [&](double t) {
    const Mat4 g = grad_f(rho, sigma + cx(t) * h);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) acc += (g(i, j) * h(j, i)).real();
    return acc;
  };
  if (d(0.0) >= 0.0) return 0.0;
  if (d(tmax) <= 0.0) return tmax;
  double lo = 0.0, hi = tmax;
  for (int it = 0; it < 48; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (d(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// --- Bloch-angle parameterization for the polish phase ---------------------

inline Vec2 bloch(double th, double ph) {
  return {std::cos(0.5 * th), std::exp(cx(0, ph)) * std::sin(0.5 * th)};
}

inline void dbloch(double th, double ph, Vec2& dth, Vec2& dph) {
  dth = {-0.5 * std::sin(0.5 * th), 0.5 * std::exp(cx(0, ph)) * std::cos(0.5 * th)};
  dph = {0.0, cx(0, 1) * std::exp(cx(0, ph)) * std::sin(0.5 * th)};
}

inline void angles_of(const Vec2& v, double& th, double& ph) {
  cx a0 = v[0], a1 = v[1];
  if (std::abs(a0) > 1e-14) {
    const cx p = std::conj(a0) / std::abs(a0);
    a0 *= p;
    a1 *= p;
  }
  th = 2.0 * std::atan2(std::abs(a1), a0.real());
  ph = (std::abs(a1) > 1e-14) ? std::atan2(a1.imag(), a1.real()) : 0.0;
}

// Minimal L-BFGS with Armijo backtracking; fg(x, grad) -> f.
template <class FG>
inline void lbfgs_minimize(std::vector<double>& x, FG&& fg, int max_iters) {
  const std::size_t n = x.size();
  const int hist_cap = 10;
  std::vector<std::vector<double>> s_hist, y_hist;
  std::vector<double> rho_hist;

  std::vector<double> g(n), g_new(n), dir(n), x_new(n);
  double f = fg(x, g);

  for (int it = 0; it < max_iters; ++it) {
    double gmax = 0.0;
    for (double gi : g) gmax = std::max(gmax, std::abs(gi));
    if (gmax < 1e-13) break;

    // Two-loop recursion.
    std::vector<double> q = g;
    const int m = static_cast<int>(s_hist.size());
    std::vector<double> alpha(m);
    for (int i = m - 1; i >= 0; --i) {
      double sq = 0.0;
      for (std::size_t k = 0; k < n; ++k) sq += s_hist[i][k] * q[k];
      alpha[i] = rho_hist[i] * sq;
      for (std::size_t k = 0; k < n; ++k) q[k] -= alpha[i] * y_hist[i][k];
    }
    if (m > 0) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        sy += s_hist[m - 1][k] * y_hist[m - 1][k];
        yy += y_hist[m - 1][k] * y_hist[m - 1][k];
      }
      const double gamma = sy / std::max(yy, 1e-300);
      for (double& qk : q) qk *= gamma;
    }
    for (int i = 0; i < m; ++i) {
      double yq = 0.0;
      for (std::size_t k = 0; k < n; ++k) yq += y_hist[i][k] * q[k];
      const double beta = rho_hist[i] * yq;
      for (std::size_t k = 0; k < n; ++k) q[k] += (alpha[i] - beta) * s_hist[i][k];
    }
    double gd = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      dir[k] = -q[k];
      gd += dir[k] * g[k];
    }
    if (gd >= 0.0) {  // not a descent direction; fall back to steepest descent
      gd = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dir[k] = -g[k];
        gd -= g[k] * g[k];
      }
    }

    double t = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t k = 0; k < n; ++k) x_new[k] = x[k] + t * dir[k];
      f_new = fg(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * t * gd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> s(n), y(n);
    double sy = 0.0, ss = 0.0, yy2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = x_new[k] - x[k];
      y[k] = g_new[k] - g[k];
      sy += s[k] * y[k];
      ss += s[k] * s[k];
      yy2 += y[k] * y[k];
    }
    if (sy > 1e-12 * std::sqrt(ss * yy2)) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > hist_cap) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
    }

    const bool tiny_progress = std::abs(f - f_new) <= 1e-18 * std::max(1.0, std::abs(f));
    x = x_new;
    f = f_new;
    std::swap(g, g_new);
    if (tiny_progress) break;
  }
}

// One polish pass: cap the atom set, re-optimize angles and log-weights.
inline void polish(const Mat4& rho, std::vector<Atom>& atoms, int max_lbfgs_iters) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.w > y.w; });
  // Cap the active set; the heaviest atoms carry the mixture, and the local
  // optimizer only needs a modest working set to move weight between.
  if (atoms.size() > 32) atoms.resize(32);
  double wsum = 0.0;
  for (const Atom& at : atoms) wsum += at.w;
  for (Atom& at : atoms) at.w /= wsum;

  const int m = static_cast<int>(atoms.size());
  std::vector<double> x(5 * m);
  for (int k = 0; k < m; ++k) {
    angles_of(atoms[k].a, x[4 * k + 0], x[4 * k + 1]);
    angles_of(atoms[k].b, x[4 * k + 2], x[4 * k + 3]);
    x[4 * m + k] = std::log(std::max(atoms[k].w, 1e-300));
  }

  auto fg = [&](const std::vector<double>& xv, std::vector<double>& grad) -> double {
    for (double c : xv)
      if (!std::isfinite(c)) {
        std::fill(grad.begin(), grad.end(), 0.0);
        return 1e30;
      }
    // Softmax weights.
    std::vector<double> w(m);
    double wmax = xv[4 * m];
    for (int k = 1; k < m; ++k) wmax = std::max(wmax, xv[4 * m + k]);
    double z = 0.0;
    for (int k = 0; k < m; ++k) {
      w[k] = std::exp(xv[4 * m + k] - wmax);
      z += w[k];
    }
    for (int k = 0; k < m; ++k) w[k] /= z;

    std::vector<Vec2> as(m), bs(m);
    std::vector<Vec4> us(m);
    Mat4 sigma;
    for (int k = 0; k < m; ++k) {
      as[k] = bloch(xv[4 * k + 0], xv[4 * k + 1]);
      bs[k] = bloch(xv[4 * k + 2], xv[4 * k + 3]);
      us[k] = kron(as[k], bs[k]);
      sigma += w[k] * projector(us[k]);
    }

    const Mat4 g = grad_f(rho, sigma);
    const double fv = f_val(rho, sigma);

    std::vector<double> gw(m);
    double gw_mean = 0.0;
    for (int k = 0; k < m; ++k) {
      const Vec4 gu = g * us[k];
      gw[k] = inner(us[k], gu).real();
      gw_mean += w[k] * gw[k];

      Vec2 dat, dap, dbt, dbp;
      dbloch(xv[4 * k + 0], xv[4 * k + 1], dat, dap);
      dbloch(xv[4 * k + 2], xv[4 * k + 3], dbt, dbp);
      const Vec4 dus[4] = {kron(dat, bs[k]), kron(dap, bs[k]), kron(as[k], dbt),
                           kron(as[k], dbp)};
      for (int j = 0; j < 4; ++j) grad[4 * k + j] = w[k] * 2.0 * inner(dus[j], gu).real();
    }
    for (int k = 0; k < m; ++k) grad[4 * m + k] = w[k] * (gw[k] - gw_mean);
    return fv;
  };

  lbfgs_minimize(x, fg, max_lbfgs_iters);

  // Rebuild the atom set from the optimized parameters.
  std::vector<double> w(m);
  double wmax = x[4 * m];
  for (int k = 1; k < m; ++k) wmax = std::max(wmax, x[4 * m + k]);
  double z = 0.0;
  for (int k = 0; k < m; ++k) {
    w[k] = std::exp(x[4 * m + k] - wmax);
    z += w[k];
  }
  std::vector<Atom> out;
  out.reserve(m);
  for (int k = 0; k < m; ++k) {
    const double wk = w[k] / z;
    if (wk <= 1e-12) continue;
    out.push_back(make_atom(bloch(x[4 * k + 0], x[4 * k + 1]),
                            bloch(x[4 * k + 2], x[4 * k + 3]), wk));
  }
  if (!out.empty()) atoms = std::move(out);
  double fsum = 0.0;
  for (const Atom& at : atoms) fsum += at.w;
  for (Atom& at : atoms) at.w /= fsum;
}

struct RestartOutcome {
  std::vector<Atom> atoms;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

inline RestartOutcome run_restart(const Mat4& rho, const OracleConfig& cfg, int restart) {
  std::vector<Atom> atoms;
  if (restart == 0) {
    // Maximally mixed start: the four computational product states.
    const Vec2 e0{1, 0}, e1{0, 1};
    for (const Vec2& a : {e0, e1})
      for (const Vec2& b : {e0, e1}) atoms.push_back(make_atom(a, b, 0.25));
  } else {
    Rng rng(cfg.seed ^ (0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(restart)));
    std::array<double, 8> w{};
    rng.simplex(w.data(), 8);
    for (int k = 0; k < 8; ++k)
      atoms.push_back(make_atom(rng.qubit_state(), rng.qubit_state(), w[k]));
  }

  RestartOutcome out;
  constexpr int kPolishPeriod = 25;
  Mat4 sigma = mixture(atoms);

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const Mat4 g = grad_f(rho, sigma);
    Atom v = lmo(g);

    double trace_gs = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) trace_gs += (g(i, j) * sigma(j, i)).real();
    const Vec4 gv = g * v.v;
    const double gap = trace_gs - inner(v.v, gv).real();

    out.trace.push_back(f_val(rho, sigma));
    if (gap < cfg.tol) {
      out.converged = true;
      break;
    }

    // Worst active atom by linearized objective.
    int k_aw = -1;
    double worst = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (atoms[k].w <= 1e-14) continue;
      const Vec4 ga = g * atoms[k].v;
      const double lin = inner(atoms[k].v, ga).real();
      if (k_aw < 0 || lin > worst) {
        worst = lin;
        k_aw = static_cast<int>(k);
      }
    }

    const Mat4 pv = projector(v.v);
    bool stepped = false;
    if (k_aw >= 0) {
      // Pairwise step: shift weight from the worst atom toward the new one.
      const Mat4 h = pv - projector(atoms[k_aw].v);
      const double wcap = atoms[k_aw].w;
      const double t = line_search(rho, sigma, cx(wcap) * h, 1.0) * wcap;
      if (t > 1e-16) {
        int dup = -1;
        for (std::size_t k = 0; k < atoms.size(); ++k)
          if (std::norm(inner(atoms[k].v, v.v)) > 1.0 - 1e-12) {
            dup = static_cast<int>(k);
            break;
          }
        if (dup >= 0) {
          atoms[dup].w += t;
        } else {
          v.w = t;
          atoms.push_back(v);
        }
        atoms[k_aw].w -= t;
        stepped = true;
      }
    }
    if (!stepped) {
      // Vanilla step toward the new atom.
      const Mat4 h = pv - sigma;
      const double t = line_search(rho, sigma, h, 1.0);
      for (Atom& at : atoms) at.w *= (1.0 - t);
      v.w = t;
      atoms.push_back(v);
    }

    // Drop dead weight, renormalize.
    std::vector<Atom> kept;
    kept.reserve(atoms.size());
    double wsum = 0.0;
    for (Atom& at : atoms) {
      if (at.w <= 1e-12) continue;
      wsum += at.w;
      kept.push_back(std::move(at));
    }
    atoms = std::move(kept);
    for (Atom& at : atoms) at.w /= wsum;

    if ((it + 1) % kPolishPeriod == 0) polish(rho, atoms, 300);
    sigma = mixture(atoms);
  }

  // Final tidy-up so easy instances are sharp even without many iterations.
  if (!out.converged) {
    polish(rho, atoms, 300);
    sigma = mixture(atoms);
    out.trace.push_back(f_val(rho, sigma));
  }

  out.atoms = std::move(atoms);
  out.f = f_val(rho, sigma);
  out.iterations = it;
  return out;
}

}  // namespace detail

inline OracleResult solve(const DensityMatrix& rho, const OracleConfig& cfg = {}) {
  if (cfg.restarts < 1)
    throw validation_error("oracle: restarts must be >= 1");
  if (cfg.max_iters < 1)
    throw validation_error("oracle: max_iters must be >= 1");
  if (!(cfg.tol > 0.0))
    throw validation_error("oracle: tol must be positive");

  const double vn = von_neumann_entropy(rho);

  OracleResult res;
  detail::RestartOutcome best;
  bool have = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    detail::RestartOutcome out = detail::run_restart(rho.matrix(), cfg, r);
    res.per_restart_values.push_back(out.f - vn);
    if (!have || out.f < best.f) {
      best = std::move(out);
      have = true;
    }
  }

  res.ree = best.f - vn;
  res.sigma = DensityMatrix::from_matrix(detail::mixture(best.atoms));
  res.iterations = best.iterations;
  res.converged = best.converged;
  res.objective_trace = std::move(best.trace);
  return res;
}

}  // namespace qree::oracle
