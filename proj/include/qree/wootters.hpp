#pragma once
// Optimal pure-state decomposition of an entangled two-qubit state: every
// member attains the concurrence of the state itself, so the ensemble average
// of member entanglement equals the entanglement of formation.
//
// Construction: subnormalized support eigenvectors x_i give the symmetric
// matrix tau_ij = <x_i | spin_flip(x_j)>; a Takagi factorization aligns the
// ensemble with the spin flip; a phase choice makes the preliminary Gram
// matrix real; a sequence of Givens rotations then zeroes the diagonal of a
// traceless real symmetric matrix, which equalizes member concurrences.
//
// Everything here is deterministic: fixed pivot orders, deterministic
// eigensolver, and sign conventions on every intermediate basis, so repeated
// runs on identical input bits return identical ensembles.

#include <vector>

#include "qree/measures.hpp"

namespace qree {

struct EnsembleMember {
  double p;
  PureState state;
};

struct Ensemble {
  std::vector<EnsembleMember> members;

  Mat4 density() const {
    Mat4 m;
    for (const auto& mem : members) m += mem.p * mem.state.density();
    return m;
  }
};

struct ValidationReport {
  double reconstruction_error = 0.0;  // Frobenius distance to the input state
  double concurrence_spread = 0.0;    // max - min member concurrence
  double eof_gap = 0.0;               // |mean member EOF - EOF(rho)|
  double weight_sum_error = 0.0;      // |sum p - 1|
  bool optimal = false;
};

namespace detail {

inline Vec4 spin_flip(const Vec4& v) {
  // (sigma_y x sigma_y) conj(v)
  return {-std::conj(v[3]), std::conj(v[2]), std::conj(v[1]), -std::conj(v[0])};
}

// Sign convention for a Takagi vector (defined up to +-1 when its singular
// value is simple): leading component gets a positive real part.
inline void takagi_sign_fix(cx* u, int r) {
  int lead = 0;
  double best = -1.0;
  for (int i = 0; i < r; ++i) {
    const double ab = std::abs(u[i]);
    if (ab > best + 1e-15) {
      best = ab;
      lead = i;
    }
  }
  const double re = u[lead].real(), im = u[lead].imag();
  const bool flip = (std::abs(re) > 1e-12) ? (re < 0.0) : (im < 0.0);
  if (flip)
    for (int i = 0; i < r; ++i) u[i] = -u[i];
}

// Takagi factorization of a complex symmetric r x r matrix using Hermitian
// eigenproblems only.  Returns W with W tau W^T = diag(s), s descending.
//
// tau conj(tau) is Hermitian PSD with eigenvalues s^2, and u -> tau conj(u)
// preserves its eigenspaces.  Within a singular-value cluster with basis Q
// (s > 0), S = Q^dag tau conj(Q) = s W with W symmetric unitary; W = X + iY
// has commuting real symmetric parts, whose common eigenbasis yields a
// symmetric unitary square root Z of W.  Columns c of Z satisfy
// W conj(c) = c, so u = Q c obeys tau conj(u) = s u.  Zero clusters take Q
// itself.
inline void takagi_blocked(const Mat4& tau, int r, Mat4& w_out, double* s_out,
                           double cluster_tol = 1e-8) {
  // A = tau * conj(tau), restricted to the leading r x r block.
  std::array<cx, 16> a{};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      cx s = 0.0;
      for (int k = 0; k < r; ++k) s += tau(i, k) * std::conj(tau(k, j));
      a[i * r + j] = s;
    }
  std::array<cx, 16> v{};
  detail::jacobi_hermitian(a.data(), v.data(), r);

  std::array<double, 4> s_all{};
  std::array<int, 4> order{};
  for (int i = 0; i < r; ++i) {
    s_all[i] = std::sqrt(std::max(0.0, a[i * r + i].real()));
    order[i] = i;
  }
  std::sort(order.begin(), order.begin() + r, [&](int x, int y) {
    if (s_all[x] != s_all[y]) return s_all[x] > s_all[y];
    return x < y;
  });
  const double scale = std::max(1.0, s_all[order[0]]);

  std::array<std::array<cx, 4>, 4> us{};
  int filled = 0;
  int i = 0;
  while (i < r) {
    int j = i;
    while (j + 1 < r &&
           s_all[order[i]] - s_all[order[j + 1]] <= cluster_tol * scale)
      ++j;
    const int d = j - i + 1;
    // Q: r x d cluster basis.
    std::array<std::array<cx, 4>, 4> q{};
    for (int c = 0; c < d; ++c)
      for (int k = 0; k < r; ++k) q[k][c] = v[k * r + order[i + c]];
    double s_mean = 0.0;
    for (int c = 0; c < d; ++c) s_mean += s_all[order[i + c]];
    s_mean /= d;

    if (s_mean <= cluster_tol * scale) {
      for (int c = 0; c < d; ++c) {
        std::array<cx, 4> u{};
        for (int k = 0; k < r; ++k) u[k] = q[k][c];
        // Zero singular value: full phase freedom; make the leading
        // component real-positive.
        int lead = 0;
        double best = -1.0;
        for (int k = 0; k < r; ++k)
          if (std::abs(u[k]) > best + 1e-15) {
            best = std::abs(u[k]);
            lead = k;
          }
        if (best > 0.0) {
          const cx ph = std::conj(u[lead]) / best;
          for (int k = 0; k < r; ++k) u[k] *= ph;
        }
        us[filled] = u;
        s_out[filled] = 0.0;
        ++filled;
      }
    } else {
      // S = Q^dag tau conj(Q), W2 = S / s.
      std::array<cx, 16> w2{};
      for (int p = 0; p < d; ++p)
        for (int c = 0; c < d; ++c) {
          cx acc = 0.0;
          for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l)
              acc += std::conj(q[k][p]) * tau(k, l) * std::conj(q[l][c]);
          w2[p * d + c] = acc / s_mean;
        }
      // X = Re W2 and Y = Im W2 commute; diagonalize X, then Y within
      // X-eigenvalue clusters; assemble Z = sum exp(i theta/2) v v^T.
      std::array<cx, 16> xbuf{}, xv{};
      for (int k = 0; k < d * d; ++k) xbuf[k] = w2[k].real();
      detail::jacobi_hermitian(xbuf.data(), xv.data(), d);
      std::array<double, 4> xev{};
      std::array<int, 4> xo{};
      for (int k = 0; k < d; ++k) {
        xev[k] = xbuf[k * d + k].real();
        xo[k] = k;
      }
      std::sort(xo.begin(), xo.begin() + d, [&](int x, int y) {
        if (xev[x] != xev[y]) return xev[x] > xev[y];
        return x < y;
      });

      std::array<cx, 16> z{};
      int aa = 0;
      while (aa < d) {
        int bb = aa;
        while (bb + 1 < d && xev[xo[aa]] - xev[xo[bb + 1]] <= 1e-8) ++bb;
        const int dd = bb - aa + 1;
        double x_mean = 0.0;
        for (int k = aa; k <= bb; ++k) x_mean += xev[xo[k]];
        x_mean /= dd;
        // Ys = Qx^T Y Qx (real symmetric dd x dd).
        std::array<cx, 16> ys{}, yv{};
        for (int p = 0; p < dd; ++p)
          for (int c = 0; c < dd; ++c) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k)
              for (int l = 0; l < d; ++l)
                acc += xv[k * d + xo[aa + p]].real() * w2[k * d + l].imag() *
                       xv[l * d + xo[aa + c]].real();
            ys[p * dd + c] = acc;
          }
        detail::jacobi_hermitian(ys.data(), yv.data(), dd);
        for (int m = 0; m < dd; ++m) {
          std::array<double, 4> cv{};
          for (int k = 0; k < d; ++k) {
            double acc = 0.0;
            for (int p = 0; p < dd; ++p)
              acc += xv[k * d + xo[aa + p]].real() * yv[p * dd + m].real();
            cv[k] = acc;
          }
          const double theta = std::atan2(ys[m * dd + m].real(), x_mean);
          const cx phase = std::exp(cx(0.0, theta / 2.0));
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) z[k * d + l] += phase * cv[k] * cv[l];
        }
        aa = bb + 1;
      }
      for (int c = 0; c < d; ++c) {
        std::array<cx, 4> u{};
        for (int k = 0; k < r; ++k) {
          cx acc = 0.0;
          for (int l = 0; l < d; ++l) acc += q[k][l] * z[l * d + c];
          u[k] = acc;
        }
        takagi_sign_fix(u.data(), r);
        us[filled] = u;
        s_out[filled] = s_all[order[i + c]];
        ++filled;
      }
    }
    i = j + 1;
  }

  // W = U^dag with U's columns the Takagi vectors.
  w_out = Mat4{};
  for (int row = 0; row < r; ++row)
    for (int col = 0; col < r; ++col) w_out(row, col) = std::conj(us[row][col]);
}

}  // namespace detail

// Optimal decomposition attaining the entanglement of formation.  At most 4
// members (one per support dimension).  Throws separable_error when the state
// has zero concurrence.
inline Ensemble optimal_decomposition(const DensityMatrix& rho) {
  const EigenSystem& es = rho.eigensystem();

  // Support eigenvectors, descending eigenvalue, subnormalized.
  std::array<int, 4> idx{};
  int r = 0;
  for (int k = 3; k >= 0; --k)
    if (es.values[k] > 1e-12) idx[r++] = k;
  std::vector<Vec4> xs(r);
  for (int i = 0; i < r; ++i) {
    Vec4 v = eig_column(es, idx[i]);
    xs[i] = scaled(v, std::sqrt(es.values[idx[i]]));
  }

  Mat4 tau;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) tau(i, j) = inner(xs[i], detail::spin_flip(xs[j]));
  }

  Mat4 w;
  std::array<double, 4> s_takagi{};
  detail::takagi_blocked(tau, r, w, s_takagi.data());

  // Use the doubling-based singular values: accurate to eps where squaring
  // would only give sqrt(eps), which matters right at the separable edge.
  const std::array<double, 4> s4 = symmetric_singular_values(tau);
  std::array<double, 4> s{};
  for (int k = 0; k < r; ++k) s[k] = s4[k];

  double c = s[0];
  for (int k = 1; k < r; ++k) c -= s[k];
  if (c <= 0.0)
    throw separable_error("optimal_decomposition: state is separable (concurrence 0)");

  // y_i = sum_j conj(W_ij) x_j diagonalizes the flip overlap; the phase
  // choice z_1 = y_1, z_j = i y_j makes all <z_i|flip(z_j)> real with signs
  // (+,-,-,-).
  std::vector<Vec4> zs(r);
  for (int i = 0; i < r; ++i) {
    Vec4 y{};
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < 4; ++k) y[k] += std::conj(w(i, j)) * xs[j][k];
    zs[i] = (i == 0) ? y : scaled(y, cx(0.0, 1.0));
  }

  // Real symmetric traceless Q; rotating its diagonal to zero equalizes the
  // member concurrences at c.
  std::array<double, 16> q{};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double lam = (i == 0 ? s[0] : -s[i]);
      q[i * r + j] = (i == j ? lam : 0.0) - c * inner(zs[i], zs[j]).real();
    }

  std::array<double, 16> o{};
  for (int i = 0; i < r; ++i) o[i * r + i] = 1.0;

  for (int iter = 0; iter < 200; ++iter) {
    int im = 0, jm = 0;
    for (int k = 1; k < r; ++k) {
      if (q[k * r + k] > q[im * r + im]) im = k;
      if (q[k * r + k] < q[jm * r + jm]) jm = k;
    }
    double dmax = 0.0;
    for (int k = 0; k < r; ++k) dmax = std::max(dmax, std::abs(q[k * r + k]));
    if (q[im * r + im] - q[jm * r + jm] < 1e-15 || dmax < 1e-15) break;

    const double qii = q[im * r + im], qjj = q[jm * r + jm], qij = q[im * r + jm];
    // tan(theta) zeroing the rotated (i,i) entry: qii + 2 t qij + t^2 qjj = 0.
    double t;
    if (std::abs(qjj) < 1e-300) {
      t = (std::abs(qij) < 1e-300) ? 0.0 : -qii / (2.0 * qij);
    } else {
      const double disc = std::max(qij * qij - qii * qjj, 0.0);
      const double r1 = (-qij + std::sqrt(disc)) / qjj;
      const double r2 = (-qij - std::sqrt(disc)) / qjj;
      t = std::abs(r1) <= std::abs(r2) ? r1 : r2;
    }
    const double cth = 1.0 / std::sqrt(1.0 + t * t);
    const double sth = t * cth;

    // Apply the Givens rotation G (rows im, jm) to Q on both sides and to O.
    std::array<double, 4> row_i{}, row_j{};
    for (int k = 0; k < r; ++k) {
      row_i[k] = cth * q[im * r + k] + sth * q[jm * r + k];
      row_j[k] = -sth * q[im * r + k] + cth * q[jm * r + k];
    }
    for (int k = 0; k < r; ++k) {
      q[im * r + k] = row_i[k];
      q[jm * r + k] = row_j[k];
    }
    for (int k = 0; k < r; ++k) {
      const double ci = cth * q[k * r + im] + sth * q[k * r + jm];
      const double cj = -sth * q[k * r + im] + cth * q[k * r + jm];
      q[k * r + im] = ci;
      q[k * r + jm] = cj;
    }
    q[im * r + im] = 0.0;
    for (int k = 0; k < r; ++k) {
      const double oi = cth * o[im * r + k] + sth * o[jm * r + k];
      const double oj = -sth * o[im * r + k] + cth * o[jm * r + k];
      o[im * r + k] = oi;
      o[jm * r + k] = oj;
    }
  }
  double dmax = 0.0;
  for (int k = 0; k < r; ++k) dmax = std::max(dmax, std::abs(q[k * r + k]));
  if (dmax > 1e-12)
    throw error("optimal_decomposition: diagonal equalization did not converge");

  Ensemble out;
  for (int k = 0; k < r; ++k) {
    Vec4 wv{};
    for (int i = 0; i < r; ++i)
      for (int comp = 0; comp < 4; ++comp) wv[comp] += o[k * r + i] * zs[i][comp];
    const double nw = norm(wv);
    out.members.push_back({nw * nw, PureState(scaled(wv, 1.0 / nw))});
  }
  return out;
}

// Checks an ensemble against the defining properties of an optimal
// decomposition of rho.
inline ValidationReport validate_optimal(const DensityMatrix& rho, const Ensemble& ens) {
  ValidationReport rep;
  rep.reconstruction_error = frobenius_norm(ens.density() - rho.matrix());

  double cmin = 1.0, cmax = 0.0, mean_eof = 0.0, psum = 0.0;
  for (const auto& mem : ens.members) {
    const double c = concurrence(mem.state);
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
    mean_eof += mem.p * eof_from_concurrence(c);
    psum += mem.p;
  }
  rep.concurrence_spread = ens.members.empty() ? 0.0 : cmax - cmin;
  rep.eof_gap = std::abs(mean_eof - entanglement_of_formation(rho));
  rep.weight_sum_error = std::abs(psum - 1.0);
  rep.optimal = rep.reconstruction_error <= 1e-9 && rep.concurrence_spread <= 1e-8 &&
                rep.eof_gap <= 1e-9 && rep.weight_sum_error <= 1e-12;
  return rep;
}

}  // namespace qree
