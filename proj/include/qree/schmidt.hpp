#pragma once
// Schmidt decomposition of a two-qubit pure state, in closed form, and the
// closest separable state it induces.
//
// The closed-form route reads the Schmidt data off the one-qubit reduced
// state of subsystem B: lambda_pm come directly from the concurrence,
// (x_pm, y_pm) are the reduced state's eigenvector components, and the u/v/w
// matrices assemble the A- and B-side Schmidt bases from them.  When the
// eigenvector normalizers n_pm degenerate (reduced state nearly diagonal with
// the probed eigenvalue, or vanishing Schmidt weight), the decomposition
// falls back to a direct eigendecomposition of the reduced state of A.

#include <cmath>

#include "qree/measures.hpp"

namespace qree {

struct SchmidtData {
  double lambda_plus = 0.0;   // larger Schmidt weight
  double lambda_minus = 0.0;  // smaller Schmidt weight
  cx x_plus, x_minus;         // reduced-state eigenvector components (B side)
  cx y_plus, y_minus;
  double n_plus = 0.0;        // eigenvector normalizers
  double n_minus = 0.0;
  Mat2 u;                     // basis assembly matrices: v = u * [[x+,x-],[y+,y-]]
  Mat2 v;                     // |i_A> = column i of v
  Mat2 w;                     // |i_B> = row i of w
  Vec2 basis_a[2];
  Vec2 basis_b[2];
  bool degenerate = false;    // true when the fallback branch was taken
};

namespace detail {

inline Vec2 phase_fixed(Vec2 v) {
  std::size_t lead = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
  const double ab = std::abs(v[lead]);
  if (ab > 0.0) {
    const cx ph = std::conj(v[lead]) / ab;
    v[0] *= ph;
    v[1] *= ph;
  }
  return v;
}

inline SchmidtData schmidt_fallback(const Vec4& a, double np_, double nm_) {
  // psi = sum_ij M(i,j) |i>_A |j>_B
  Mat2 m;
  m(0, 0) = a[0];
  m(0, 1) = a[1];
  m(1, 0) = a[2];
  m(1, 1) = a[3];

  Mat2 rho_a = m * dagger(m);
  HermitianEig<2> es = hermitian_eig(rho_a);
  const double lp = es.values[1];
  const double lm = std::max(0.0, es.values[0]);
  Vec2 ep = phase_fixed(eig_column(es, 1));
  Vec2 em = phase_fixed(eig_column(es, 0));

  auto contract = [&](const Vec2& e) {
    // <e|_A psi = sum_j (sum_i conj(e_i) M(i,j)) |j>_B
    Vec2 b;
    b[0] = std::conj(e[0]) * m(0, 0) + std::conj(e[1]) * m(1, 0);
    b[1] = std::conj(e[0]) * m(0, 1) + std::conj(e[1]) * m(1, 1);
    return b;
  };
  Vec2 bp = contract(ep);
  Vec2 bm = contract(em);
  if (lp > 1e-12) bp = scaled(bp, 1.0 / std::sqrt(lp));
  if (lm > 1e-12) {
    bm = scaled(bm, 1.0 / std::sqrt(lm));
  } else {
    bm = {-std::conj(bp[1]), std::conj(bp[0])};
  }

  SchmidtData d;
  // The reduced-state eigenvalues are eps-accurate even at spectral
  // degeneracy, where the concurrence-route weights lamp/lamm degrade to
  // sqrt(eps); prefer them on this branch.
  d.lambda_plus = lp;
  d.lambda_minus = lm;
  d.n_plus = np_;
  d.n_minus = nm_;
  d.degenerate = true;
  d.basis_a[0] = ep;
  d.basis_a[1] = em;
  d.basis_b[0] = bp;
  d.basis_b[1] = bm;
  // Keep the matrix fields coherent with the closed-form identities:
  // columns of v are the A basis, rows of w the B basis, u = v * X^dag with
  // X unitary built from the B-side eigenvector components.
  d.v(0, 0) = ep[0];
  d.v(1, 0) = ep[1];
  d.v(0, 1) = em[0];
  d.v(1, 1) = em[1];
  d.w(0, 0) = bp[0];
  d.w(0, 1) = bp[1];
  d.w(1, 0) = bm[0];
  d.w(1, 1) = bm[1];
  d.x_plus = std::conj(bp[0]);
  d.y_plus = std::conj(bp[1]);
  d.x_minus = std::conj(bm[0]);
  d.y_minus = std::conj(bm[1]);
  Mat2 x;
  x(0, 0) = d.x_plus;
  x(0, 1) = d.x_minus;
  x(1, 0) = d.y_plus;
  x(1, 1) = d.y_minus;
  d.u = d.v * dagger(x);
  return d;
}

}  // namespace detail

inline SchmidtData schmidt_decompose(const PureState& psi) {
  const Vec4& a = psi.amplitudes();
  const double c = concurrence(psi);
  const double lamp = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  const double lamm = 1.0 - lamp;

  // Off-diagonal and leading diagonal entry of the reduced state of B.
  const cx num_x = std::conj(a[0]) * a[1] + std::conj(a[2]) * a[3];
  const double p_b = std::norm(a[0]) + std::norm(a[2]);
  const double np_ = std::sqrt(std::norm(num_x) + (lamp - p_b) * (lamp - p_b));
  const double nm_ = std::sqrt(std::norm(num_x) + (lamm - p_b) * (lamm - p_b));

  // Near spectral degeneracy lamp itself is only sqrt(eps)-accurate (it comes
  // through sqrt(1 - C^2)), so normalizers below ~1e-8 may be pure noise; the
  // threshold must sit well above that floor for the closed form to be safe.
  if (std::min(np_, nm_) < 1e-6 || lamm < 1e-12)
    return detail::schmidt_fallback(a, np_, nm_);

  SchmidtData d;
  d.lambda_plus = lamp;
  d.lambda_minus = lamm;
  d.n_plus = np_;
  d.n_minus = nm_;
  d.x_plus = num_x / np_;
  d.x_minus = num_x / nm_;
  d.y_plus = (lamp - p_b) / np_;
  d.y_minus = (lamm - p_b) / nm_;

  const double sp = std::sqrt(lamp);
  const double sm = std::sqrt(lamm);
  const cx xp = d.x_plus, xm = d.x_minus, yp = d.y_plus, ym = d.y_minus;
  d.u(0, 0) = a[0] * (std::norm(xp) / sp + std::norm(xm) / sm) +
              a[1] * (std::conj(xp) * yp / sp + std::conj(xm) * ym / sm);
  d.u(0, 1) = a[0] * (xp * std::conj(yp) / sp + xm * std::conj(ym) / sm) +
              a[1] * (std::norm(yp) / sp + std::norm(ym) / sm);
  d.u(1, 0) = a[2] * (std::norm(xp) / sp + std::norm(xm) / sm) +
              a[3] * (std::conj(xp) * yp / sp + std::conj(xm) * ym / sm);
  d.u(1, 1) = a[2] * (xp * std::conj(yp) / sp + xm * std::conj(ym) / sm) +
              a[3] * (std::norm(yp) / sp + std::norm(ym) / sm);

  Mat2 x;
  x(0, 0) = xp;
  x(0, 1) = xm;
  x(1, 0) = yp;
  x(1, 1) = ym;
  d.v = d.u * x;
  d.w(0, 0) = std::conj(xp);
  d.w(0, 1) = std::conj(yp);
  d.w(1, 0) = std::conj(xm);
  d.w(1, 1) = std::conj(ym);

  d.basis_a[0] = {d.v(0, 0), d.v(1, 0)};
  d.basis_a[1] = {d.v(0, 1), d.v(1, 1)};
  d.basis_b[0] = {d.w(0, 0), d.w(0, 1)};
  d.basis_b[1] = {d.w(1, 0), d.w(1, 1)};
  return d;
}

// Closest separable state of a pure state: the Schmidt-basis dephasing
//   lambda_+ |0_A 0_B><0_A 0_B| + lambda_- |1_A 1_B><1_A 1_B|.
inline Mat4 closest_separable_pure(const SchmidtData& d) {
  const Vec4 v0 = kron(d.basis_a[0], d.basis_b[0]);
  const Vec4 v1 = kron(d.basis_a[1], d.basis_b[1]);
  return d.lambda_plus * projector(v0) + d.lambda_minus * projector(v1);
}

inline Mat4 closest_separable_pure(const PureState& psi) {
  return closest_separable_pure(schmidt_decompose(psi));
}

// Relative entropy of entanglement of a pure state: the entropy of its
// Schmidt weights.
inline double ree_pure(const SchmidtData& d) {
  double s = 0.0;
  if (d.lambda_plus > 1e-15) s -= d.lambda_plus * std::log(d.lambda_plus);
  if (d.lambda_minus > 1e-15) s -= d.lambda_minus * std::log(d.lambda_minus);
  return s;
}

inline double ree_pure(const PureState& psi) {
  return ree_pure(schmidt_decompose(psi));
}

}  // namespace qree
