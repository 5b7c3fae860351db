#pragma once
// Deterministic eigensolver for small complex Hermitian matrices.
//
// Cyclic Jacobi with fixed pivot order: no pivot search, no randomization,
// no parallelism, so identical input bits always produce identical output
// bits.  Convergence is driven to off-diagonal Frobenius mass below 1e-14
// relative to the matrix scale, which for the 2x2..8x8 matrices used here
// means eigenpairs accurate to close to machine precision.

#include <algorithm>
#include <cmath>

#include "qree/complex_mat.hpp"

namespace qree {

namespace detail {

// In-place cyclic Jacobi on an n x n complex Hermitian matrix stored row-major
// with stride n.  On return `a` is (numerically) diagonal and `v` holds the
// accumulated unitary, columns = eigenvectors.  Returns sweep count.
inline int jacobi_hermitian(cx* a, cx* v, int n) {
  auto A = [&](int i, int j) -> cx& { return a[i * n + j]; };
  auto V = [&](int i, int j) -> cx& { return v[i * n + j]; };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) V(i, j) = (i == j) ? 1.0 : 0.0;

  double scale = 0.0;
  for (int i = 0; i < n * n; ++i) scale += std::norm(a[i]);
  scale = std::sqrt(scale);
  const double stop = 1e-14 * std::max(1.0, scale);

  const int max_sweeps = 64;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += std::norm(A(i, j));
    if (std::sqrt(2.0 * off) < stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cx apq = A(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const cx phase = apq / b;  // e^{i arg(apq)}
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        // Smaller-angle root of t^2 + 2*tau*t - 1 = 0.
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cx sp = s * phase;         // J(p,q) = s e^{i a}
        const cx spc = std::conj(sp);    // used as s e^{-i a}

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cx akp = A(k, p);
          const cx akq = A(k, q);
          A(k, p) = c * akp - spc * akq;
          A(k, q) = sp * akp + c * akq;
          A(p, k) = std::conj(A(k, p));
          A(q, k) = std::conj(A(k, q));
        }
        A(p, p) = cx(app * c * c - 2.0 * s * c * b + aqq * s * s, 0.0);
        A(q, q) = cx(app * s * s + 2.0 * s * c * b + aqq * c * c, 0.0);
        A(p, q) = 0.0;
        A(q, p) = 0.0;

        for (int k = 0; k < n; ++k) {
          const cx vkp = V(k, p);
          const cx vkq = V(k, q);
          V(k, p) = c * vkp - spc * vkq;
          V(k, q) = sp * vkp + c * vkq;
        }
      }
    }
  }
  return sweep;
}

}  // namespace detail

template <std::size_t N>
struct HermitianEig {
  std::array<double, N> values;  // ascending
  Mat<N> vectors;                // column i pairs with values[i]
};

// Eigendecomposition of a Hermitian matrix.  Eigenvalues ascending; each
// eigenvector's phase is fixed so its largest-modulus component (first such
// index on ties) is real and positive.  Throws validation_error if the input
// deviates from Hermitian symmetry by more than 1e-12 entrywise.
template <std::size_t N>
inline HermitianEig<N> hermitian_eig(const Mat<N>& m) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12)
        throw validation_error("hermitian_eig: matrix is not Hermitian (entry (" +
                               std::to_string(i) + "," + std::to_string(j) + "))");

  Mat<N> a = m;
  Mat<N> v;
  detail::jacobi_hermitian(a.e.data(), v.e.data(), static_cast<int>(N));

  std::array<std::size_t, N> order;
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double ax = a(x, x).real(), ay = a(y, y).real();
    if (ax != ay) return ax < ay;
    return x < y;
  });

  HermitianEig<N> out;
  for (std::size_t c = 0; c < N; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src).real();
    // Phase convention: largest-modulus component real-positive.
    std::size_t lead = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < N; ++r) {
      const double ab = std::abs(v(r, src));
      if (ab > best + 1e-15) {
        best = ab;
        lead = r;
      }
    }
    cx ph(1.0, 0.0);
    if (best > 0.0) ph = std::conj(v(lead, src)) / best;
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, c) = v(r, src) * ph;
    out.vectors(lead, c) = cx(std::abs(out.vectors(lead, c)), 0.0);
  }
  return out;
}

template <std::size_t N>
inline Vec<N> eig_column(const HermitianEig<N>& e, std::size_t c) {
  Vec<N> v;
  for (std::size_t r = 0; r < N; ++r) v[r] = e.vectors(r, c);
  return v;
}

}  // namespace qree
