#pragma once
// Validated two-qubit state types and the linear-algebra primitives that
// operate on them: partial transpose, matrix functions on the support,
// entropy-ready logarithms.
//
// Qubit ordering: basis index 2*i + j encodes |i>_A |j>_B.

#include <cmath>
#include <optional>

#include "qree/complex_mat.hpp"
#include "qree/eig.hpp"

namespace qree {

using EigenSystem = HermitianEig<4>;

// --- computational and Bell basis -----------------------------------------

inline Vec4 ket00() { return {1, 0, 0, 0}; }
inline Vec4 ket01() { return {0, 1, 0, 0}; }
inline Vec4 ket10() { return {0, 0, 1, 0}; }
inline Vec4 ket11() { return {0, 0, 0, 1}; }

inline Vec4 bell_phi_plus() {  // (|00> + |11>)/sqrt(2)
  const double r = 1.0 / std::sqrt(2.0);
  return {r, 0, 0, r};
}
inline Vec4 bell_phi_minus() {  // (|00> - |11>)/sqrt(2)
  const double r = 1.0 / std::sqrt(2.0);
  return {r, 0, 0, -r};
}
inline Vec4 bell_psi_plus() {  // (|01> + |10>)/sqrt(2)
  const double r = 1.0 / std::sqrt(2.0);
  return {0, r, r, 0};
}
inline Vec4 bell_psi_minus() {  // (|01> - |10>)/sqrt(2)
  const double r = 1.0 / std::sqrt(2.0);
  return {0, r, -r, 0};
}

inline Mat2 pauli_x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}
inline Mat2 pauli_y() {
  Mat2 m;
  m(0, 1) = cx(0, -1);
  m(1, 0) = cx(0, 1);
  return m;
}
inline Mat2 pauli_z() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// --- state types -----------------------------------------------------------

// Normalized two-qubit pure state.  Construction validates the norm to 1e-12.
class PureState {
 public:
  explicit PureState(const Vec4& amplitudes) : a_(amplitudes) {
    const double n = norm(a_);
    if (std::abs(n - 1.0) > 1e-12)
      throw validation_error("PureState: amplitudes are not normalized (|norm-1| = " +
                             std::to_string(std::abs(n - 1.0)) + ")");
  }

  const Vec4& amplitudes() const { return a_; }
  cx operator[](std::size_t i) const { return a_[i]; }
  Mat4 density() const { return projector(a_); }

 private:
  Vec4 a_;
};

// Two-qubit density matrix.  Construction validates hermiticity (1e-12
// entrywise), unit trace (1e-12) and positive semidefiniteness (eigenvalues
// >= -1e-10).  Invalid input is rejected, never repaired.
class DensityMatrix {
 public:
  // Default: the maximally mixed state I/4 — the one basis-independent
  // choice.  Lets aggregates carry DensityMatrix fields that are assigned
  // after construction.
  DensityMatrix() : DensityMatrix(0.25 * Mat4::identity(), hermitian_eig(0.25 * Mat4::identity())) {}

  static DensityMatrix maximally_mixed() { return DensityMatrix(); }

  static DensityMatrix from_matrix(const Mat4& m) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j)
        if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12)
          throw validation_error("DensityMatrix: matrix is not Hermitian");
    if (std::abs(trace(m) - 1.0) > 1e-12)
      throw validation_error("DensityMatrix: trace is not 1 (got " +
                             std::to_string(trace(m).real()) + ")");
    EigenSystem es = hermitian_eig(m);
    if (es.values[0] < -1e-10)
      throw validation_error("DensityMatrix: matrix is not positive semidefinite "
                             "(min eigenvalue " + std::to_string(es.values[0]) + ")");
    return DensityMatrix(m, es);
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return from_matrix(psi.density());
  }

  const Mat4& matrix() const { return m_; }
  const EigenSystem& eigensystem() const { return es_; }
  cx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  DensityMatrix(const Mat4& m, const EigenSystem& es) : m_(m), es_(es) {}
  Mat4 m_;
  EigenSystem es_;
};

// --- primitives ------------------------------------------------------------

// Partial transpose over subsystem B: <ij|M^G|kl> = <il|M|kj>.
inline Mat4 partial_transpose(const Mat4& m) {
  Mat4 g;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) g(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  return g;
}

inline double min_pt_eigenvalue(const Mat4& m) {
  return hermitian_eig(partial_transpose(m)).values[0];
}

// Reduced state of qubit A: tr_B.
inline Mat2 trace_out_b(const Mat4& m) {
  Mat2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) r(i, k) = m(2 * i + 0, 2 * k + 0) + m(2 * i + 1, 2 * k + 1);
  return r;
}

inline Mat2 trace_out_a(const Mat4& m) {
  Mat2 r;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t l = 0; l < 2; ++l) r(j, l) = m(0 + j, 0 + l) + m(2 + j, 2 + l);
  return r;
}

// Natural logarithm restricted to the support: eigenvalues <= 1e-12 are
// treated as exact zeros and contribute nothing.
template <std::size_t N>
inline Mat<N> matrix_log_on_support(const Mat<N>& m) {
  HermitianEig<N> es = hermitian_eig(m);
  Mat<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    if (es.values[k] <= 1e-12) continue;
    const double lg = std::log(es.values[k]);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        out(i, j) += lg * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return out;
}

// Positive-semidefinite square root (negative round-off eigenvalues clamped
// to zero).
template <std::size_t N>
inline Mat<N> matrix_sqrt_psd(const Mat<N>& m) {
  HermitianEig<N> es = hermitian_eig(m);
  Mat<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const double lam = std::max(0.0, es.values[k]);
    if (lam == 0.0) continue;
    const double r = std::sqrt(lam);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        out(i, j) += r * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return out;
}

// Projector onto the kernel (eigenvalues <= 1e-12) of a PSD matrix.
template <std::size_t N>
inline Mat<N> kernel_projector(const Mat<N>& m) {
  HermitianEig<N> es = hermitian_eig(m);
  Mat<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    if (es.values[k] > 1e-12) continue;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        out(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return out;
}

}  // namespace qree
