#pragma once
// Entanglement measures: concurrence, entanglement of formation, von Neumann
// and relative entropy.  All entropies are in nats.

#include <cmath>
#include <limits>

#include "qree/density_matrix.hpp"

namespace qree {

// sigma_y (x) sigma_y, the spin-flip kernel.
inline Mat4 spin_flip_kernel() {
  Mat4 m;
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

// Singular values of a complex *symmetric* 4x4 matrix, descending.
//
// Computed through the real symmetric doubling  [[Re X, Im X], [Im X, -Re X]],
// whose spectrum is {+s_i, -s_i}.  Unlike squaring X^dag X, this keeps small
// singular values accurate to machine epsilon rather than sqrt(eps) — the
// mixed-state concurrence is a difference of these values and would otherwise
// lose half its digits near the separable boundary.
inline std::array<double, 4> symmetric_singular_values(const Mat4& x) {
  Mat8 d;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double re = x(i, j).real();
      const double im = x(i, j).imag();
      d(i, j) = re;
      d(i, j + 4) = im;
      d(i + 4, j) = im;
      d(i + 4, j + 4) = -re;
    }
  HermitianEig<8> es = hermitian_eig(d);
  std::array<double, 4> s;
  for (std::size_t k = 0; k < 4; ++k) s[k] = std::max(0.0, es.values[7 - k]);
  return s;
}

inline double concurrence(const PureState& psi) {
  const Vec4& a = psi.amplitudes();
  return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

// Wootters singular values: descending singular values of
// sqrt(rho) * (sigma_y (x) sigma_y) * conj(sqrt(rho)).
inline std::array<double, 4> wootters_singular_values(const DensityMatrix& rho) {
  const Mat4 sq = matrix_sqrt_psd(rho.matrix());
  const Mat4 x = sq * spin_flip_kernel() * conj(sq);
  return symmetric_singular_values(x);
}

inline double concurrence(const DensityMatrix& rho) {
  const std::array<double, 4> s = wootters_singular_values(rho);
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

// Binary entropy -x ln x - (1-x) ln(1-x), with 0 ln 0 = 0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("binary_entropy: argument " + std::to_string(x) +
                       " is outside [0, 1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
  return h;
}

inline double eof_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw domain_error("eof_from_concurrence: concurrence " + std::to_string(c) +
                       " is outside [0, 1]");
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

inline double entanglement_of_formation(const DensityMatrix& rho) {
  return eof_from_concurrence(concurrence(rho));
}

inline double entanglement_of_formation(const PureState& psi) {
  return eof_from_concurrence(concurrence(psi));
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : rho.eigensystem().values)
    if (lam > 1e-12) s -= lam * std::log(lam);
  return s;
}

// Relative entropy with the infinite case kept distinguishable from any
// finite value.
struct RelativeEntropy {
  double nats = 0.0;  // meaningful only when finite
  bool finite = true;

  double value() const {
    return finite ? nats : std::numeric_limits<double>::infinity();
  }
};

// S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma).  Infinite when the
// support of rho leaks outside the support of sigma (leakage > 1e-10).
inline RelativeEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Mat4 pker = kernel_projector(sigma.matrix());
  double leak = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) leak += (pker(i, j) * rho(j, i)).real();
  if (leak > 1e-10) return {0.0, false};

  const Mat4 log_sigma = matrix_log_on_support(sigma.matrix());
  double cross = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) cross += (rho(i, j) * log_sigma(j, i)).real();
  return {-von_neumann_entropy(rho) - cross, true};
}

enum class Method { closed_form, procedure, oracle };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::procedure: return "procedure";
    case Method::oracle: return "oracle";
  }
  return "?";
}

struct MeasureReport {
  double concurrence = 0.0;
  double eof = 0.0;   // entanglement of formation, nats
  double ree = 0.0;   // relative entropy of entanglement, nats
  Method method = Method::procedure;
};

}  // namespace qree
