#pragma once
// Small dense complex matrices/vectors with compile-time dimension.
// Row-major storage; dimensions here never exceed 8, so everything is
// stack-allocated and loops are left to the optimizer.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qree {

using cx = std::complex<double>;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Input fails a structural requirement (hermiticity, trace, normalization, ...).
struct validation_error : error {
  using error::error;
};
// Input is structurally fine but outside the mathematical domain of the operation.
struct domain_error : error {
  using error::error;
};
// State is separable where an entangled one is required.
struct separable_error : error {
  using error::error;
};
// A solver's precondition holds but no solution exists in range.
struct infeasible_error : error {
  using error::error;
};

template <std::size_t N>
using Vec = std::array<cx, N>;

template <std::size_t N>
struct Mat {
  std::array<cx, N * N> e{};

  cx& operator()(std::size_t i, std::size_t j) { return e[i * N + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return e[i * N + j]; }

  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat zero() { return Mat{}; }

  Mat& operator+=(const Mat& o) {
    for (std::size_t k = 0; k < N * N; ++k) e[k] += o.e[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t k = 0; k < N * N; ++k) e[k] -= o.e[k];
    return *this;
  }
  Mat& operator*=(cx s) {
    for (std::size_t k = 0; k < N * N; ++k) e[k] *= s;
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, cx s) { return a *= s; }
  friend Mat operator*(cx s, Mat a) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat c;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cx aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec<N> operator*(const Mat& a, const Vec<N>& x) {
    Vec<N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      cx s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;
using Mat8 = Mat<8>;
using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

template <std::size_t N>
inline Mat<N> dagger(const Mat<N>& a) {
  Mat<N> d;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d(i, j) = std::conj(a(j, i));
  return d;
}

template <std::size_t N>
inline cx trace(const Mat<N>& a) {
  cx t = 0.0;
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

template <std::size_t N>
inline Mat<N> transpose(const Mat<N>& a) {
  Mat<N> t;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t(i, j) = a(j, i);
  return t;
}

template <std::size_t N>
inline Mat<N> conj(const Mat<N>& a) {
  Mat<N> c;
  for (std::size_t k = 0; k < N * N; ++k) c.e[k] = std::conj(a.e[k]);
  return c;
}

template <std::size_t N>
inline double frobenius_norm(const Mat<N>& a) {
  double s = 0.0;
  for (const cx& v : a.e) s += std::norm(v);
  return std::sqrt(s);
}

template <std::size_t N>
inline double max_abs_entry(const Mat<N>& a) {
  double m = 0.0;
  for (const cx& v : a.e) m = std::max(m, std::abs(v));
  return m;
}

template <std::size_t N>
inline cx inner(const Vec<N>& a, const Vec<N>& b) {
  cx s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
inline double norm(const Vec<N>& a) {
  double s = 0.0;
  for (const cx& v : a) s += std::norm(v);
  return std::sqrt(s);
}

template <std::size_t N>
inline Vec<N> scaled(Vec<N> a, cx s) {
  for (cx& v : a) v *= s;
  return a;
}

// |a><b|
template <std::size_t N>
inline Mat<N> outer(const Vec<N>& a, const Vec<N>& b) {
  Mat<N> m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

template <std::size_t N>
inline Mat<N> projector(const Vec<N>& a) {
  return outer(a, a);
}

inline Vec4 kron(const Vec2& a, const Vec2& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qree
