#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>

#include "relspin/error.hpp"
#include "relspin/tolerance.hpp"

// Exact-size complex vector/matrix kernel. Only the two sizes the physics
// needs exist (2 for one spin, 4 for a pair); everything is a value type
// and every operation is a pure function.

namespace relspin {

using cplx = std::complex<double>;

inline bool finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {
inline void require_finite(cplx z, const char* what) {
  if (!finite(z)) throw Error(std::string(what) + ": non-finite component");
}
}  // namespace detail

template <std::size_t N>
struct Vec {
  std::array<cplx, N> a{};

  Vec() = default;
  Vec(std::initializer_list<cplx> init) {
    std::size_t i = 0;
    for (cplx z : init) {
      detail::require_finite(z, "Vec");
      if (i >= N) throw Error("Vec: too many initializers");
      a[i++] = z;
    }
    if (i != N) throw Error("Vec: too few initializers");
  }

  cplx& operator[](std::size_t i) { return a[i]; }
  const cplx& operator[](std::size_t i) const { return a[i]; }

  double squared_norm() const {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return s;
  }
};

template <std::size_t N>
struct Mat {
  // Row-major entries.
  std::array<cplx, N * N> m{};

  Mat() = default;
  Mat(std::initializer_list<cplx> init) {
    std::size_t i = 0;
    for (cplx z : init) {
      detail::require_finite(z, "Mat");
      if (i >= N * N) throw Error("Mat: too many initializers");
      m[i++] = z;
    }
    if (i != N * N) throw Error("Mat: too few initializers");
  }

  cplx& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }

  static Mat identity() {
    Mat out;
    for (std::size_t i = 0; i < N; ++i) out(i, i) = cplx(1.0, 0.0);
    return out;
  }

  Mat adjoint() const {
    Mat out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }
};

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;
using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <std::size_t N>
inline Vec<N> operator+(const Vec<N>& x, const Vec<N>& y) {
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + y[i];
  return out;
}

template <std::size_t N>
inline Vec<N> operator-(const Vec<N>& x, const Vec<N>& y) {
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] - y[i];
  return out;
}

template <std::size_t N>
inline Vec<N> operator*(cplx s, const Vec<N>& x) {
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = s * x[i];
  return out;
}

template <std::size_t N>
inline Mat<N> operator+(const Mat<N>& x, const Mat<N>& y) {
  Mat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = x.m[i] + y.m[i];
  return out;
}

template <std::size_t N>
inline Mat<N> operator-(const Mat<N>& x, const Mat<N>& y) {
  Mat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = x.m[i] - y.m[i];
  return out;
}

template <std::size_t N>
inline Mat<N> operator*(cplx s, const Mat<N>& x) {
  Mat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = s * x.m[i];
  return out;
}

template <std::size_t N>
inline Mat<N> operator*(const Mat<N>& x, const Mat<N>& y) {
  Mat<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += x(r, k) * y(k, c);
      out(r, c) = s;
    }
  return out;
}

template <std::size_t N>
inline Vec<N> operator*(const Mat<N>& x, const Vec<N>& v) {
  Vec<N> out;
  for (std::size_t r = 0; r < N; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < N; ++c) s += x(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

/// ⟨x|y⟩ with the left argument conjugated.
template <std::size_t N>
inline cplx inner(const Vec<N>& x, const Vec<N>& y) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

template <std::size_t N>
inline double max_abs_diff(const Mat<N>& x, const Mat<N>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) worst = std::max(worst, std::abs(x.m[i] - y.m[i]));
  return worst;
}

template <std::size_t N>
inline bool is_hermitian(const Mat<N>& x, double tol = algebraic_tolerance()) {
  return max_abs_diff(x, x.adjoint()) <= tol;
}

template <std::size_t N>
inline bool is_unitary(const Mat<N>& x, double tol = algebraic_tolerance()) {
  return max_abs_diff(x.adjoint() * x, Mat<N>::identity()) <= tol;
}

/// Tensor product in the fixed pair basis (++, +-, -+, --): the first factor
/// owns the slow (leftmost) index.
inline Mat4 kron(const Mat2& x, const Mat2& y) {
  Mat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return out;
}

/// ⟨state|obs|state⟩ for a Hermitian observable. The imaginary part is
/// checked against the global tolerance before being discarded.
template <std::size_t N>
inline double expectation(const Vec<N>& state, const Mat<N>& obs) {
  if (!is_hermitian(obs)) throw NonHermitianObservable("expectation: observable is not Hermitian");
  const cplx value = inner(state, obs * state);
  if (std::abs(value.imag()) >= algebraic_tolerance())
    throw InternalConsistencyError("expectation: imaginary residue above tolerance");
  return value.real();
}

/// Closed-form eigenvalues of a 2x2 Hermitian matrix, sorted descending.
inline std::pair<double, double> eigenvalues2(const Mat2& obs) {
  if (!is_hermitian(obs)) throw NonHermitianObservable("eigenvalues2: matrix is not Hermitian");
  const double mean = 0.5 * (obs(0, 0).real() + obs(1, 1).real());
  const double half_gap = 0.5 * (obs(0, 0).real() - obs(1, 1).real());
  const double radius = std::hypot(half_gap, std::abs(obs(0, 1)));
  return {mean + radius, mean - radius};
}

// Pauli matrices in the spin-z basis.
inline const Mat2 sigma_x{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
inline const Mat2 sigma_y{cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)};
inline const Mat2 sigma_z{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)};

}  // namespace relspin
