#pragma once

#include <cmath>
#include <string>

#include "relspin/error.hpp"
#include "relspin/kinematics.hpp"
#include "relspin/linalg.hpp"

// Direction-dependent spin observables: the Pauli family n.sigma and the
// boost-dependent Czachor family built from the parallel/perpendicular
// split of the measurement direction relative to the boost axis.

namespace relspin {

/// Unit 3-vector. Inputs are normalized on construction; the zero vector is
/// rejected.
class Direction {
 public:
  Direction(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      throw Error("Direction: non-finite component");
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n == 0.0) throw ZeroDirection("Direction: zero vector cannot be normalized");
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
  }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  static Direction unit_x() { return Direction(1.0, 0.0, 0.0); }
  static Direction unit_y() { return Direction(0.0, 1.0, 0.0); }
  static Direction unit_z() { return Direction(0.0, 0.0, 1.0); }

 private:
  double x_, y_, z_;
};

inline double dot(const Direction& u, const Direction& v) {
  return u.x() * v.x() + u.y() * v.y() + u.z() * v.z();
}

namespace detail {
// v . sigma for a real (not necessarily unit) 3-vector.
inline Mat2 direction_matrix(double vx, double vy, double vz) {
  return Mat2{cplx(vz, 0), cplx(vx, -vy), cplx(vx, vy), cplx(-vz, 0)};
}
}  // namespace detail

/// A . sigma along the unit vector A. Hermitian, traceless, eigenvalues +-1.
inline Mat2 pauli_along(const Direction& a) {
  return detail::direction_matrix(a.x(), a.y(), a.z());
}

/// Spin observable (hbar/2) A . sigma in units hbar = 1.
inline Mat2 spin_along(const Direction& a) { return cplx(0.5, 0.0) * pauli_along(a); }

namespace detail {

// Parallel/perpendicular split of A relative to the boost axis e, plus the
// numerator vector and normalizer of the Czachor observable. The three
// reduction cases (beta = 0, A_par = 0, A_perp = 0) collapse to the plain
// Pauli observable exactly, so they are detected rather than recomputed.
struct CzachorDecomposition {
  double vx = 0.0, vy = 0.0, vz = 0.0;
  double numerator_len = 1.0;
  double normalizer = 1.0;
  bool reduces_to_pauli = false;
};

inline CzachorDecomposition czachor_decompose(const Direction& a, const BoostParameters& boost,
                                              const Direction& e) {
  CzachorDecomposition d;
  const double beta = boost.beta();
  const double ea = dot(e, a);
  const double perp_sq = std::max(0.0, 1.0 - ea * ea);
  if (beta == 0.0 || ea == 0.0 || perp_sq == 0.0) {
    d.reduces_to_pauli = true;
    d.vx = a.x();
    d.vy = a.y();
    d.vz = a.z();
    return d;
  }
  const double contraction = reciprocal_gamma(beta);
  const double par_x = ea * e.x(), par_y = ea * e.y(), par_z = ea * e.z();
  d.vx = contraction * (a.x() - par_x) + par_x;
  d.vy = contraction * (a.y() - par_y) + par_y;
  d.vz = contraction * (a.z() - par_z) + par_z;
  d.numerator_len = std::sqrt(contraction * contraction * perp_sq + ea * ea);
  d.normalizer = std::sqrt(1.0 + beta * beta * (ea * ea - 1.0));
  if (!std::isfinite(d.normalizer) || d.normalizer <= 0.0)
    throw InternalConsistencyError("czachor_decompose: degenerate normalizer");
  return d;
}

}  // namespace detail

/// Czachor observable along A for a frame boosted with speed beta along e:
///
///   [ sqrt(1-beta^2) A_perp + A_par ] . sigma
///   -----------------------------------------
///      sqrt(1 + beta^2 ((e.A)^2 - 1))
///
/// with A_par = (e.A) e. Equals pauli_along(A) exactly when beta = 0, when
/// A_par = 0, or when A_perp = 0.
inline Mat2 czachor_along(const Direction& a, const BoostParameters& boost, const Direction& e) {
  const auto d = detail::czachor_decompose(a, boost, e);
  if (d.reduces_to_pauli) return pauli_along(a);
  return detail::direction_matrix(d.vx / d.normalizer, d.vy / d.normalizer, d.vz / d.normalizer);
}

/// Selects between the two observable families. The Czachor variant carries
/// the boost it was evaluated in and the boost axis e.
class OperatorFamily {
 public:
  enum class Kind { pauli, czachor };

  static OperatorFamily pauli() { return OperatorFamily(Kind::pauli, BoostParameters(0.0), Direction::unit_x()); }

  static OperatorFamily czachor(const BoostParameters& boost, const Direction& axis = Direction::unit_x()) {
    return OperatorFamily(Kind::czachor, boost, axis);
  }

  Kind kind() const { return kind_; }
  const BoostParameters& boost() const { return boost_; }
  const Direction& axis() const { return axis_; }
  double beta() const { return kind_ == Kind::czachor ? boost_.beta() : 0.0; }

  /// The family's observable along A (without the hbar/2 factor).
  Mat2 along(const Direction& a) const {
    return kind_ == Kind::pauli ? pauli_along(a) : czachor_along(a, boost_, axis_);
  }

  std::string name() const { return kind_ == Kind::pauli ? "pauli" : "czachor"; }

 private:
  OperatorFamily(Kind kind, const BoostParameters& boost, const Direction& axis)
      : kind_(kind), boost_(boost), axis_(axis) {}

  Kind kind_;
  BoostParameters boost_;
  Direction axis_;
};

/// Numeric spectrum of the Czachor observable next to the analytic ratio
/// |v|/n of its numerator length to its normalizer. The ratio is identically
/// 1 for unit A, so the eigenvalues land on +-1; both are reported so the
/// claim can be audited rather than assumed.
struct CzachorSpectrum {
  double upper = 0.0;
  double lower = 0.0;
  double analytic_ratio = 0.0;
};

inline CzachorSpectrum czachor_eigenvalues(const Direction& a, const BoostParameters& boost,
                                           const Direction& e) {
  const auto [upper, lower] = eigenvalues2(czachor_along(a, boost, e));
  const auto d = detail::czachor_decompose(a, boost, e);
  return CzachorSpectrum{upper, lower, d.numerator_len / d.normalizer};
}

}  // namespace relspin
