#pragma once

#include <array>
#include <cmath>

#include "relspin/error.hpp"
#include "relspin/tolerance.hpp"

// Rapidities and the Wigner rotation angle for the fixed geometry used
// throughout: observer boost along x, particle momentum along +-z (boost
// perpendicular to momentum).

namespace relspin {

/// Frame-change knob: boost speed beta (units of c) and its rapidity alpha,
/// with cosh(alpha) = 1/sqrt(1 - beta^2).
class BoostParameters {
 public:
  explicit BoostParameters(double beta) {
    if (!(beta >= 0.0) || beta >= 1.0)  // also rejects NaN
      throw SpeedOutOfRange("boost speed must satisfy 0 <= beta < 1");
    beta_ = beta;
    alpha_ = std::atanh(beta);
  }

  double beta() const { return beta_; }
  double alpha() const { return alpha_; }

 private:
  double beta_;
  double alpha_;
};

/// Energy knob: the particle's lab-frame Lorentz factor gamma = p0/m, its
/// lab speed beta1 and rapidity delta, with cosh(delta) = gamma.
class ParticleKinematics {
 public:
  double gamma() const { return gamma_; }
  double beta1() const { return beta1_; }
  double delta() const { return delta_; }

  friend ParticleKinematics particle_from_gamma(double gamma);
  friend ParticleKinematics particle_from_speed(double beta1);
  friend ParticleKinematics particle_from_rapidity(double delta);

 private:
  ParticleKinematics(double gamma, double beta1, double delta)
      : gamma_(gamma), beta1_(beta1), delta_(delta) {}

  double gamma_;
  double beta1_;
  double delta_;
};

struct WignerAngle {
  double omega = 0.0;  // radians, in [0, pi/2) for this geometry
};

inline BoostParameters boost_from_speed(double beta) { return BoostParameters(beta); }

/// sqrt(1 - beta^2), factored as (1-beta)(1+beta) to stay accurate as
/// beta -> 1. Shared by the Czachor observable and its closed-form curves.
inline double reciprocal_gamma(double beta) {
  return std::sqrt((1.0 - beta) * (1.0 + beta));
}

inline BoostParameters boost_from_rapidity(double alpha) {
  if (!(alpha >= 0.0)) throw SpeedOutOfRange("boost rapidity must be >= 0");
  return BoostParameters(std::tanh(alpha));
}

inline ParticleKinematics particle_from_gamma(double gamma) {
  if (!(gamma >= 1.0)) throw EnergyOutOfRange("energy factor must satisfy gamma >= 1");
  // beta1 = sqrt((gamma-1)(gamma+1))/gamma avoids cancellation in 1 - 1/gamma^2.
  const double beta1 = std::sqrt((gamma - 1.0) * (gamma + 1.0)) / gamma;
  return ParticleKinematics(gamma, beta1, std::acosh(gamma));
}

inline ParticleKinematics particle_from_speed(double beta1) {
  if (!(beta1 >= 0.0) || beta1 >= 1.0)
    throw EnergyOutOfRange("particle speed must satisfy 0 <= beta1 < 1");
  const double gamma = 1.0 / std::sqrt((1.0 - beta1) * (1.0 + beta1));
  return ParticleKinematics(gamma, beta1, std::atanh(beta1));
}

inline ParticleKinematics particle_from_rapidity(double delta) {
  if (!(delta >= 0.0)) throw EnergyOutOfRange("particle rapidity must be >= 0");
  return ParticleKinematics(std::cosh(delta), std::tanh(delta), delta);
}

/// Wigner angle for a boost along x acting on a particle moving along +z:
/// tan(Omega) = sinh(alpha) sinh(delta) / (cosh(alpha) + cosh(delta)).
inline WignerAngle wigner_angle(const BoostParameters& boost, const ParticleKinematics& particle) {
  const double num = std::sinh(boost.alpha()) * std::sinh(particle.delta());
  const double den = std::cosh(boost.alpha()) + std::cosh(particle.delta());
  return WignerAngle{std::atan2(num, den)};
}

/// High-energy-particle limit of sin(Omega/2) as beta -> 1:
/// sqrt((gamma - 1) / (2 gamma)).
inline double asymptotic_half_angle(const ParticleKinematics& particle) {
  return std::sqrt((particle.gamma() - 1.0) / (2.0 * particle.gamma()));
}

namespace detail {

// Row-major 4x4 real matrix acting on (t, x, y, z).
using Lorentz4 = std::array<std::array<double, 4>, 4>;

inline Lorentz4 lorentz_identity() {
  Lorentz4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Lorentz4 lorentz_boost_x(double rapidity) {
  Lorentz4 m = lorentz_identity();
  m[0][0] = m[1][1] = std::cosh(rapidity);
  m[0][1] = m[1][0] = std::sinh(rapidity);
  return m;
}

inline Lorentz4 lorentz_boost_z(double rapidity) {
  Lorentz4 m = lorentz_identity();
  m[0][0] = m[3][3] = std::cosh(rapidity);
  m[0][3] = m[3][0] = std::sinh(rapidity);
  return m;
}

inline Lorentz4 lorentz_mul(const Lorentz4& x, const Lorentz4& y) {
  Lorentz4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += x[r][k] * y[k][c];
      out[r][c] = s;
    }
  return out;
}

// Canonical pure boost with four-velocity u = (gamma, gamma*v); sign = -1
// gives its inverse.
inline Lorentz4 standard_boost(const std::array<double, 4>& u, double sign) {
  const double gamma = u[0];
  const std::array<double, 3> gv{sign * u[1], sign * u[2], sign * u[3]};
  const double n = std::sqrt(gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2]);
  Lorentz4 m = lorentz_identity();
  m[0][0] = gamma;
  if (n == 0.0) return m;
  const std::array<double, 3> vhat{gv[0] / n, gv[1] / n, gv[2] / n};
  for (int i = 0; i < 3; ++i) {
    m[0][i + 1] = m[i + 1][0] = gv[i];
    for (int j = 0; j < 3; ++j) m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * vhat[i] * vhat[j];
  }
  return m;
}

/// Extracts the rotation angle about +y from a residual Lorentz matrix that
/// should be a pure spatial rotation in the x-z plane. Throws
/// DecompositionFailure when any other entry deviates from the identity.
inline double rotation_angle_about_y(const Lorentz4& r, double check_tol) {
  const double c = r[1][1];
  const double s = r[1][3];
  const Lorentz4 expected{{{1, 0, 0, 0}, {0, c, 0, s}, {0, 0, 1, 0}, {0, -s, 0, c}}};
  double worst = std::abs(c * c + s * s - 1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(r[i][j] - expected[i][j]));
  if (!(worst <= check_tol))
    throw DecompositionFailure("residual Lorentz matrix is not a rotation about y");
  double angle = std::atan2(s, c);
  if (angle < 0.0 && angle > -check_tol) angle = 0.0;  // roundoff at Omega = 0
  return angle;
}

}  // namespace detail

/// Independent route to the Wigner angle: compose the 4x4 boost matrices
/// Lambda_x(alpha) * Lambda_z(delta), peel off the canonical boost of the
/// composed four-velocity, and read the rotation angle about y off the
/// residual.
inline WignerAngle wigner_angle_oracle(const BoostParameters& boost,
                                       const ParticleKinematics& particle) {
  const detail::Lorentz4 composed =
      detail::lorentz_mul(detail::lorentz_boost_x(boost.alpha()),
                          detail::lorentz_boost_z(particle.delta()));
  const std::array<double, 4> u{composed[0][0], composed[1][0], composed[2][0], composed[3][0]};
  const detail::Lorentz4 residual =
      detail::lorentz_mul(detail::standard_boost(u, -1.0), composed);
  // Residual entries carry roundoff ~ gamma_total^2 * eps, so the check
  // tolerance scales with the composed Lorentz factor; a genuine setup bug
  // (wrong rotation plane, leftover boost) deviates at O(1).
  const double check_tol = std::max(1e-8, 1e-13 * u[0] * u[0]);
  return WignerAngle{detail::rotation_angle_about_y(residual, check_tol)};
}

}  // namespace relspin
