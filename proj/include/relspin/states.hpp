#pragma once

#include <cmath>

#include "relspin/error.hpp"
#include "relspin/kinematics.hpp"
#include "relspin/linalg.hpp"

// Spin states and their behavior under a boost along x. Single particles
// move along +z; pairs move apart along +-z with equal momentum magnitude,
// so the two constituents pick up Wigner rotations of opposite sign.

namespace relspin {

namespace detail {
template <std::size_t N>
inline void require_normalized(const Vec<N>& v, const char* what) {
  // The negated form also rejects NaN amplitudes smuggled in by mutation.
  if (!(std::abs(v.squared_norm() - 1.0) <= algebraic_tolerance()))
    throw Error(std::string(what) + ": state is not normalized");
}
}  // namespace detail

/// One spin-1/2 state in the (+, -) z-basis.
class SpinState {
 public:
  explicit SpinState(const Vec2& amplitudes) : amplitudes_(amplitudes) {
    detail::require_normalized(amplitudes_, "SpinState");
  }

  static SpinState up() { return SpinState(Vec2{cplx(1, 0), cplx(0, 0)}); }
  static SpinState down() { return SpinState(Vec2{cplx(0, 0), cplx(1, 0)}); }

  const Vec2& amplitudes() const { return amplitudes_; }

 private:
  Vec2 amplitudes_;
};

/// Momentum bookkeeping for a pair. Only one configuration exists in this
/// library (first particle +z, second -z); it rides along as inert metadata
/// because the observables act on the spin factor alone.
enum class PairMomenta { opposite_along_z };

/// Two spin-1/2 states in the product basis (++, +-, -+, --).
class PairState {
 public:
  explicit PairState(const Vec4& amplitudes, PairMomenta momenta = PairMomenta::opposite_along_z)
      : amplitudes_(amplitudes), momenta_(momenta) {
    detail::require_normalized(amplitudes_, "PairState");
  }

  const Vec4& amplitudes() const { return amplitudes_; }
  PairMomenta momenta() const { return momenta_; }

 private:
  Vec4 amplitudes_;
  PairMomenta momenta_;
};

enum class BellStateKind { phi_plus, psi_plus, psi_minus, phi_minus };

inline PairState bell_state(BellStateKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellStateKind::phi_plus:
      return PairState(Vec4{cplx(r, 0), cplx(0, 0), cplx(0, 0), cplx(r, 0)});
    case BellStateKind::psi_plus:
      return PairState(Vec4{cplx(0, 0), cplx(r, 0), cplx(r, 0), cplx(0, 0)});
    case BellStateKind::psi_minus:
      return PairState(Vec4{cplx(0, 0), cplx(r, 0), cplx(-r, 0), cplx(0, 0)});
    case BellStateKind::phi_minus:
      return PairState(Vec4{cplx(r, 0), cplx(0, 0), cplx(0, 0), cplx(-r, 0)});
  }
  throw Error("bell_state: unknown kind");
}

/// Spin-1/2 Wigner rotation D(Omega) = cos(Omega/2) I - i sin(Omega/2) sigma_y.
/// Real orthogonal: |+> -> cos(Omega/2)|+> + sin(Omega/2)|->.
inline Mat2 wigner_rotation(const WignerAngle& angle) {
  const double c = std::cos(0.5 * angle.omega);
  const double s = std::sin(0.5 * angle.omega);
  return Mat2{cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
}

/// Lab state of a particle moving along +z, seen from a frame boosted along x.
inline SpinState boost_single(const SpinState& state, const BoostParameters& boost,
                              const ParticleKinematics& particle) {
  const Mat2 rotation = wigner_rotation(wigner_angle(boost, particle));
  return SpinState(rotation * state.amplitudes());
}

/// Pair transform D(+Omega) (x) D(-Omega): the particle moving along +z
/// rotates by +Omega, its partner moving along -z by -Omega.
inline PairState boost_pair(const PairState& state, const BoostParameters& boost,
                            const ParticleKinematics& particle) {
  const WignerAngle omega = wigner_angle(boost, particle);
  const Mat4 transform =
      kron(wigner_rotation(omega), wigner_rotation(WignerAngle{-omega.omega}));
  return PairState(transform * state.amplitudes(), state.momenta());
}

/// |<s1|s2>|^2, phase-insensitive overlap in [0, 1].
inline double fidelity(const PairState& s1, const PairState& s2) {
  return std::norm(inner(s1.amplitudes(), s2.amplitudes()));
}

}  // namespace relspin
