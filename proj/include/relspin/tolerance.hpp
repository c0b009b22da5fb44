#pragma once

#include <atomic>

namespace relspin {

// Absolute tolerance used by all algebraic identity checks (Hermiticity,
// unitarity, normalization, imaginary residues). Every quantity in this
// library is O(1) and closed-form, so one global knob is enough.
inline std::atomic<double>& tolerance_storage() {
  static std::atomic<double> tol{1e-12};
  return tol;
}

inline double algebraic_tolerance() {
  return tolerance_storage().load(std::memory_order_relaxed);
}

inline void set_algebraic_tolerance(double tol) {
  tolerance_storage().store(tol, std::memory_order_relaxed);
}

}  // namespace relspin
