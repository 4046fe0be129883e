#pragma once

#include <cstdint>
#include <vector>

#include "qcayley/scaled_complex.hpp"

namespace qcayley {

inline constexpr std::int64_t kDefaultKMax = 256;

/// A point t = q^k of the quantum lattice {1, q, q^2, ...}. The index is the
/// canonical coordinate; t is derived from it.
struct LatticePoint {
  std::int64_t k = 0;
  ScaledReal t;
};

/// The finite prefix k = 0..k_max of the lattice for a fixed q > 1.
class LatticeWindow {
 public:
  /// Throws ParameterError unless q > 1 (finite) and k_max >= 0.
  LatticeWindow(double q, std::int64_t k_max = kDefaultKMax);

  double q() const noexcept { return q_; }
  std::int64_t k_max() const noexcept { return k_max_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(k_max_) + 1; }

  friend bool operator==(const LatticeWindow&, const LatticeWindow&) = default;

 private:
  double q_;
  std::int64_t k_max_;
};

/// q^k by binary powering in extended-exponent arithmetic.
ScaledReal lattice_value(double q, std::int64_t k);

/// Throws ParameterError for q <= 1 or k < 0.
LatticePoint point(double q, std::int64_t k);

/// All points of the window in increasing order.
std::vector<LatticePoint> iterate(const LatticeWindow& window);

}  // namespace qcayley
