#include "qcayley/lattice.hpp"

#include <cmath>

#include "qcayley/errors.hpp"

namespace qcayley {
namespace {

void check_q(double q) {
  if (!std::isfinite(q) || !(q > 1.0)) throw ParameterError("lattice requires q > 1");
}

}  // namespace

LatticeWindow::LatticeWindow(double q, std::int64_t k_max) : q_(q), k_max_(k_max) {
  check_q(q);
  if (k_max < 0) throw ParameterError("lattice window requires k_max >= 0");
}

ScaledReal lattice_value(double q, std::int64_t k) {
  check_q(q);
  if (k < 0) throw ParameterError("lattice index must be non-negative");
  ScaledReal result = ScaledReal::from_double(1.0);
  ScaledReal base = ScaledReal::from_double(q);
  for (std::int64_t n = k; n > 0; n >>= 1) {
    if (n & 1) result *= base;
    if (n > 1) base *= base;
  }
  return result;
}

LatticePoint point(double q, std::int64_t k) {
  return {k, lattice_value(q, k)};
}

std::vector<LatticePoint> iterate(const LatticeWindow& window) {
  std::vector<LatticePoint> points;
  points.reserve(window.size());
  for (std::int64_t k = 0; k <= window.k_max(); ++k) points.push_back(point(window.q(), k));
  return points;
}

}  // namespace qcayley
