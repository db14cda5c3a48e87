#include "epdisc/newton_polygon.hpp"

#include <cmath>
#include <stdexcept>

namespace epdisc {

std::vector<RootRadius> newton_polygon_radii(const std::vector<double>& log2_mag) {
  if (log2_mag.size() < 2 || !std::isfinite(log2_mag.front()) || !std::isfinite(log2_mag.back())) {
    throw std::invalid_argument("newton_polygon_radii: end coefficients must be nonzero");
  }
  // Monotone-chain upper hull over the finite points.
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < log2_mag.size(); ++k) {
    if (!std::isfinite(log2_mag[k])) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (static_cast<double>(b) - a) * (log2_mag[k] - log2_mag[a]) -
                           (log2_mag[b] - log2_mag[a]) * (static_cast<double>(k) - a);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<RootRadius> out;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const std::size_t a = hull[i];
    const std::size_t b = hull[i + 1];
    out.push_back({b - a, (log2_mag[a] - log2_mag[b]) / static_cast<double>(b - a)});
  }
  return out;
}

}  // namespace epdisc
