#pragma once

#include <cstddef>
#include <vector>

namespace epdisc {

/// One edge of the upper convex hull of the points (k, log2|c_k|): `count`
/// roots are expected near modulus 2^log2_radius.
struct RootRadius {
  std::size_t count = 0;
  double log2_radius = 0.0;
};

/// Root-modulus estimates of Σ c_k x^k from log2|c_k| (-inf for zeros).
/// The leading and trailing entries must be finite.
std::vector<RootRadius> newton_polygon_radii(const std::vector<double>& log2_mag);

}  // namespace epdisc
