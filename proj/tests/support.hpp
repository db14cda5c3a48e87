#pragma once

#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"

#include <random>
#include <vector>

namespace testing_support {

using namespace epdisc;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }
inline double rand_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Rational rand_rational() {
  Rational q(rand_int(-50, 50), rand_int(1, 20));
  q.canonicalize();
  return q;
}

inline UniPoly<Rational> rand_unipoly(std::size_t deg) {
  std::vector<Rational> c;
  for (std::size_t k = 0; k <= deg; ++k) c.push_back(rand_rational());
  if (is_zero(c.back())) c.back() = 1;
  return UniPoly<Rational>(std::move(c));
}

inline BiPoly<Rational> rand_bipoly(std::size_t de, std::size_t dl) {
  BiPoly<Rational> p;
  for (std::size_t j = 0; j <= de; ++j) {
    for (std::size_t k = 0; k <= dl; ++k) p += BiPoly<Rational>::term(rand_rational(), j, k);
  }
  return p;
}

inline BigComplex rand_complex(Precision p, double r = 2.0) {
  return BigComplex(rand_real(-r, r), rand_real(-r, r), p);
}

// |a - b| <= rel * max(|b|, floor)
inline bool close(const BigComplex& a, const BigComplex& b, double rel, double floor = 1e-300) {
  const double scale = std::max(abs(b).to_double(), floor);
  return abs(a - b).to_double() <= rel * scale;
}

}  // namespace testing_support
