#include "epdisc/polynomial.hpp"

namespace epdisc {

Integer common_denominator(const BiPoly<Rational>& p) {
  Integer d = 1;
  for (const auto& row : p.in_e().coeffs()) {
    for (const auto& c : row.coeffs()) {
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  return d;
}

BiPoly<Integer> scaled_to_integer(const BiPoly<Rational>& p, const Integer& d) {
  return p.map<Integer>([&](const Rational& c) {
    Rational s = c * d;
    if (s.get_den() != 1) throw Error("scaled_to_integer: denominator does not clear");
    return Integer(s.get_num());
  });
}

}  // namespace epdisc
