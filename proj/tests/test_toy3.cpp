#include "doctest.h"
#include "support.hpp"

#include "epdisc/charpoly.hpp"
#include "epdisc/discriminant.hpp"
#include "epdisc/toy3.hpp"

#include <algorithm>
#include <array>
#include <cmath>

using namespace epdisc;
using namespace testing_support;

namespace {

using Bi = BiPoly<Rational>;
using RPoly = UniPoly<Rational>;

Bi E() { return Bi::term(Rational(1), 1, 0); }
Bi L() { return Bi::term(Rational(1), 0, 1); }
Bi C(long n, long d = 1) { return Bi::constant(Rational(n, d)); }

QI2 q(long a, long b, long c, long d, long den = 1) {
  auto r = [&](long v) {
    Rational x(v, den);
    x.canonicalize();
    return x;
  };
  return {r(a), r(b), r(c), r(d)};
}

}  // namespace

namespace doctest {
template <>
struct StringMaker<QI2> {
  static String convert(const QI2& x) { return x.to_string().c_str(); }
};
}  // namespace doctest

TEST_CASE("field arithmetic in Q(i, sqrt2)") {
  const QI2 s = QI2::sqrt2();
  const QI2 i = QI2::i();
  CHECK(s * s == QI2(2L));
  CHECK(i * i == QI2(-1L));
  for (int t = 0; t < 50; ++t) {
    const QI2 x(rand_rational(), rand_rational(), rand_rational(), rand_rational());
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == QI2(1L));
    const QI2 y(rand_rational(), rand_rational(), rand_rational(), rand_rational());
    CHECK((x * y) / x == y);
  }
  CHECK(q(0, 1, 1, 0).to_string() == "1*sqrt2 + 1*i");
}

TEST_CASE("toy characteristic polynomial") {
  const Bi tenth = toy_charpoly(Rational(1, 10));
  CHECK(tenth == (C(2) - E()) * (C(50) * E() * E() - C(200) * E() - C(50) * L() * L() + C(100) * L() + C(149)) * C(1, 50));
  CHECK(toy_charpoly(Rational(0)) == (C(3) - L() - E()) * (C(2) - E()) * (C(1) + L() - E()));
  const RPoly x = RPoly::monomial(Rational(1), 1);
  CHECK(tenth.specialize(Rational(1)) ==
        (RPoly::constant(Rational(2)) - x) * (x * x - x.scaled(Rational(4)) + RPoly::constant(Rational(199, 50))));
}

TEST_CASE("toy discriminant") {
  const RPoly base({Rational(51), Rational(-100), Rational(50)});
  CHECK(toy_disc(Rational(1, 10)) == (base * base * base).scaled(Rational(1, 31250)));
  const RPoly one_minus({Rational(1), Rational(-1)});
  RPoly sixth = RPoly::constant(Rational(4));
  for (int k = 0; k < 6; ++k) sixth *= one_minus;
  CHECK(toy_disc(Rational(0)) == sixth);
}

TEST_CASE("Jordan chain at the exceptional point") {
  const JordanChain jc = jordan_at_ep();
  CHECK(jc.eigenvalue == QI2(2L));
  CHECK(jc.geometric_multiplicity == 1);
  // U columns (-i/2, 1/√2, i/2), (5√2, 5i, 0), (0, 50√2, 50i)
  CHECK(jc.v[0][0] == q(0, 0, -1, 0, 2));
  CHECK(jc.v[0][1] == q(0, 1, 0, 0, 2));
  CHECK(jc.v[0][2] == q(0, 0, 1, 0, 2));
  CHECK(jc.v[1][0] == q(0, 5, 0, 0));
  CHECK(jc.v[1][1] == q(0, 0, 5, 0));
  CHECK(jc.v[1][2] == QI2());
  CHECK(jc.v[2][0] == QI2());
  CHECK(jc.v[2][1] == q(0, 50, 0, 0));
  CHECK(jc.v[2][2] == q(0, 0, 50, 0));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const QI2 expected = i == j ? QI2(2L) : (j == i + 1 ? QI2(1L) : QI2());
      CHECK(jc.J(i, j) == expected);
    }
  }
  for (const Precision p : {Precision{128}, Precision{256}, Precision{512}}) {
    CHECK(jordan_residual(jc, p).log2_abs() < -static_cast<double>(p.bits) / 2);
  }
}

TEST_CASE("exceptional points of the toy model") {
  const QI2 up = toy_ep_lambda(true);
  CHECK(up.conj() == toy_ep_lambda(false));
  const RPoly base({Rational(51), Rational(-100), Rational(50)});
  // 50λ² - 100λ + 51 at 1 + i√2/10
  const QI2 val = QI2(Rational(50)) * up * up - QI2(Rational(100)) * up + QI2(Rational(51));
  CHECK(val.is_zero());
}

TEST_CASE("toy eigenvalues do not cross on the real axis") {
  // Closed-form eigenvalues of the real symmetric matrix, independent of the library.
  auto eig = [](double l) {
    const double b = 0.1;
    const double a[3][3] = {{3 - l, b, 0}, {b, 2, b}, {0, b, 1 + l}};
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3;
    double p2 = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) p2 += (a[i][j] - (i == j ? q : 0)) * (a[i][j] - (i == j ? q : 0));
    }
    const double p = std::sqrt(p2 / 6);
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] = (a[i][j] - (i == j ? q : 0)) / p;
    }
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    const double phi = std::acos(std::clamp(det / 2, -1.0, 1.0)) / 3;
    const double pi = std::acos(-1.0);
    std::array<double, 3> e{q + 2 * p * std::cos(phi), q + 2 * p * std::cos(phi + 2 * pi / 3),
                            q + 2 * p * std::cos(phi + 4 * pi / 3)};
    std::sort(e.begin(), e.end());
    return e;
  };
  double min_gap = 1e300;
  for (int s = 0; s <= 1000; ++s) {
    const auto e = eig(2.0 * s / 1000);
    min_gap = std::min({min_gap, e[1] - e[0], e[2] - e[1]});
  }
  CHECK(min_gap > 0.05);
  // The closest approach is at λ = 1 where the gap is √2/10.
  CHECK(min_gap == doctest::Approx(std::sqrt(2.0) / 10).epsilon(1e-9));
}
