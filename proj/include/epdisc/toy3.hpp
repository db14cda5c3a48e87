#pragma once

// The three-level model H = [[3-λ, β, 0], [β, 2, β], [0, β, 1+λ]], its
// exceptional points and the Jordan chain at the defective point.

#include "epdisc/matrix.hpp"
#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"

#include <array>
#include <string>

namespace epdisc {

/// Element (a + b√2) + i (c + d√2) of Q(i, √2).
class QI2 {
 public:
  QI2() = default;
  QI2(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}
  explicit QI2(const Rational& r) : a_(r) {}
  explicit QI2(long r) : a_(r) {}

  static QI2 i() { return {Rational(0), Rational(0), Rational(1), Rational(0)}; }
  static QI2 sqrt2() { return {Rational(0), Rational(1), Rational(0), Rational(0)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  QI2 conj() const { return {a_, b_, -c_, -d_}; }
  QI2 inverse() const;
  BigComplex to_complex(Precision p) const;
  std::string to_string() const;

  QI2 operator-() const { return {-a_, -b_, -c_, -d_}; }
  QI2& operator+=(const QI2& o);
  QI2& operator-=(const QI2& o);
  friend QI2 operator+(QI2 x, const QI2& y) { return x += y; }
  friend QI2 operator-(QI2 x, const QI2& y) { return x -= y; }
  friend QI2 operator*(const QI2& x, const QI2& y);
  friend QI2 operator/(const QI2& x, const QI2& y) { return x * y.inverse(); }
  friend bool operator==(const QI2& x, const QI2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

 private:
  Rational a_, b_, c_, d_;
};

inline bool is_zero(const QI2& x) { return x.is_zero(); }
inline QI2 zero_like(const QI2&) { return QI2(); }
inline QI2 one_like(const QI2&) { return QI2(1L); }
inline QI2 lift(const Rational& r, const QI2&) { return QI2(r); }
inline QI2 exact_div(const QI2& a, const QI2& b) { return a / b; }
template <>
struct is_exact_ring<QI2> : std::true_type {};

Matrix<QI2> toy_matrix(const Rational& beta, const QI2& lambda);
Matrix<BigComplex> toy_matrix(const Rational& beta, const BigComplex& lambda);

/// det(H - E I) in (E, λ).
BiPoly<Rational> toy_charpoly(const Rational& beta);
/// Disc_E of toy_charpoly(beta).
UniPoly<Rational> toy_disc(const Rational& beta);

/// 1 ± i√2/10, the exceptional points for β = 1/10.
QI2 toy_ep_lambda(bool upper = true);

struct JordanChain {
  QI2 lambda;
  QI2 eigenvalue;
  std::size_t geometric_multiplicity = 0;
  /// v[k] is the chain vector v_{k+1}.
  std::array<std::array<QI2, 3>, 3> v;
  Matrix<QI2> U;
  Matrix<QI2> U_inv;
  /// U^{-1} H U
  Matrix<QI2> J;
};

/// Jordan chain at λ = 1 + i√2/10, β = 1/10, gauge-fixed so that v_1[1] = 1/√2,
/// v_2[2] = 0 and v_3[0] = 0.
JordanChain jordan_at_ep();

/// max |U^{-1} H U - J| with U rounded to precision p and inverted numerically.
BigReal jordan_residual(const JordanChain& chain, Precision p);

}  // namespace epdisc
