#pragma once

// Coefficient rings: exact integers and rationals (GMP) and
// arbitrary-precision real/complex floats (MPFR).

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace epdisc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Bit precision of a floating value.
struct Precision {
  mpfr_prec_t bits = 256;
  constexpr bool operator==(const Precision&) const = default;
  constexpr Precision doubled() const { return Precision{bits * 2}; }
};

inline constexpr Precision kDefaultPrecision{256};
/// Enough bits to hold any `long` exactly.
inline constexpr Precision kIntPrecision{64};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision real number. Binary operations return a value at the
/// larger of the two operand precisions.
class BigReal {
 public:
  BigReal() : BigReal(0L, kIntPrecision) {}
  BigReal(long v, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  BigReal(double v, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  BigReal(const Integer& z, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigReal(const Rational& q, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  /// Same value rounded to precision `p`.
  BigReal(const BigReal& x, Precision p) {
    mpfr_init2(v_, p.bits);
    mpfr_set(v_, x.v_, MPFR_RNDN);
  }
  static BigReal zero(Precision p) { return BigReal(0L, p); }
  static BigReal pi(Precision p) {
    BigReal r = zero(p);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// Parses a decimal (or "inf"/"nan") string; throws on malformed input.
  static BigReal from_string(std::string_view s, Precision p);

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  BigReal& operator=(const BigReal& o) {
    if (this == &o) return *this;
    if (!live()) {
      mpfr_init2(v_, mpfr_get_prec(o.v_));
    } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    }
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~BigReal() {
    if (live()) mpfr_clear(v_);
  }

  Precision precision() const { return Precision{mpfr_get_prec(v_)}; }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// log2|x| as a double without overflow; -inf for zero.
  double log2_abs() const;
  /// Shortest decimal string that reads back to the same value at this
  /// precision.
  std::string to_string() const;
  /// Decimal string with `digits` significant digits.
  std::string to_string(int digits) const;

  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

#define EPDISC_BIGREAL_OP(op, fn)                                               \
  friend BigReal operator op(const BigReal& a, const BigReal& b) {             \
    BigReal r = zero(Precision{std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_))}); \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                           \
    return r;                                                                  \
  }                                                                            \
  BigReal& operator op##=(const BigReal& b) {                                  \
    if (mpfr_get_prec(b.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN); \
    fn(v_, v_, b.v_, MPFR_RNDN);                                               \
    return *this;                                                              \
  }
  EPDISC_BIGREAL_OP(+, mpfr_add)
  EPDISC_BIGREAL_OP(-, mpfr_sub)
  EPDISC_BIGREAL_OP(*, mpfr_mul)
  EPDISC_BIGREAL_OP(/, mpfr_div)
#undef EPDISC_BIGREAL_OP

  friend BigReal operator*(const BigReal& a, long k) {
    BigReal r = zero(a.precision());
    mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(long k, const BigReal& a) { return a * k; }
  friend BigReal operator/(const BigReal& a, long k) {
    BigReal r = zero(a.precision());
    mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

 private:
  bool live() const { return v_[0]._mpfr_d != nullptr; }
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal hypot(const BigReal& x, const BigReal& y);
/// 2^e at precision p.
BigReal exp2i(long e, Precision p);

/// Complex number over BigReal.
class BigComplex {
 public:
  BigComplex() = default;
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(BigReal::zero(re_.precision())) {}
  BigComplex(long re, long im, Precision p) : re_(re, p), im_(im, p) {}
  BigComplex(double re, double im, Precision p) : re_(re, p), im_(im, p) {}
  BigComplex(const Rational& re, Precision p) : re_(re, p), im_(BigReal::zero(p)) {}
  BigComplex(const BigComplex& z, Precision p) : re_(z.re_, p), im_(z.im_, p) {}
  static BigComplex zero(Precision p) { return BigComplex(0L, 0L, p); }
  /// e^{iθ}.
  static BigComplex polar_unit(const BigReal& theta) { return {cos(theta), sin(theta)}; }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }

  Precision precision() const {
    return Precision{std::max(re_.precision().bits, im_.precision().bits)};
  }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex conj() const { return {re_, -im_}; }
  /// |z|^2
  BigReal norm() const { return re_ * re_ + im_ * im_; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re_ * s, a.im_ * s}; }
  friend BigComplex operator*(const BigReal& s, const BigComplex& a) { return a * s; }
  friend BigComplex operator/(const BigComplex& a, const BigReal& s) { return {a.re_ / s, a.im_ / s}; }
  friend BigComplex operator*(const BigComplex& a, long k) { return {a.re_ * k, a.im_ * k}; }
  friend BigComplex operator*(long k, const BigComplex& a) { return a * k; }
  friend BigComplex operator/(const BigComplex& a, long k) { return {a.re_ / k, a.im_ / k}; }
  BigComplex& operator+=(const BigComplex& b) { re_ += b.re_; im_ += b.im_; return *this; }
  BigComplex& operator-=(const BigComplex& b) { re_ -= b.re_; im_ -= b.im_; return *this; }
  BigComplex& operator*=(const BigComplex& b) { *this = *this * b; return *this; }
  BigComplex& operator/=(const BigComplex& b) { *this = *this / b; return *this; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const BigComplex& a, const BigComplex& b) { return !(a == b); }

  std::string to_string(int digits = 20) const;

 private:
  BigReal re_;
  BigReal im_;
};

BigReal abs(const BigComplex& z);
BigReal arg(const BigComplex& z);
/// Principal square root.
BigComplex sqrt(const BigComplex& z);

// ---------------------------------------------------------------------------
// Ring helpers used by the generic polynomial and matrix code.

template <class T>
struct is_exact_ring : std::false_type {};
template <>
struct is_exact_ring<Integer> : std::true_type {};
template <>
struct is_exact_ring<Rational> : std::true_type {};

template <class T>
inline constexpr bool is_exact_ring_v = is_exact_ring<T>::value;

template <class T>
struct is_float_scalar : std::false_type {};
template <>
struct is_float_scalar<BigReal> : std::true_type {};
template <>
struct is_float_scalar<BigComplex> : std::true_type {};

inline bool is_zero(const Integer& z) { return sgn(z) == 0; }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const BigReal& x) { return x.is_zero(); }
inline bool is_zero(const BigComplex& z) { return z.is_zero(); }

/// Quotient known to be exact (fraction-free elimination).
inline Integer exact_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline Rational exact_div(const Rational& a, const Rational& b) { return Rational(a / b); }
inline BigReal exact_div(const BigReal& a, const BigReal& b) { return a / b; }
inline BigComplex exact_div(const BigComplex& a, const BigComplex& b) { return a / b; }

inline Integer zero_like(const Integer&) { return Integer(0); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline BigReal zero_like(const BigReal& x) { return BigReal::zero(x.precision()); }
inline BigComplex zero_like(const BigComplex& z) { return BigComplex::zero(z.precision()); }

inline Integer one_like(const Integer&) { return Integer(1); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline BigReal one_like(const BigReal& x) { return BigReal(1L, x.precision()); }
inline BigComplex one_like(const BigComplex& z) { return BigComplex(1L, 0L, z.precision()); }

inline Integer times(const Integer& a, long k) { return Integer(a * k); }
inline Rational times(const Rational& a, long k) { return Rational(a * k); }
inline BigReal times(const BigReal& a, long k) { return a * k; }
inline BigComplex times(const BigComplex& a, long k) { return a * k; }

/// Magnitude used for pivot selection in float elimination.
inline BigReal magnitude(const BigReal& x) { return abs(x); }
inline BigReal magnitude(const BigComplex& z) { return abs(z); }

// Lifting a coefficient into the ring of an evaluation point `like`.
inline BigReal lift(const Rational& c, const BigReal& like) { return BigReal(c, like.precision()); }
inline BigReal lift(const Integer& c, const BigReal& like) { return BigReal(c, like.precision()); }
inline BigReal lift(const BigReal& c, const BigReal&) { return c; }
inline BigComplex lift(const Rational& c, const BigComplex& like) { return BigComplex(c, like.precision()); }
inline BigComplex lift(const Integer& c, const BigComplex& like) {
  return BigComplex(BigReal(c, like.precision()));
}
inline BigComplex lift(const BigReal& c, const BigComplex& like) {
  return BigComplex(c, BigReal::zero(like.precision()));
}
inline BigComplex lift(const BigComplex& c, const BigComplex&) { return c; }
inline Rational lift(const Rational& c, const Rational&) { return c; }
inline Rational lift(const Integer& c, const Rational&) { return Rational(c); }
inline Integer lift(const Integer& c, const Integer&) { return c; }

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
inline std::string to_string(const BigReal& x) { return x.to_string(); }
inline std::string to_string(const BigComplex& z) { return z.to_string(); }

/// Parses "p/q", "p", or a finite decimal such as "0.1" into an exact rational.
Rational parse_rational(std::string_view s);

}  // namespace epdisc
