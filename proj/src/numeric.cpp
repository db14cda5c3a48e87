#include "epdisc/numeric.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <memory>

namespace epdisc {

BigReal BigReal::from_string(std::string_view s, Precision p) {
  BigReal r = zero(p);
  std::string buf(s);
  char* end = nullptr;
  if (!buf.empty()) mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
  if (buf.empty() || end == buf.c_str() || *end != '\0') {
    throw Error("malformed decimal number: '" + buf + "'");
  }
  return r;
}

double BigReal::log2_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

namespace {

std::string format_mpfr(mpfr_srcptr v, std::size_t digits) {
  if (mpfr_nan_p(v)) return "nan";
  if (mpfr_inf_p(v)) return mpfr_sgn(v) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v)) return mpfr_signbit(v) ? "-0" : "0";
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, void (*)(char*)> mant(mpfr_get_str(nullptr, &exp, 10, digits, v, MPFR_RNDN),
                                              mpfr_free_str);
  std::string m(mant.get());
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  const long e10 = static_cast<long>(exp) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

}  // namespace

std::string BigReal::to_string() const { return format_mpfr(v_, 0); }

std::string BigReal::to_string(int digits) const {
  return format_mpfr(v_, static_cast<std::size_t>(std::max(digits, 2)));
}

BigReal abs(const BigReal& x) {
  BigReal r = BigReal::zero(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  BigReal r = BigReal::zero(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal sin(const BigReal& x) {
  BigReal r = BigReal::zero(x.precision());
  mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal cos(const BigReal& x) {
  BigReal r = BigReal::zero(x.precision());
  mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r = BigReal::zero(Precision{std::max(x.precision().bits, y.precision().bits)});
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal hypot(const BigReal& x, const BigReal& y) {
  BigReal r = BigReal::zero(Precision{std::max(x.precision().bits, y.precision().bits)});
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigReal exp2i(long e, Precision p) {
  BigReal r(1L, p);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  // Smith's algorithm keeps intermediates in range.
  if (abs(b.re_) >= abs(b.im_)) {
    if (b.re_.is_zero()) throw Error("complex division by zero");
    const BigReal ratio = b.im_ / b.re_;
    const BigReal den = b.re_ + b.im_ * ratio;
    return {(a.re_ + a.im_ * ratio) / den, (a.im_ - a.re_ * ratio) / den};
  }
  const BigReal ratio = b.re_ / b.im_;
  const BigReal den = b.re_ * ratio + b.im_;
  return {(a.re_ * ratio + a.im_) / den, (a.im_ * ratio - a.re_) / den};
}

std::string BigComplex::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  if (im_.sign() < 0) {
    s += " - " + (-im_).to_string(digits) + "i";
  } else {
    s += " + " + im_.to_string(digits) + "i";
  }
  return s;
}

BigReal abs(const BigComplex& z) { return hypot(z.re(), z.im()); }

BigReal arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex sqrt(const BigComplex& z) {
  const Precision p = z.precision();
  if (z.is_zero()) return BigComplex::zero(p);
  const BigReal r = abs(z);
  // sqrt((r + |x|)/2) is cancellation-free; recover the other part from y.
  BigReal t = sqrt((r + abs(z.re())) / 2L);
  if (z.re().sign() >= 0) {
    return {t, z.im() / (t * 2L)};
  }
  BigReal im = z.im().sign() >= 0 ? t : -t;
  return {z.im() / (im * 2L), im};
}

std::string to_string(const Integer& z) { return z.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view s) {
  std::string t(s);
  auto bad = [&] { return Error("malformed rational: '" + t + "'"); };
  if (t.empty()) throw bad();
  const auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    const std::size_t frac = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    for (std::size_t i = (digits[0] == '-' || digits[0] == '+') ? 1 : 0; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw bad();
    }
    if (digits[0] == '+') digits.erase(0, 1);
    Integer num(digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(t, 10) != 0) throw bad();
  if (sgn(q.get_den()) == 0) throw bad();
  q.canonicalize();
  return q;
}

}  // namespace epdisc
