#pragma once

// Univariate and bivariate polynomials generic over a coefficient ring.

#include "epdisc/numeric.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace epdisc {

template <class T>
class UniPoly;
template <class T>
bool is_zero(const UniPoly<T>& p);
template <class T>
UniPoly<T> zero_like(const UniPoly<T>&);

/// Dense univariate polynomial c_0 + c_1 x + ... + c_d x^d, ascending order.
/// Stored coefficients are trimmed so the leading one is nonzero; the zero
/// polynomial stores nothing and has no degree.
template <class T>
class UniPoly {
 public:
  using coefficient_type = T;

  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(T c) { return UniPoly(std::vector<T>{std::move(c)}); }
  static UniPoly monomial(T c, std::size_t k) {
    std::vector<T> v(k + 1, zero_like(c));
    v[k] = std::move(c);
    return UniPoly(std::move(v));
  }

  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }

  /// Coefficient of x^k; zero beyond the degree.
  T operator[](std::size_t k) const {
    if (k < c_.size()) return c_[k];
    return c_.empty() ? T{} : zero_like(c_.front());
  }
  const T& leading() const { return c_.back(); }

  bool is_constant() const { return c_.size() <= 1; }

  UniPoly operator-() const {
    UniPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }

  UniPoly& operator+=(const UniPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), zero_like(b.c_.front()));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), zero_like(b.c_.front()));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) { return multiply(a, b); }
  UniPoly& operator*=(const UniPoly& b) { return *this = multiply(*this, b); }

  /// Multiplication by a ring element.
  UniPoly scaled(const T& s) const {
    std::vector<T> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(c * s);
    return UniPoly(std::move(v));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

 private:
  static UniPoly multiply(const UniPoly& a, const UniPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, zero_like(a.c_.front()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (epdisc::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if constexpr (std::is_same_v<T, Integer>) {
          mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        } else {
          r[i + j] += a.c_[i] * b.c_[j];
        }
      }
    }
    return UniPoly(std::move(r));
  }

  void trim() {
    while (!c_.empty() && epdisc::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
struct is_exact_ring<UniPoly<T>> : is_exact_ring<T> {};

template <class T>
bool is_zero(const UniPoly<T>& p) {
  return p.is_zero();
}
template <class T>
UniPoly<T> zero_like(const UniPoly<T>&) {
  return {};
}
template <class T>
UniPoly<T> one_like(const UniPoly<T>& p) {
  return UniPoly<T>::constant(one_like(p.is_zero() ? T{} : p.leading()));
}
template <class T>
UniPoly<T> times(const UniPoly<T>& p, long k) {
  std::vector<T> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.push_back(times(c, k));
  return UniPoly<T>(std::move(v));
}

/// Long division a = q*b + r. Over exact rings requires exact coefficient
/// quotients by lead(b) (true for fraction-free elimination over integral
/// domains); over float rings the remainder is discarded.
template <class T>
UniPoly<T> exact_div(const UniPoly<T>& a, const UniPoly<T>& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  if (a.is_zero()) return {};
  const std::size_t da = *a.degree();
  const std::size_t db = *b.degree();
  if (da < db) {
    if constexpr (is_exact_ring_v<T>) throw Error("inexact polynomial division");
    return {};
  }
  std::vector<T> rem = a.coeffs();
  std::vector<T> q(da - db + 1, zero_like(a.leading()));
  const T& lead = b.leading();
  for (std::size_t k = da - db + 1; k-- > 0;) {
    T& top = rem[k + db];
    if (is_zero(top)) continue;
    T qk = exact_div(top, lead);
    for (std::size_t j = 0; j <= db; ++j) {
      if constexpr (std::is_same_v<T, Integer>) {
        mpz_submul(rem[k + j].get_mpz_t(), qk.get_mpz_t(), b.coeffs()[j].get_mpz_t());
      } else {
        rem[k + j] -= qk * b.coeffs()[j];
      }
    }
    q[k] = std::move(qk);
  }
  if constexpr (is_exact_ring_v<T>) {
    for (std::size_t j = 0; j < db; ++j) {
      if (!is_zero(rem[j])) throw Error("inexact polynomial division");
    }
  }
  return UniPoly<T>(std::move(q));
}

/// Formal derivative.
template <class T>
UniPoly<T> derivative(const UniPoly<T>& p) {
  if (p.size() <= 1) return {};
  std::vector<T> v;
  v.reserve(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) v.push_back(times(p.coeffs()[k], static_cast<long>(k)));
  return UniPoly<T>(std::move(v));
}

/// Horner evaluation at x; coefficients are lifted into x's ring.
template <class T, class X>
X eval(const UniPoly<T>& p, const X& x) {
  if (p.is_zero()) return zero_like(x);
  const auto& c = p.coeffs();
  X acc = lift(c.back(), x);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * x;
    acc += lift(c[k], x);
  }
  return acc;
}

/// p(-x).
template <class T>
UniPoly<T> negate_variable(const UniPoly<T>& p) {
  std::vector<T> v = p.coeffs();
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return UniPoly<T>(std::move(v));
}

/// True when only even powers of x appear.
template <class T>
bool is_even(const UniPoly<T>& p) {
  for (std::size_t k = 1; k < p.size(); k += 2) {
    if (!is_zero(p.coeffs()[k])) return false;
  }
  return true;
}

/// For even p, the polynomial q with q(x^2) = p(x).
template <class T>
UniPoly<T> even_part_in_square(const UniPoly<T>& p) {
  std::vector<T> v;
  for (std::size_t k = 0; k < p.size(); k += 2) v.push_back(p.coeffs()[k]);
  return UniPoly<T>(std::move(v));
}

/// q(x^2).
template <class T>
UniPoly<T> substitute_square(const UniPoly<T>& q) {
  if (q.is_zero()) return {};
  std::vector<T> v(2 * q.size() - 1, zero_like(q.leading()));
  for (std::size_t k = 0; k < q.size(); ++k) v[2 * k] = q.coeffs()[k];
  return UniPoly<T>(std::move(v));
}

/// Coefficient-wise map into another ring.
template <class U, class T, class F>
UniPoly<U> map_coeffs(const UniPoly<T>& p, F&& f) {
  std::vector<U> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.push_back(f(c));
  return UniPoly<U>(std::move(v));
}

// ---------------------------------------------------------------------------

enum class Var { E, Lambda };

/// Polynomial in (E, λ): Σ_j c_j(λ) E^j with each c_j a UniPoly in λ.
template <class T>
class BiPoly {
 public:
  using coefficient_type = T;
  using Row = UniPoly<T>;

  BiPoly() = default;
  explicit BiPoly(UniPoly<Row> in_e) : p_(std::move(in_e)) {}

  static BiPoly term(T c, std::size_t e_pow, std::size_t l_pow) {
    return BiPoly(UniPoly<Row>::monomial(Row::monomial(std::move(c), l_pow), e_pow));
  }
  static BiPoly constant(T c) { return term(std::move(c), 0, 0); }
  /// Σ terms (c, j, k) meaning c E^j λ^k.
  static BiPoly from_terms(const std::vector<std::tuple<T, std::size_t, std::size_t>>& terms) {
    BiPoly r;
    for (const auto& [c, j, k] : terms) r += term(c, j, k);
    return r;
  }
  /// Lifts a polynomial in λ to a constant-in-E polynomial.
  static BiPoly from_lambda(Row c) { return BiPoly(UniPoly<Row>::constant(std::move(c))); }

  const UniPoly<Row>& in_e() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  std::optional<std::size_t> degree_e() const { return p_.degree(); }
  std::optional<std::size_t> degree_lambda() const {
    std::optional<std::size_t> d;
    for (const auto& row : p_.coeffs()) {
      if (auto k = row.degree(); k && (!d || *k > *d)) d = k;
    }
    return d;
  }
  /// Coefficient of E^j λ^k.
  T coeff(std::size_t j, std::size_t k) const {
    if (j >= p_.size()) return p_.is_zero() ? T{} : zero_like(p_.leading().leading());
    return p_.coeffs()[j][k];
  }
  /// Coefficient of E^j as a polynomial in λ.
  Row row(std::size_t j) const { return p_[j]; }
  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& row : p_.coeffs()) {
      for (const auto& c : row.coeffs()) n += is_zero_coeff(c) ? 0 : 1;
    }
    return n;
  }

  BiPoly operator-() const { return BiPoly(-p_); }
  BiPoly& operator+=(const BiPoly& b) { p_ += b.p_; return *this; }
  BiPoly& operator-=(const BiPoly& b) { p_ -= b.p_; return *this; }
  BiPoly& operator*=(const BiPoly& b) { p_ *= b.p_; return *this; }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) { return BiPoly(a.p_ * b.p_); }
  BiPoly scaled(const T& s) const {
    return BiPoly(map_coeffs<Row>(p_, [&](const Row& r) { return r.scaled(s); }));
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.p_ == b.p_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  BiPoly derivative(Var v) const {
    if (v == Var::E) return BiPoly(epdisc::derivative(p_));
    return BiPoly(map_coeffs<Row>(p_, [](const Row& r) { return epdisc::derivative(r); }));
  }

  /// Substitutes λ = v, giving a polynomial in E over v's ring.
  template <class X>
  UniPoly<X> specialize(const X& v) const {
    return map_coeffs<X>(p_, [&](const Row& r) { return eval(r, v); });
  }
  /// Full evaluation at (E, λ).
  template <class X>
  X eval_at(const X& e, const X& lambda) const {
    return eval(specialize(lambda), e);
  }

  /// p(E, -λ).
  BiPoly lambda_negated() const {
    return BiPoly(map_coeffs<Row>(p_, [](const Row& r) { return negate_variable(r); }));
  }
  bool is_even_in_lambda() const {
    for (const auto& r : p_.coeffs()) {
      if (!is_even(r)) return false;
    }
    return true;
  }
  /// For p even in λ, q with q(E, λ^2) = p(E, λ).
  BiPoly lambda_square_reduced() const {
    return BiPoly(map_coeffs<Row>(p_, [](const Row& r) { return even_part_in_square(r); }));
  }

  template <class U, class F>
  BiPoly<U> map(F&& f) const {
    return BiPoly<U>(map_coeffs<UniPoly<U>>(p_, [&](const Row& r) { return map_coeffs<U>(r, f); }));
  }

  /// Human-readable form, highest E power first, e.g. "-E^2 + (1/2 L^2) E + ...".
  std::string to_string() const {
    if (p_.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = p_.size(); j-- > 0;) {
      const Row& r = p_.coeffs()[j];
      for (std::size_t k = r.size(); k-- > 0;) {
        if (is_zero_coeff(r.coeffs()[k])) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << epdisc::to_string(r.coeffs()[k]) << ")";
        if (j > 0) os << "*E^" << j;
        if (k > 0) os << "*L^" << k;
      }
    }
    return os.str();
  }

 private:
  static bool is_zero_coeff(const T& c) { return epdisc::is_zero(c); }
  UniPoly<Row> p_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const BiPoly<T>& p) {
  return os << p.to_string();
}

template <class T>
std::string to_string(const UniPoly<T>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (is_zero(p.coeffs()[k])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(p.coeffs()[k]) << ")";
    if (k > 0) os << "*x^" << k;
  }
  return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const UniPoly<T>& p) {
  return os << to_string(p);
}

/// Rational coefficients rounded to precision p.
inline UniPoly<BigReal> to_bigreal(const UniPoly<Rational>& q, Precision p) {
  return map_coeffs<BigReal>(q, [&](const Rational& c) { return BigReal(c, p); });
}
inline BiPoly<BigReal> to_bigreal(const BiPoly<Rational>& q, Precision p) {
  return q.map<BigReal>([&](const Rational& c) { return BigReal(c, p); });
}
inline UniPoly<BigComplex> to_bigcomplex(const UniPoly<Rational>& q, Precision p) {
  return map_coeffs<BigComplex>(q, [&](const Rational& c) { return BigComplex(c, p); });
}
inline UniPoly<BigComplex> to_bigcomplex(const UniPoly<BigReal>& q, Precision p) {
  return map_coeffs<BigComplex>(q, [&](const BigReal& c) {
    return BigComplex(BigReal(c, p), BigReal::zero(p));
  });
}

/// Least common multiple of all coefficient denominators.
Integer common_denominator(const BiPoly<Rational>& p);
/// Integer polynomial d*p for the common denominator d.
BiPoly<Integer> scaled_to_integer(const BiPoly<Rational>& p, const Integer& d);

}  // namespace epdisc
