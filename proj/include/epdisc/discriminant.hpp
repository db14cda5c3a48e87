#pragma once

// Sylvester resultants and discriminants, including the map
// p(E, λ) -> F(λ) = Disc_E p.

#include "epdisc/matrix.hpp"
#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace epdisc {

/// (m+n)x(m+n) Sylvester matrix of f (degree m) and g (degree n).
/// With f = a_0 x^m + ... + a_m and g = b_0 x^n + ... + b_n, the first n
/// columns hold shifted copies of (a_0..a_m) and the last m columns shifted
/// copies of (b_0..b_n), top to bottom.
template <class R>
struct SylvesterMatrix {
  Matrix<R> entries;
  std::size_t m = 0;
  std::size_t n = 0;
};

template <class R>
SylvesterMatrix<R> sylvester(const UniPoly<R>& f, const UniPoly<R>& g) {
  if (f.is_zero() || g.is_zero()) throw Error("sylvester: zero polynomial");
  const std::size_t m = *f.degree();
  const std::size_t n = *g.degree();
  if (m < 1 || n < 1) throw Error("sylvester: both degrees must be at least 1");
  const std::size_t dim = m + n;
  SylvesterMatrix<R> s{Matrix<R>(dim, dim, zero_like(f.leading())), m, n};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= m; ++i) s.entries(k + i, k) = f.coeffs()[m - i];
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i <= n; ++i) s.entries(k + i, n + k) = g.coeffs()[n - i];
  }
  return s;
}

template <class R>
R ring_pow(const R& base, std::size_t e) {
  R result = one_like(base);
  R b = base;
  while (e > 0) {
    if (e & 1U) result = result * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return result;
}

/// Res(f, g). Constant arguments follow Res(f, c) = c^m, Res(c, g) = c^n;
/// a zero argument (with the other nonzero) gives 0.
template <class R>
R resultant(const UniPoly<R>& f, const UniPoly<R>& g) {
  if (f.is_zero() && g.is_zero()) throw Error("resultant: both polynomials are zero");
  if (f.is_zero()) return zero_like(g.leading());
  if (g.is_zero()) return zero_like(f.leading());
  const std::size_t m = *f.degree();
  const std::size_t n = *g.degree();
  if (n == 0) return ring_pow(g.leading(), m);
  if (m == 0) return ring_pow(f.leading(), n);
  return determinant(sylvester(f, g).entries);
}

/// Disc(f) = (-1)^{m(m-1)/2} Res(f, f') / a, a the leading coefficient.
template <class R>
R discriminant(const UniPoly<R>& f) {
  if (f.is_zero() || *f.degree() < 1) throw Error("discriminant: degree must be at least 1");
  const std::size_t m = *f.degree();
  R res = resultant(f, derivative(f));
  R d = exact_div(res, f.leading());
  return ((m * (m - 1) / 2) % 2 == 1) ? R(-d) : d;
}

/// Exact F(λ) = Disc_E p(E, λ).
struct Discriminant {
  UniPoly<Rational> raw;
  /// raw divided by its leading coefficient.
  UniPoly<Rational> normalized;
  /// p was even in λ and the discriminant was taken in μ = λ².
  bool even_reduced = false;
};

/// Exact discriminant with respect to E. Runs fraction-free elimination in
/// Z[λ] after clearing denominators. `expected_degree_e` is the truncation
/// dimension; a lower E-degree means the leading coefficient vanished.
Discriminant disc_in_e(const BiPoly<Rational>& p, std::optional<std::size_t> expected_degree_e = std::nullopt);

struct SampleOptions {
  Precision precision = kDefaultPrecision;
  /// Initial circle radius; 0 picks it automatically.
  double radius = 0.0;
  /// Extra working bits beyond `precision`. Negative: start at 64 + degree
  /// bound and double until the coefficients are resolved.
  int guard_bits = -1;
  int max_rounds = 5;
};

/// F(λ) by evaluation at roots of unity on a circle and interpolation.
struct SampledDiscriminant {
  UniPoly<BigReal> raw;
  UniPoly<BigReal> normalized;
  bool even_reduced = false;
  std::size_t degree_bound = 0;
  std::size_t samples = 0;
  BigReal radius;
  int resamples = 0;
  long working_bits = 0;
  /// The precision cap was reached before the coefficients were resolved.
  bool unresolved = false;
};

SampledDiscriminant disc_in_e_sampled(const BiPoly<BigReal>& p, const SampleOptions& opts = {},
                                      std::optional<std::size_t> expected_degree_e = std::nullopt);

/// Disc_E p(E, λ) at one complex λ, computed numerically at λ's precision.
BigComplex disc_value_at(const BiPoly<BigReal>& p, const BigComplex& lambda);

/// Upper bound on deg_λ Res_E(p, ∂p/∂E) / lead_E(p) from the maximum-weight
/// assignment of the entry degrees of the Sylvester matrix.
template <class T>
std::size_t disc_degree_bound(const BiPoly<T>& p);

/// Maximum total weight over permutations; nullopt entries are forbidden.
/// Returns nullopt when every permutation hits a forbidden entry.
std::optional<long> max_weight_assignment(const std::vector<std::vector<std::optional<long>>>& w);

}  // namespace epdisc
