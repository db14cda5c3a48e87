#pragma once

// Secular polynomials p(E, λ) = det(H - E I) of truncated models.

#include "epdisc/models.hpp"
#include "epdisc/polynomial.hpp"

#include <optional>
#include <variant>

namespace epdisc {

enum class RingTag { Exact, Float };

/// Exact form of a float-carried secular polynomial:
/// p(E, λ) = q(E - shift λ, λ / π^pi_power).
struct ShiftedExact {
  BiPoly<Rational> q;
  Rational shift;
  int pi_power = 0;
};

struct SecularPoly {
  std::variant<BiPoly<Rational>, BiPoly<BigReal>> p;
  ModelSpec model;
  /// Matrix dimension n; the E-degree of p.
  std::size_t dim = 0;
  std::optional<ShiftedExact> shifted;

  RingTag ring() const { return std::holds_alternative<BiPoly<Rational>>(p) ? RingTag::Exact : RingTag::Float; }
  bool is_exact() const { return ring() == RingTag::Exact; }
  const BiPoly<Rational>& exact() const;
  /// p at precision `prec` (rounded from the exact form when there is one).
  BiPoly<BigReal> real(Precision prec) const;
};

/// D_k = B_k D_{k-1} - A_k^2 D_{k-2}, k = 0..n-1, D_{-1} = 1, D_{-2} = 0.
/// n is the matrix dimension (one more than the determinant index used when
/// the recurrence is written as D_N).
SecularPoly secular_tridiagonal(const ModelSpec& spec, std::size_t n);

/// det(h(λ̃) - Ẽ I) by fraction-free elimination.
SecularPoly secular_dense(const DenseModelMatrix& m);

/// Dispatch on the model kind; Toy3 ignores n (always 3).
SecularPoly secular(const ModelSpec& spec, std::size_t n);

/// det(h - E I) for a matrix of λ-polynomials, over T[λ][E].
template <class T>
BiPoly<T> charpoly_bareiss(const Matrix<UniPoly<T>>& h) {
  using Row = UniPoly<T>;
  using InE = UniPoly<Row>;
  const std::size_t n = h.rows();
  Matrix<InE> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        const T one = one_like(h(i, i).is_zero() ? T{} : h(i, i).leading());
        a(i, j) = InE({h(i, j), Row::constant(-one)});
      } else {
        a(i, j) = InE::constant(h(i, j));
      }
    }
  }
  return BiPoly<T>(bareiss_det(std::move(a)));
}

}  // namespace epdisc
