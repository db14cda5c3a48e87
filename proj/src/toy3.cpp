#include "epdisc/toy3.hpp"

#include "epdisc/charpoly.hpp"
#include "epdisc/discriminant.hpp"

#include <algorithm>
#include <sstream>

namespace epdisc {

QI2& QI2::operator+=(const QI2& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

QI2& QI2::operator-=(const QI2& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

namespace {

// (p + q√2)
struct Sqrt2Num {
  Rational p, q;
};
Sqrt2Num mul(const Sqrt2Num& x, const Sqrt2Num& y) {
  return {x.p * y.p + 2 * x.q * y.q, x.p * y.q + x.q * y.p};
}

}  // namespace

QI2 operator*(const QI2& x, const QI2& y) {
  const Sqrt2Num u1{x.a_, x.b_}, v1{x.c_, x.d_}, u2{y.a_, y.b_}, v2{y.c_, y.d_};
  const Sqrt2Num uu = mul(u1, u2), vv = mul(v1, v2), uv = mul(u1, v2), vu = mul(v1, u2);
  return {uu.p - vv.p, uu.q - vv.q, uv.p + vu.p, uv.q + vu.q};
}

QI2 QI2::inverse() const {
  if (is_zero()) throw Error("QI2: division by zero");
  // 1/(u + iv) = (u - iv)/(u² + v²), then rationalise the √2 part.
  const Sqrt2Num u{a_, b_}, v{c_, d_};
  const Sqrt2Num uu = mul(u, u), vv = mul(v, v);
  const Sqrt2Num n{uu.p + vv.p, uu.q + vv.q};
  const Rational norm = n.p * n.p - 2 * n.q * n.q;
  const Sqrt2Num inv_n{n.p / norm, -n.q / norm};
  const Sqrt2Num re = mul(u, inv_n), im = mul(v, inv_n);
  return {re.p, re.q, -im.p, -im.q};
}

BigComplex QI2::to_complex(Precision p) const {
  const BigReal s2 = sqrt(BigReal(2L, p));
  return BigComplex(BigReal(a_, p) + BigReal(b_, p) * s2, BigReal(c_, p) + BigReal(d_, p) * s2);
}

std::string QI2::to_string() const {
  std::ostringstream os;
  bool any = false;
  auto put = [&](const Rational& r, const char* unit) {
    if (sgn(r) == 0) return;
    if (any) os << (sgn(r) > 0 ? " + " : " - ");
    else if (sgn(r) < 0) os << "-";
    os << epdisc::to_string(Rational(abs(r))) << unit;
    any = true;
  };
  put(a_, "");
  put(b_, "*sqrt2");
  put(c_, "*i");
  put(d_, "*i*sqrt2");
  if (!any) os << "0";
  return os.str();
}

namespace {

template <class F>
Matrix<F> toy_entries(const Rational& beta, const F& lambda, const F& zero) {
  auto c = [&](long v) { return lift(Rational(v), zero); };
  const F b = lift(beta, zero);
  Matrix<F> h(3, 3, zero);
  h(0, 0) = c(3) - lambda;
  h(0, 1) = b;
  h(1, 0) = b;
  h(1, 1) = c(2);
  h(1, 2) = b;
  h(2, 1) = b;
  h(2, 2) = c(1) + lambda;
  return h;
}

}  // namespace

Matrix<QI2> toy_matrix(const Rational& beta, const QI2& lambda) { return toy_entries(beta, lambda, QI2()); }

Matrix<BigComplex> toy_matrix(const Rational& beta, const BigComplex& lambda) {
  return toy_entries(beta, lambda, BigComplex::zero(lambda.precision()));
}

BiPoly<Rational> toy_charpoly(const Rational& beta) {
  using P = UniPoly<Rational>;
  Matrix<P> h(3, 3);
  h(0, 0) = P({Rational(3), Rational(-1)});
  h(0, 1) = h(1, 0) = h(1, 2) = h(2, 1) = P::constant(beta);
  h(1, 1) = P::constant(Rational(2));
  h(2, 2) = P({Rational(1), Rational(1)});
  return charpoly_bareiss(h);
}

UniPoly<Rational> toy_disc(const Rational& beta) { return disc_in_e(toy_charpoly(beta)).raw; }

QI2 toy_ep_lambda(bool upper) {
  return {Rational(1), Rational(0), Rational(0), Rational(upper ? 1 : -1, 10)};
}

namespace {

// Reduced row echelon form over an exact field; returns pivot columns.
std::vector<std::size_t> rref(Matrix<QI2>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t r = row;
    while (r < m.rows() && m(r, col).is_zero()) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(row, r);
    const QI2 inv = m(row, col).inverse();
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const QI2 f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Solves A x = b with x[fixed] = 0; the solution must exist and be unique.
std::array<QI2, 3> solve_gauged(const Matrix<QI2>& a, const std::array<QI2, 3>& b, std::size_t fixed) {
  Matrix<QI2> aug(3, 3);
  std::array<std::size_t, 2> free_cols{};
  std::size_t c = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j != fixed) free_cols[c++] = j;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    aug(i, 0) = a(i, free_cols[0]);
    aug(i, 1) = a(i, free_cols[1]);
    aug(i, 2) = b[i];
  }
  const auto piv = rref(aug);
  if (piv.size() != 2 || piv[1] != 1) throw Error("jordan chain: inconsistent or underdetermined system");
  std::array<QI2, 3> x{};
  x[free_cols[0]] = aug(0, 2);
  x[free_cols[1]] = aug(1, 2);
  return x;
}

Matrix<QI2> multiply(const Matrix<QI2>& a, const Matrix<QI2>& b) {
  Matrix<QI2> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      for (std::size_t k = 0; k < a.cols(); ++k) r(i, j) += a(i, k) * b(k, j);
    }
  }
  return r;
}

Matrix<QI2> inverse(const Matrix<QI2>& m) {
  const std::size_t n = m.rows();
  Matrix<QI2> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = QI2(1L);
  }
  rref(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(aug(i, i) == QI2(1L))) throw Error("matrix is singular");
  }
  Matrix<QI2> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  }
  return inv;
}

}  // namespace

JordanChain jordan_at_ep() {
  const Rational beta(1, 10);
  JordanChain out;
  out.lambda = toy_ep_lambda(true);
  const Matrix<QI2> h = toy_matrix(beta, out.lambda);

  // The triple root of det(H - E I) at the exceptional point.
  // p = -E³ + c E² + ..., c = tr H independent of λ; a triple root sits at c/3.
  const Rational c = toy_charpoly(beta).coeff(2, 0);
  out.eigenvalue = QI2(Rational(c / 3));
  Matrix<QI2> a = h;
  for (std::size_t i = 0; i < 3; ++i) a(i, i) -= out.eigenvalue;

  Matrix<QI2> red = a;
  const auto piv = rref(red);
  out.geometric_multiplicity = 3 - piv.size();
  if (out.geometric_multiplicity != 1) throw Error("jordan chain: expected a one-dimensional eigenspace");
  std::size_t free_col = 0;
  while (std::find(piv.begin(), piv.end(), free_col) != piv.end()) ++free_col;
  std::array<QI2, 3> k{};
  k[free_col] = QI2(1L);
  for (std::size_t r = 0; r < piv.size(); ++r) k[piv[r]] = -red(r, free_col);
  if (k[1].is_zero()) throw Error("jordan chain: gauge component vanishes");
  const QI2 scale = QI2(Rational(0), Rational(1, 2), Rational(0), Rational(0)) / k[1];  // 1/√2 = √2/2
  for (auto& x : k) x = x * scale;

  out.v[0] = k;
  out.v[1] = solve_gauged(a, out.v[0], 2);
  out.v[2] = solve_gauged(a, out.v[1], 0);

  out.U = Matrix<QI2>(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out.U(i, j) = out.v[j][i];
  }
  out.U_inv = inverse(out.U);
  out.J = multiply(multiply(out.U_inv, h), out.U);
  return out;
}

BigReal jordan_residual(const JordanChain& chain, Precision p) {
  const std::size_t n = 3;
  const BigComplex lambda = chain.lambda.to_complex(p);
  const Matrix<BigComplex> h = toy_matrix(Rational(1, 10), lambda);
  // Gauss-Jordan with magnitude pivoting on [U | I].
  Matrix<BigComplex> aug(n, 2 * n, BigComplex::zero(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = chain.U(i, j).to_complex(p);
    aug(i, n + i) = BigComplex(1L, 0L, p);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(aug(r, col)) > abs(aug(best, col))) best = r;
    }
    aug.swap_rows(col, best);
    const BigComplex inv = BigComplex(1L, 0L, p) / aug(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(col, j) = aug(col, j) * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const BigComplex f = aug(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
    }
  }
  BigReal worst = BigReal::zero(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigComplex s = BigComplex::zero(p);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) s += aug(i, n + k) * h(k, l) * chain.U(l, j).to_complex(p);
      }
      const BigComplex jij = chain.J(i, j).to_complex(p);
      const BigReal e = abs(s - jij);
      if (e > worst) worst = e;
    }
  }
  return worst;
}

}  // namespace epdisc
