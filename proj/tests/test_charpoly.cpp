#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "epdisc/charpoly.hpp"

using namespace epdisc;
using namespace testing_support;

namespace {

using Bi = BiPoly<Rational>;
using InE = UniPoly<UniPoly<Rational>>;

Bi E() { return Bi::term(Rational(1), 1, 0); }
Bi L() { return Bi::term(Rational(1), 0, 1); }
Bi C(long n, long d = 1) { return Bi::constant(Rational(n, d)); }

ModelSpec make(ModelKind k, long M = 0, long K = 0) {
  ModelSpec s;
  s.kind = k;
  s.M = M;
  s.K = K;
  return s;
}

Bi dense_naive(const Matrix<UniPoly<Rational>>& h) {
  const std::size_t n = h.rows();
  Matrix<InE> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = Bi::from_lambda(h(i, j)).in_e();
      if (i == j) m(i, j) = (Bi(m(i, j)) - E()).in_e();
    }
  }
  return Bi(oracle::cofactor_det(m));
}

std::vector<ModelSpec> tridiagonal_specs() {
  std::vector<ModelSpec> v;
  for (auto k : {ModelKind::MathieuPiEven, ModelKind::MathieuPiOdd, ModelKind::Mathieu2PiEven, ModelKind::Mathieu2PiOdd}) {
    v.push_back(make(k));
  }
  for (long M = 0; M <= 3; ++M) v.push_back(make(ModelKind::RigidRotor, M));
  for (auto [M, K] : {std::pair{0L, 0L}, {1L, 1L}, {1L, -1L}, {2L, 1L}, {0L, 2L}}) {
    v.push_back(make(ModelKind::SymmetricTop, M, K));
  }
  return v;
}

}  // namespace

TEST_CASE("small secular determinants") {
  CHECK(secular_tridiagonal(make(ModelKind::MathieuPiOdd), 1).exact() == C(4) - E());
  CHECK(secular_tridiagonal(make(ModelKind::MathieuPiOdd), 2).exact() == (C(16) - E()) * (C(4) - E()) - L() * L());
  CHECK(secular_tridiagonal(make(ModelKind::RigidRotor, 0), 2).exact() == (C(2) - E()) * (-E()) - C(1, 3) * L() * L());

  Matrix<UniPoly<Rational>> two(2, 2);
  two(0, 0) = UniPoly<Rational>::constant(Rational(3));
  two(0, 1) = two(1, 0) = UniPoly<Rational>::constant(Rational(5));
  two(1, 1) = UniPoly<Rational>::constant(Rational(-2));
  CHECK(charpoly_bareiss(two) == (C(3) - E()) * (C(-2) - E()) - C(25));
  Matrix<UniPoly<Rational>> one(1, 1);
  one(0, 0) = UniPoly<Rational>({Rational(1), Rational(2)});
  CHECK(charpoly_bareiss(one) == C(1) + C(2) * L() - E());
}

TEST_CASE("recurrence equals the naive tridiagonal determinant") {
  for (const auto& s : tridiagonal_specs()) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const SecularPoly sp = secular_tridiagonal(s, n);
      CHECK(sp.exact() == oracle::tridiagonal_det(s, n));
      CHECK(sp.dim == n);
      CHECK(*sp.exact().degree_e() == n);
      CHECK(sp.exact().coeff(n, 0) == (n % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("dense box determinant against cofactor expansion") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto m = dense_matrix(make(ModelKind::BoxX), n);
    CHECK(secular_dense(m).exact() == dense_naive(std::get<Matrix<UniPoly<Rational>>>(m.h)));
  }
}

TEST_CASE("box x determinant is independent of basis sign conventions") {
  const std::size_t n = 6;
  const auto m = dense_matrix(make(ModelKind::BoxX), n);
  const auto& h = std::get<Matrix<UniPoly<Rational>>>(m.h);
  const Bi ref = charpoly_bareiss(h);
  for (int t = 0; t < 8; ++t) {
    std::vector<long> sign(n);
    for (auto& s : sign) s = rand_int(0, 1) ? 1 : -1;
    Matrix<UniPoly<Rational>> f(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) f(i, j) = h(i, j).scaled(Rational(sign[i] * sign[j]));
    }
    CHECK(charpoly_bareiss(f) == ref);
  }
}

TEST_CASE("Mathieu parity identities") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (auto k : {ModelKind::MathieuPiEven, ModelKind::MathieuPiOdd}) {
      const Bi d = secular(make(k), n).exact();
      CHECK(d.lambda_negated() == d);
    }
    const Bi de = secular(make(ModelKind::Mathieu2PiEven), n).exact();
    const Bi dodd = secular(make(ModelKind::Mathieu2PiOdd), n).exact();
    CHECK(de.lambda_negated() == dodd);
  }
}

TEST_CASE("symmetric top determinant identities") {
  for (long M = -2; M <= 2; ++M) {
    for (long K = -2; K <= 2; ++K) {
      for (std::size_t n = 1; n <= 8; ++n) {
        const Bi d = secular(make(ModelKind::SymmetricTop, M, K), n).exact();
        auto D = [&](long m, long k) { return secular(make(ModelKind::SymmetricTop, m, k), n).exact(); };
        CHECK(D(K, M) == d);
        CHECK(D(-M, -K) == d);
        CHECK(D(-K, -M) == d);
        CHECK(D(-M, K).lambda_negated() == d);
        CHECK(D(K, -M).lambda_negated() == d);
        CHECK(D(M, -K).lambda_negated() == d);
        CHECK(D(-K, M).lambda_negated() == d);
      }
    }
  }
}

TEST_CASE("lambda = 0 roots are the free spectrum") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto pe = secular(make(ModelKind::MathieuPiEven), n).exact().specialize(Rational(0));
    const auto po = secular(make(ModelKind::MathieuPiOdd), n).exact().specialize(Rational(0));
    const auto p2 = secular(make(ModelKind::Mathieu2PiEven), n).exact().specialize(Rational(0));
    const auto rr = secular(make(ModelKind::RigidRotor, 2), n).exact().specialize(Rational(0));
    const auto bx = secular(make(ModelKind::BoxX), std::max<std::size_t>(n, 2)).exact().specialize(Rational(0));
    for (long j = 0; j < static_cast<long>(n); ++j) {
      CHECK(eval(pe, Rational(4 * j * j)) == 0);
      CHECK(eval(po, Rational(4 * (j + 1) * (j + 1))) == 0);
      CHECK(eval(p2, Rational((2 * j + 1) * (2 * j + 1))) == 0);
      CHECK(eval(rr, Rational((j + 2) * (j + 3))) == 0);
      CHECK(eval(bx, Rational((j + 1) * (j + 1))) == 0);
    }
  }
}

TEST_CASE("box x2 secular polynomial against numeric determinants") {
  const Precision p{256};
  for (Parity par : {Parity::Even, Parity::Odd}) {
    ModelSpec s = make(ModelKind::BoxX2);
    s.parity = par;
    for (std::size_t n : {2U, 4U, 7U}) {
      const auto m = dense_matrix(s, n);
      const SecularPoly sp = secular_dense(m);
      CHECK_FALSE(sp.is_exact());
      REQUIRE(sp.shifted.has_value());
      const auto& h = std::get<Matrix<UniPoly<BigReal>>>(m.h);
      const BiPoly<BigReal> f = sp.real(p);
      CHECK(*f.degree_e() == n);
      for (int t = 0; t < 5; ++t) {
        const BigComplex lt = rand_complex(p, 5.0);
        const BigComplex et = rand_complex(p, 30.0);
        Matrix<BigComplex> a(n, n, BigComplex::zero(p));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) a(i, j) = eval(h(i, j), lt);
          a(i, i) -= et;
        }
        CHECK(close(f.eval_at(et, lt), determinant(a), 1e-60));
      }
    }
  }
}
