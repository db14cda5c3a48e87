#include "epdisc/charpoly.hpp"

#include "epdisc/toy3.hpp"

namespace epdisc {

const BiPoly<Rational>& SecularPoly::exact() const {
  if (!is_exact()) throw Error("secular polynomial is float-carried");
  return std::get<BiPoly<Rational>>(p);
}

SecularPoly secular_tridiagonal(const ModelSpec& spec, std::size_t n) {
  if (n < 1) throw Error("secular_tridiagonal: dimension must be at least 1");
  BiPoly<Rational> prev2;                                // D_{k-2}
  BiPoly<Rational> prev1 = BiPoly<Rational>::constant(1);  // D_{k-1}
  for (std::size_t k = 0; k < n; ++k) {
    const RecurrenceCoeffs c = recurrence_coeffs(spec, k);
    BiPoly<Rational> next = c.b * prev1;
    if (!c.asq.is_zero()) next -= c.asq * prev2;
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return SecularPoly{std::move(prev1), spec, n, std::nullopt};
}

namespace {

// p(E, λ) = Σ q_jk (E - sλ)^j ν^k with ν = λ/π^pi_power, expanded at precision prec.
BiPoly<BigReal> expand_shifted(const ShiftedExact& se, Precision prec) {
  const Precision w{prec.bits + 64};
  const BigReal inv_pi_pow = BigReal(1L, w) / [&] {
    BigReal r(1L, w);
    for (int i = 0; i < se.pi_power; ++i) r = r * BigReal::pi(w);
    return r;
  }();
  const std::size_t de = *se.q.degree_e();
  const std::size_t dl = se.q.degree_lambda().value_or(0);
  std::vector<BigReal> nu_pow{BigReal(1L, w)};
  for (std::size_t k = 1; k <= dl; ++k) nu_pow.push_back(nu_pow.back() * inv_pi_pow);

  // binom(j, t) (-s)^{j-t}
  std::vector<std::vector<Rational>> shift_coef(de + 1);
  for (std::size_t j = 0; j <= de; ++j) {
    shift_coef[j].assign(j + 1, Rational(0));
    for (std::size_t t = 0; t <= j; ++t) {
      Integer bin;
      mpz_bin_uiui(bin.get_mpz_t(), j, t);
      Rational sp(1);
      for (std::size_t u = 0; u < j - t; ++u) sp *= -se.shift;
      shift_coef[j][t] = Rational(bin) * sp;
    }
  }

  // Exact accumulation per power of ν, then one rounding per coefficient.
  std::vector<std::vector<std::vector<Rational>>> acc(de + 1,
                                                      std::vector<std::vector<Rational>>(de + dl + 1, std::vector<Rational>(dl + 1)));
  for (std::size_t j = 0; j <= de; ++j) {
    const UniPoly<Rational> row = se.q.row(j);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Rational& qjk = row.coeffs()[k];
      if (is_zero(qjk)) continue;
      for (std::size_t t = 0; t <= j; ++t) acc[t][j - t + k][k] += qjk * shift_coef[j][t];
    }
  }
  std::vector<UniPoly<BigReal>> rows;
  for (std::size_t t = 0; t <= de; ++t) {
    std::vector<BigReal> cs;
    for (std::size_t l = 0; l <= de + dl; ++l) {
      BigReal s = BigReal::zero(w);
      for (std::size_t k = 0; k <= dl; ++k) {
        if (!is_zero(acc[t][l][k])) s += BigReal(acc[t][l][k], w) * nu_pow[k];
      }
      cs.emplace_back(s, prec);
    }
    rows.emplace_back(std::move(cs));
  }
  return BiPoly<BigReal>(UniPoly<UniPoly<BigReal>>(std::move(rows)));
}

}  // namespace

BiPoly<BigReal> SecularPoly::real(Precision prec) const {
  if (is_exact()) return to_bigreal(exact(), prec);
  if (shifted) return expand_shifted(*shifted, prec);
  const auto& f = std::get<BiPoly<BigReal>>(p);
  return f.map<BigReal>([&](const BigReal& c) { return BigReal(c, prec); });
}

SecularPoly secular_dense(const DenseModelMatrix& m) {
  if (m.dim < 1) throw Error("secular_dense: empty matrix");
  if (const auto* hq = std::get_if<Matrix<UniPoly<Rational>>>(&m.h)) {
    return SecularPoly{charpoly_bareiss(*hq), m.model, m.dim, std::nullopt};
  }
  const auto& hr = std::get<Matrix<UniPoly<BigReal>>>(m.h);
  if (!m.split) return SecularPoly{charpoly_bareiss(hr), m.model, m.dim, std::nullopt};
  ShiftedExact se{charpoly_bareiss(m.split->core), m.split->shift, m.split->pi_power};
  BiPoly<BigReal> p = expand_shifted(se, m.model.precision);
  return SecularPoly{std::move(p), m.model, m.dim, std::move(se)};
}

SecularPoly secular(const ModelSpec& spec, std::size_t n) {
  if (spec.kind == ModelKind::Toy3) return SecularPoly{toy_charpoly(spec.beta), spec, 3, std::nullopt};
  if (spec.is_tridiagonal()) return secular_tridiagonal(spec, n);
  return secular_dense(dense_matrix(spec, n));
}

}  // namespace epdisc
