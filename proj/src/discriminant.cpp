#include "epdisc/discriminant.hpp"

#include "epdisc/newton_polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epdisc {

std::optional<long> max_weight_assignment(const std::vector<std::vector<std::optional<long>>>& w) {
  // Hungarian algorithm (minimisation of -w), 1-based potentials.
  const std::size_t n = w.size();
  if (n == 0) return 0;
  constexpr long kForbidden = 1L << 40;
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  auto cost = [&](std::size_t i, std::size_t j) -> long {
    const auto& c = w[i - 1][j - 1];
    return c ? -*c : kForbidden;
  };
  std::vector<long> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<long> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      long delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  long total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const auto& c = w[p[j] - 1][j - 1];
    if (!c) return std::nullopt;
    total += *c;
  }
  return total;
}

template <class T>
std::size_t disc_degree_bound(const BiPoly<T>& p) {
  const auto de = p.degree_e();
  if (!de || *de < 1) throw Error("disc_degree_bound: E-degree must be at least 1");
  const std::size_t m = *de;
  const std::size_t n = m - 1;
  const BiPoly<T> dp = p.derivative(Var::E);
  auto row_deg = [](const BiPoly<T>& q, std::size_t j) -> std::optional<long> {
    auto d = q.row(j).degree();
    if (!d) return std::nullopt;
    return static_cast<long>(*d);
  };
  if (n == 0) return 0;
  const std::size_t dim = m + n;
  std::vector<std::vector<std::optional<long>>> w(dim, std::vector<std::optional<long>>(dim));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= m; ++i) w[k + i][k] = row_deg(p, m - i);
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i <= n; ++i) w[k + i][n + k] = row_deg(dp, n - i);
  }
  const auto best = max_weight_assignment(w);
  if (!best) throw Error("disc_degree_bound: Sylvester determinant vanishes identically");
  const long lead = static_cast<long>(*p.row(m).degree());
  return static_cast<std::size_t>(std::max(0L, *best - lead));
}

template std::size_t disc_degree_bound(const BiPoly<Rational>&);
template std::size_t disc_degree_bound(const BiPoly<BigReal>&);

namespace {

template <class T>
void check_e_degree(const BiPoly<T>& p, std::optional<std::size_t> expected) {
  const auto de = p.degree_e();
  if (!de) throw Error("disc_in_e: zero polynomial");
  if (expected && *de < *expected) {
    throw Error("degenerate truncation: leading-in-E coefficient vanishes identically");
  }
  if (*de < 2) throw Error("disc_in_e: E-degree must be at least 2");
}

}  // namespace

Discriminant disc_in_e(const BiPoly<Rational>& p, std::optional<std::size_t> expected_degree_e) {
  check_e_degree(p, expected_degree_e);
  Discriminant out;
  out.even_reduced = p.is_even_in_lambda();
  const BiPoly<Rational> q = out.even_reduced ? p.lambda_square_reduced() : p;
  const std::size_t m = *q.degree_e();

  // Disc(d q) = d^{2m-2} Disc(q), so work with the integer polynomial d q.
  const Integer d = common_denominator(q);
  const BiPoly<Integer> qi = scaled_to_integer(q, d);
  const UniPoly<Integer> disc_int = discriminant(qi.in_e());

  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), 2 * m - 2);
  UniPoly<Rational> f = map_coeffs<Rational>(disc_int, [&](const Integer& c) {
    Rational r(c, scale);
    r.canonicalize();
    return r;
  });
  if (out.even_reduced) f = substitute_square(f);
  if (f.is_zero()) throw Error("disc_in_e: discriminant vanishes identically (repeated factor in E)");
  out.normalized = f.scaled(Rational(1 / f.leading()));
  out.raw = std::move(f);
  return out;
}

BigComplex disc_value_at(const BiPoly<BigReal>& p, const BigComplex& lambda) {
  const UniPoly<BigComplex> f = p.specialize(lambda);
  if (f.is_zero() || *f.degree() < 1) throw Error("disc_value_at: specialization has degree < 1");
  return discriminant(f);
}

namespace {

// Sum of |c_k| |x|^k: the scale against which |p(x)| is judged.
BigReal abs_scale(const UniPoly<BigReal>& c, const BigReal& r) {
  BigReal acc = BigReal::zero(r.precision());
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + abs(c.coeffs()[k]);
  return acc;
}

// 2π(s + offset)/count, with the (dyadic) offset taken exactly.
BigReal sample_angle(const BigReal& two_pi, std::size_t s, double offset, std::size_t count, Precision w) {
  return two_pi * (BigReal(static_cast<long>(s), w) + BigReal(offset, w)) / static_cast<long>(count);
}

struct SamplePass {
  std::vector<BigReal> coeffs;  // c_k, unscaled
  int resamples = 0;
};

SamplePass sample_pass(const BiPoly<BigReal>& q, std::size_t count, const BigReal& radius, Precision w) {
  const std::size_t m = *q.degree_e();
  const UniPoly<BigReal> lead = q.row(m);
  const BigReal two_pi = BigReal::pi(w) * 2L;
  const BigReal tiny = exp2i(-static_cast<long>(w.bits / 2), w);
  SamplePass out;
  std::vector<BigComplex> values;
  double offset = 0.5;
  for (;;) {
    values.clear();
    bool ok = true;
    for (std::size_t s = 0; s < count && ok; ++s) {
      const BigReal phi = sample_angle(two_pi, s, offset, count, w);
      const BigComplex lambda = BigComplex::polar_unit(phi) * radius;
      const BigComplex a = eval(lead, lambda);
      // A leading coefficient near one of its roots loses the E-degree.
      if (abs(a) <= tiny * abs_scale(lead, radius)) {
        ok = false;
        break;
      }
      values.push_back(disc_value_at(q, lambda));
    }
    if (ok) break;
    if (++out.resamples > 16) throw Error("disc_in_e_sampled: cannot avoid roots of the leading coefficient");
    offset = std::fmod(offset + 0.3183098861837907, 1.0);
  }
  // c_k r^k = (1/M) Σ_s F(λ_s) e^{-2πik(s+offset)/M}
  std::vector<BigComplex> omega;
  std::vector<BigComplex> power;
  omega.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const BigReal phi = sample_angle(two_pi, s, offset, count, w);
    omega.push_back(BigComplex::polar_unit(-phi));
    power.push_back(BigComplex(1L, 0L, w));
  }
  BigReal rk(1L, w);
  for (std::size_t k = 0; k < count; ++k) {
    BigComplex acc = BigComplex::zero(w);
    for (std::size_t s = 0; s < count; ++s) {
      acc += values[s] * power[s];
      power[s] = power[s] * omega[s];
    }
    out.coeffs.push_back(acc.re() / (rk * static_cast<long>(count)));
    rk = rk * radius;
  }
  return out;
}

double median_log2_radius(const std::vector<BigReal>& coeffs) {
  std::vector<double> lg;
  for (const auto& c : coeffs) lg.push_back(c.log2_abs());
  while (!lg.empty() && !std::isfinite(lg.back())) lg.pop_back();
  std::size_t lo = 0;
  while (lo < lg.size() && !std::isfinite(lg[lo])) ++lo;
  if (lg.size() < lo + 2) return 0.0;
  std::vector<double> sub(lg.begin() + static_cast<long>(lo), lg.end());
  std::vector<double> radii;
  for (const auto& e : newton_polygon_radii(sub)) radii.insert(radii.end(), e.count, e.log2_radius);
  std::nth_element(radii.begin(), radii.begin() + static_cast<long>(radii.size() / 2), radii.end());
  return radii[radii.size() / 2];
}

}  // namespace

SampledDiscriminant disc_in_e_sampled(const BiPoly<BigReal>& p, const SampleOptions& opts,
                                      std::optional<std::size_t> expected_degree_e) {
  check_e_degree(p, expected_degree_e);
  SampledDiscriminant out;
  out.even_reduced = p.is_even_in_lambda();
  const BiPoly<BigReal> q = out.even_reduced ? p.lambda_square_reduced() : p;
  out.degree_bound = disc_degree_bound(q);
  const long bits = opts.precision.bits;
  long guard = opts.guard_bits < 0 ? 64 + static_cast<long>(out.degree_bound) : opts.guard_bits;
  out.samples = out.degree_bound + 1;

  BigReal radius(opts.radius > 0 ? opts.radius : 1.0, Precision{bits + guard});
  std::vector<BigReal> c;
  std::optional<std::size_t> prev_top;
  for (int round = 0;; ++round) {
    const Precision w{bits + guard};
    radius = BigReal(radius, w);
    SamplePass pass = sample_pass(q, out.samples, radius, w);
    if (round == 0 && opts.radius <= 0 && out.degree_bound > 0) {
      // Re-centre the circle on the bulk of the root moduli.
      const double lr = std::clamp(median_log2_radius(pass.coeffs), -1000.0, 1000.0);
      if (std::fabs(lr) > 1.0) {
        radius = BigReal(std::exp2(lr), w);
        const int before = pass.resamples;
        pass = sample_pass(q, out.samples, radius, w);
        pass.resamples += before;
      }
    }
    out.resamples += pass.resamples;
    c = std::move(pass.coeffs);

    // log2 |c_k| r^k against the interpolation noise floor.
    const double lr = radius.log2_abs();
    std::vector<double> t;
    double top_t = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c.size(); ++k) {
      t.push_back(c[k].log2_abs() + static_cast<double>(k) * lr);
      top_t = std::max(top_t, t.back());
    }
    const double noise = top_t - static_cast<double>(w.bits) + 8.0 + std::log2(static_cast<double>(c.size()));
    std::optional<std::size_t> lo, hi;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] > noise + 32.0) {
        if (!lo) lo = k;
        hi = k;
      }
    }
    if (!hi) throw Error("disc_in_e_sampled: discriminant vanishes on the sample circle");
    c.resize(*hi + 1);
    for (std::size_t k = 0; k < *lo; ++k) c[k] = BigReal::zero(w);
    // Every coefficient on the Newton polygon needs `bits` good bits; the hull
    // is concave, so its lowest points are the two ends.
    const bool resolved = std::min(t[*lo], t[*hi]) >= noise + static_cast<double>(bits) + 16.0;
    const bool settled = (prev_top && *prev_top == *hi) || *hi == out.degree_bound;
    if ((resolved && settled) || opts.guard_bits >= 0 || round == opts.max_rounds) {
      out.working_bits = w.bits;
      out.unresolved = !(resolved && settled);
      break;
    }
    prev_top = *hi;
    guard *= 2;
  }
  out.radius = BigReal(radius, opts.precision);

  std::vector<BigReal> rounded;
  rounded.reserve(c.size());
  for (const auto& ck : c) rounded.emplace_back(ck, opts.precision);
  UniPoly<BigReal> f(std::move(rounded));
  if (out.even_reduced) f = substitute_square(f);
  if (f.is_zero()) throw Error("disc_in_e_sampled: discriminant vanishes on the sample circle");
  const BigReal lead = f.leading();
  out.normalized = map_coeffs<BigReal>(f, [&](const BigReal& x) { return x / lead; });
  out.raw = std::move(f);
  return out;
}

}  // namespace epdisc
