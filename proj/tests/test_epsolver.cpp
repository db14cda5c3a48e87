#include "doctest.h"
#include "support.hpp"

#include "epdisc/discriminant.hpp"
#include "epdisc/epsolver.hpp"
#include "epdisc/toy3.hpp"

#include <cmath>

using namespace epdisc;
using namespace testing_support;

namespace {

constexpr Precision P{256};

BigComplex c(double re, double im) { return BigComplex(re, im, P); }

ModelSpec model(ModelKind kind, long M = 0, long K = 0) {
  ModelSpec s;
  s.kind = kind;
  s.M = M;
  s.K = K;
  return s;
}

ScanOptions range(std::size_t lo, std::size_t hi) {
  ScanOptions o;
  o.n_min = lo;
  o.n_max = hi;
  return o;
}

std::vector<BigComplex> lambdas(const ScanReport& r) {
  std::vector<BigComplex> out;
  for (const auto& ep : r.accepted) out.push_back(ep.lambda);
  return out;
}

void check_report_invariants(const ScanReport& r) {
  REQUIRE(r.accepted_n == r.n_max);
  std::size_t covered = 0;
  for (const auto& ep : r.accepted) {
    CHECK(ep.residual.to_double() < r.tol);
    CHECK(std::fabs(ep.lambda.im().to_double()) >= r.tol);
    CHECK_FALSE(ep.flags.real_suspect);
    CHECK(ep.accepted_dim == r.accepted_n);
    covered += ep.multiplicity;
  }
  for (const auto& rj : r.rejected) covered += rj.multiplicity;
  CHECK(covered == r.dims.back().root_count);
  for (const auto& d : r.dims) {
    CHECK(d.ok);
    CHECK(d.degree_f == d.n * (d.n - 1));
  }
}

}  // namespace

TEST_CASE("match_filter examples") {
  const std::vector<BigComplex> a{c(1, 1), c(-2, 0.5), c(0, 3)};
  const auto same = match_filter(a, a);
  REQUIRE(same.size() == 3);
  for (const auto& m : same) {
    CHECK(m.index_n == m.index_prev);
    CHECK(m.residual.is_zero());
  }

  const auto kept = match_filter({c(1, 1), c(5, 0)}, {c(1.0005, 1), c(9, 0)}, 1e-3);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].index_n == 0);
  CHECK(kept[0].residual.to_double() == doctest::Approx(5e-4).epsilon(1e-9));

  CHECK(match_filter({}, a).empty());
  CHECK(match_filter(a, {}).empty());
  CHECK_THROWS(match_filter(a, a, 0.0));
}

TEST_CASE("match_filter uses each root once and is symmetric") {
  // Two roots near one: only the nearer is matched.
  const auto m = match_filter({c(1, 1), c(1.0002, 1)}, {c(1.00015, 1)}, 1e-3);
  REQUIRE(m.size() == 1);
  CHECK(m[0].index_n == 1);

  for (int t = 0; t < 20; ++t) {
    std::vector<BigComplex> a, b;
    for (int k = 0; k < 30; ++k) {
      a.push_back(rand_complex(P, 1.0));
      b.push_back(a.back() + c(rand_real(-2e-3, 2e-3), rand_real(-2e-3, 2e-3)));
    }
    for (int k = 0; k < 5; ++k) b.push_back(rand_complex(P, 1.0));
    const auto ab = match_filter(a, b, 1e-3);
    const auto ba = match_filter(b, a, 1e-3);
    REQUIRE(ab.size() == ba.size());
    for (const auto& x : ab) {
      const bool found = std::any_of(ba.begin(), ba.end(), [&](const Match& y) {
        return y.index_n == x.index_prev && y.index_prev == x.index_n;
      });
      CHECK(found);
    }
  }
}

TEST_CASE("refine_ep at the toy exceptional point") {
  const SecularPoly sp = secular(model(ModelKind::Toy3), 3);
  const UniPoly<BigComplex> f = to_bigcomplex(toy_disc(Rational(1, 10)), Precision{320});
  for (const auto* fp : {static_cast<const UniPoly<BigComplex>*>(nullptr), &f}) {
    const RefinedEP r = refine_ep(sp, c(1, 0.14), RefineOptions{P}, fp);
    const BigComplex ep = toy_ep_lambda(true).to_complex(P);
    CHECK(abs(r.lambda - ep).to_double() < 1e-30);
    CHECK(abs(r.energy - c(2, 0)).to_double() < 1e-30);
    CHECK(r.coalescence == 3);
    CHECK(r.disc_order == 3);
    CHECK(r.higher_order);
  }
}

TEST_CASE("refine_ep at the square-root branch point") {
  using Bi = BiPoly<Rational>;
  SecularPoly sp{Bi::term(Rational(1), 2, 0) - Bi::term(Rational(1), 0, 1), model(ModelKind::Toy3), 2, std::nullopt};
  const RefinedEP r = refine_ep(sp, c(1e-6, 0), RefineOptions{P});
  CHECK(abs(r.lambda).to_double() < 1e-60);
  CHECK(abs(r.energy).to_double() < 1e-60);
  CHECK(r.coalescence == 2);
  CHECK(r.disc_order == 1);
  CHECK_FALSE(r.higher_order);
}

TEST_CASE("refine_ep fixed point on a Mathieu polynomial") {
  const ModelSpec spec = model(ModelKind::MathieuPiEven);
  const DimensionRoots dr = dimension_roots(spec, 8, RingTag::Exact, P);
  const BiPoly<BigReal> p = dr.secular->real(P);
  const BiPoly<BigReal> dp = p.derivative(Var::E);
  int checked = 0;
  for (std::size_t i = 0; i < dr.scaled.size() && checked < 6; ++i) {
    if (std::fabs(dr.scaled[i].im().to_double()) < 1e-3) continue;
    const RefinedEP r = refine_ep(*dr.secular, dr.scaled[i], RefineOptions{P}, &dr.f);
    CHECK(abs(r.lambda - dr.scaled[i]).to_double() < 1e-30 * (1 + abs(r.lambda).to_double()));
    const double scale = std::pow(1 + abs(r.energy).to_double() + abs(r.lambda).to_double(), 8);
    CHECK(abs(p.eval_at(r.energy, r.lambda)).to_double() < 1e-30 * scale);
    CHECK(abs(dp.eval_at(r.energy, r.lambda)).to_double() < 1e-30 * scale);
    CHECK(r.disc_order == 1);
    ++checked;
  }
  CHECK(checked == 6);
}

TEST_CASE("symmetry_partition examples") {
  auto eps_of = [](std::vector<BigComplex> zs) {
    std::vector<ExceptionalPoint> out;
    for (auto& z : zs) {
      ExceptionalPoint ep;
      ep.lambda = z;
      out.push_back(ep);
    }
    return out;
  };
  const ModelSpec even = model(ModelKind::MathieuPiEven);

  auto quad = eps_of({c(1, 1), c(1, -1), c(-1, 1), c(-1, -1)});
  const auto rq = symmetry_partition(quad, even, 1e-6);
  REQUIRE(rq.groups.size() == 1);
  CHECK(rq.groups[0].kind == GroupKind::Quadruplet);
  CHECK(rq.warnings.empty());
  for (const auto& ep : quad) {
    CHECK(ep.flags.conjugate_partner_present);
    CHECK(ep.flags.negation_partner_present);
    CHECK_FALSE(ep.flags.imaginary_axis);
  }

  auto doublet = eps_of({c(0, 2), c(0, -2)});
  const auto rd = symmetry_partition(doublet, even, 1e-6);
  REQUIRE(rd.groups.size() == 1);
  CHECK(rd.groups[0].kind == GroupKind::ImaginaryDoublet);
  CHECK(doublet[0].flags.imaginary_axis);
  CHECK(rd.warnings.empty());

  // A conjugate pair is complete for a model without the negation symmetry.
  auto pair = eps_of({c(1, 2), c(1, -2)});
  const auto r2 = symmetry_partition(pair, model(ModelKind::Mathieu2PiEven), 1e-6);
  REQUIRE(r2.groups.size() == 1);
  CHECK(r2.groups[0].kind == GroupKind::ConjugatePair);
  CHECK(r2.warnings.empty());
  const auto r2n = symmetry_partition(pair, even, 1e-6);
  CHECK(r2n.warnings.size() == 2);

  auto lone = eps_of({c(3, 1)});
  const auto r1 = symmetry_partition(lone, even, 1e-6);
  CHECK(r1.groups[0].kind == GroupKind::Singleton);
  CHECK(r1.warnings.size() == 2);
  CHECK_FALSE(lone[0].flags.conjugate_partner_present);

  for (auto k : {GroupKind::Quadruplet, GroupKind::ImaginaryDoublet, GroupKind::ConjugatePair, GroupKind::NegationPair,
                 GroupKind::Singleton, GroupKind::Other}) {
    CHECK(group_kind_from_name(group_kind_name(k)) == k);
  }
}

TEST_CASE("closure helpers") {
  const std::vector<BigComplex> q{c(1, 1), c(1, -1), c(-1, 1), c(-1, -1)};
  CHECK(closed_under_conjugation(q, 1e-9));
  CHECK(closed_under_negation(q, 1e-9));
  const std::vector<BigComplex> half{c(1, 1), c(1, -1)};
  CHECK(closed_under_conjugation(half, 1e-9));
  CHECK_FALSE(closed_under_negation(half, 1e-9));
  CHECK(sets_related_by_negation(half, {c(-1, 1), c(-1, -1)}, 1e-9));
  CHECK_FALSE(sets_related_by_negation(half, half, 1e-9));
}

TEST_CASE("ring selection") {
  ScanOptions o = range(2, 10);
  CHECK(resolve_ring(model(ModelKind::MathieuPiEven), o) == RingTag::Exact);
  CHECK(resolve_ring(model(ModelKind::BoxX2), o) == RingTag::Float);
  o.n_max = kAutoExactMaxDim + 1;
  CHECK(resolve_ring(model(ModelKind::BoxX), o) == RingTag::Float);
  o.ring = RingPath::Exact;
  CHECK(resolve_ring(model(ModelKind::BoxX), o) == RingTag::Exact);
  CHECK_THROWS(resolve_ring(model(ModelKind::BoxX2), o));
  for (auto r : {RingPath::Exact, RingPath::Float, RingPath::Auto}) CHECK(ring_path_from_name(ring_path_name(r)) == r);
}

TEST_CASE("toy scan gives the conjugate pair") {
  const ScanReport r = scan(model(ModelKind::Toy3), {});
  REQUIRE(r.accepted.size() == 2);
  CHECK(r.rejected.empty());
  CHECK(r.accepted_n == 3);
  CHECK(r.accepted_prev == 0);
  for (const auto& ep : r.accepted) {
    const bool upper = ep.lambda.im() > BigReal::zero(P);
    CHECK(close(ep.lambda, toy_ep_lambda(upper).to_complex(P), 1e-30));
    CHECK(abs(ep.energy - c(2, 0)).to_double() < 1e-30);
    CHECK(ep.multiplicity == 3);
    CHECK(ep.coalescence == 3);
    CHECK(ep.disc_order == 3);
    CHECK(ep.refined);
  }
  REQUIRE(r.groups.size() == 1);
  CHECK(r.groups[0].kind == GroupKind::ConjugatePair);
}

TEST_CASE("Mathieu pi-even scan properties") {
  const ScanReport r = scan(model(ModelKind::MathieuPiEven), range(6, 10));
  check_report_invariants(r);
  REQUIRE_FALSE(r.accepted.empty());
  const auto zs = lambdas(r);
  CHECK(closed_under_conjugation(zs, 1e-6));
  CHECK(closed_under_negation(zs, 1e-6));
  CHECK(r.warnings.empty());
  for (const auto& ep : r.accepted) CHECK(ep.refined);
}

TEST_CASE("Mathieu 2pi even and odd sets are negations of each other") {
  const ScanReport even = scan(model(ModelKind::Mathieu2PiEven), range(6, 10));
  const ScanReport odd = scan(model(ModelKind::Mathieu2PiOdd), range(6, 10));
  check_report_invariants(even);
  check_report_invariants(odd);
  REQUIRE_FALSE(even.accepted.empty());
  CHECK(closed_under_conjugation(lambdas(even), 1e-6));
  CHECK(sets_related_by_negation(lambdas(even), lambdas(odd), 1e-6));
  auto both = lambdas(even);
  for (const auto& z : lambdas(odd)) both.push_back(z);
  CHECK(closed_under_negation(both, 1e-6));
}

TEST_CASE("rotor scans are symmetric about both axes") {
  for (long M : {0L, 2L}) {
    CAPTURE(M);
    const ScanReport r = scan(model(ModelKind::RigidRotor, M), range(6, 10));
    check_report_invariants(r);
    REQUIRE_FALSE(r.accepted.empty());
    CHECK(closed_under_conjugation(lambdas(r), 1e-6));
    CHECK(closed_under_negation(lambdas(r), 1e-6));
  }
}

TEST_CASE("exact roots do not move at doubled precision") {
  const ModelSpec spec = model(ModelKind::MathieuPiOdd);
  const DimensionRoots lo = dimension_roots(spec, 9, RingTag::Exact, P);
  const DimensionRoots hi = dimension_roots(spec, 9, RingTag::Exact, Precision{512});
  REQUIRE(lo.roots.size() == hi.roots.size());
  for (const auto& z : lo.roots) {
    double best = 1e300;
    for (const auto& w : hi.roots) best = std::min(best, abs(z - w).to_double());
    CHECK(best < std::ldexp(1.0, -64));
  }
}

TEST_CASE("box-x2 sampled roots match the exact shifted discriminant") {
  // p(E, λ) = q(E - s λ, λ/π^k) with q rational, so F(λ) = G(λ/π^k) exactly.
  ModelSpec spec = model(ModelKind::BoxX2);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    spec.parity = par;
    for (std::size_t n : {5u, 7u}) {
      CAPTURE(n);
      const DimensionRoots dr = dimension_roots(spec, n, RingTag::Float, P);
      REQUIRE(dr.secular->shifted);
      CHECK(*dr.record.revalidation_log2_shift < -64.0);
      const auto& sh = *dr.secular->shifted;
      const Discriminant g = disc_in_e(sh.q);
      const RootSet gr = roots_all(g.normalized, RootOptions{P});
      BigReal pik(1L, P);
      for (int k = 0; k < sh.pi_power; ++k) pik = pik * BigReal::pi(P);
      std::size_t total = 0;
      for (std::size_t i = 0; i < dr.scaled.size(); ++i) total += dr.multiplicity[i];
      REQUIRE(total == gr.roots.size());
      for (const auto& nu : gr.roots) {
        const BigComplex want = nu * pik;
        double best = 1e300;
        for (const auto& z : dr.scaled) best = std::min(best, abs(z - want).to_double());
        CHECK(best <= 1e-30 * (1 + abs(want).to_double()));
      }
    }
  }
}

TEST_CASE("failed dimensions are recorded, not thrown") {
  const ScanReport r = scan(model(ModelKind::RigidRotor, -1), range(3, 5));
  CHECK(r.accepted.empty());
  REQUIRE(r.dims.size() == 3);
  for (const auto& d : r.dims) {
    CHECK_FALSE(d.ok);
    CHECK_FALSE(d.error.empty());
  }
  CHECK_FALSE(r.warnings.empty());
  CHECK_THROWS(scan(model(ModelKind::RigidRotor), range(5, 5)));
  CHECK_THROWS(scan(model(ModelKind::RigidRotor), range(1, 5)));
}
