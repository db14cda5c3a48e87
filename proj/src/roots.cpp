#include "epdisc/roots.hpp"

#include "epdisc/newton_polygon.hpp"

#include <cmath>
#include <numeric>

namespace epdisc {

namespace {

struct Eval {
  BigComplex p, dp;
  BigReal scale;  // Σ |c_k| |z|^k
};

Eval horner(const std::vector<BigComplex>& c, const std::vector<BigReal>& abs_c, const BigComplex& z) {
  const Precision w = z.precision();
  const BigReal r = abs(z);
  BigComplex p = c.back();
  BigComplex dp = BigComplex::zero(w);
  BigReal s = abs_c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
    s = s * r + abs_c[k];
  }
  return {std::move(p), std::move(dp), std::move(s)};
}

std::vector<BigComplex> initial_points(const std::vector<BigComplex>& c) {
  const Precision w = c.front().precision();
  std::vector<double> lg;
  for (const auto& x : c) lg.push_back(abs(x).log2_abs());
  const std::size_t d = c.size() - 1;
  std::vector<BigComplex> z;
  z.reserve(d);
  const auto edges = newton_polygon_radii(lg);
  const double two_pi = 2.0 * M_PI;
  std::size_t placed = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double whole = std::floor(edges[e].log2_radius);
    const BigReal radius = BigReal(std::exp2(edges[e].log2_radius - whole), w) * exp2i(static_cast<long>(whole), w);
    for (std::size_t k = 0; k < edges[e].count; ++k) {
      // Spread each annulus evenly, rotating between annuli to avoid alignment.
      const double phi = two_pi * (static_cast<double>(k) / static_cast<double>(edges[e].count)) +
                         two_pi * 0.6180339887 * static_cast<double>(placed + 1) / static_cast<double>(d) + 0.4;
      z.push_back(BigComplex::polar_unit(BigReal(phi, w)) * radius);
      ++placed;
    }
  }
  return z;
}

// Roots of a polynomial with nonzero constant and leading coefficients.
std::vector<BigComplex> aberth(const std::vector<BigComplex>& c, Precision target, int max_iter, RootDiagnostics& diag) {
  const std::size_t d = c.size() - 1;
  const Precision w = c.front().precision();
  if (d == 1) return {-c[0] / c[1]};
  std::vector<BigReal> abs_c;
  for (const auto& x : c) abs_c.push_back(abs(x));
  std::vector<BigComplex> z = initial_points(c);
  std::vector<bool> done(d, false);
  const long stop_bits = static_cast<long>(target.bits) + 8;
  const BigReal tiny = exp2i(-stop_bits, w);
  const int cap = max_iter > 0 ? max_iter : 200 + 4 * static_cast<int>(d);
  int it = 0;
  std::size_t remaining = d;
  for (; it < cap && remaining > 0; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      const Eval ev = horner(c, abs_c, z[i]);
      if (abs(ev.p) <= tiny * ev.scale) {
        done[i] = true;
        --remaining;
        continue;
      }
      BigComplex s = BigComplex::zero(w);
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) s += BigComplex(1L, 0L, w) / (z[i] - z[j]);
      }
      const BigComplex n = ev.p / ev.dp;
      const BigComplex step = n / (BigComplex(1L, 0L, w) - n * s);
      z[i] -= step;
      if (abs(step) <= tiny * abs(z[i])) {
        done[i] = true;
        --remaining;
      }
    }
  }
  diag.iterations += it;
  if (remaining > 0) {
    throw RootFindingError("roots_all: Aberth iteration did not converge after " + std::to_string(it) + " sweeps", z);
  }
  return z;
}

double log2_residual(const Eval& ev) {
  if (ev.p.is_zero()) return -1e300;
  return abs(ev.p).log2_abs() - ev.scale.log2_abs();
}

// One Newton step on the full polynomial, kept only if it lowers the residual.
double polish(const std::vector<BigComplex>& c, const std::vector<BigReal>& abs_c, BigComplex& z) {
  const Eval ev = horner(c, abs_c, z);
  const double before = log2_residual(ev);
  if (ev.dp.is_zero() || ev.p.is_zero()) return before;
  const BigComplex next = z - ev.p / ev.dp;
  const double after = log2_residual(horner(c, abs_c, next));
  if (after < before) {
    z = next;
    return after;
  }
  return before;
}

}  // namespace

RootSet roots_all(const UniPoly<BigComplex>& f, const RootOptions& opts) {
  if (f.is_zero() || *f.degree() < 1) throw Error("roots_all: polynomial must have degree at least 1");
  const Precision target = opts.precision;
  const Precision w{target.bits + 64};
  RootSet out;

  std::vector<BigComplex> c;
  for (const auto& x : f.coeffs()) c.emplace_back(x, w);
  while (c.size() > 1 && c.back().is_zero()) {
    c.pop_back();
    ++out.diagnostics.trimmed_leading;
  }
  std::size_t lo = 0;
  while (lo < c.size() && c[lo].is_zero()) ++lo;
  out.diagnostics.zero_roots = lo;
  c.erase(c.begin(), c.begin() + static_cast<long>(lo));
  const std::vector<BigComplex> full = c;

  bool even = c.size() >= 3;
  for (std::size_t k = 1; even && k < c.size(); k += 2) even = c[k].is_zero();
  out.diagnostics.even_reduced = even;

  std::vector<BigComplex> found;
  if (c.size() > 1) {
    if (even) {
      std::vector<BigComplex> g;
      for (std::size_t k = 0; k < c.size(); k += 2) g.push_back(c[k]);
      for (const auto& mu : aberth(g, target, opts.max_iterations, out.diagnostics)) {
        const BigComplex s = sqrt(mu);
        found.push_back(s);
        found.push_back(-s);
      }
    } else {
      found = aberth(c, target, opts.max_iterations, out.diagnostics);
    }
  }

  const double bound = -static_cast<double>(target.bits) / 2.0;
  std::vector<BigReal> abs_full;
  for (const auto& x : full) abs_full.push_back(abs(x));
  double worst = -1e300;
  for (auto& z : found) worst = std::max(worst, polish(full, abs_full, z));
  out.diagnostics.worst_log2_residual = found.empty() ? -1e300 : worst;
  for (std::size_t k = 0; k < lo; ++k) found.push_back(BigComplex::zero(w));
  std::vector<BigComplex> rounded;
  for (const auto& z : found) rounded.emplace_back(z, target);
  if (worst > bound) throw RootFindingError("roots_all: root certification failed", rounded);
  out.roots = std::move(rounded);
  return out;
}

RootSet roots_all(const UniPoly<BigReal>& f, const RootOptions& opts) {
  return roots_all(to_bigcomplex(f, Precision{std::max(opts.precision.bits, f.is_zero() ? 0 : f.leading().precision().bits)}), opts);
}

RootSet roots_all(const UniPoly<Rational>& f, const RootOptions& opts) {
  return roots_all(to_bigcomplex(f, Precision{opts.precision.bits + 64}), opts);
}

std::vector<RootCluster> cluster_roots(const std::vector<BigComplex>& roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (abs(roots[i] - roots[j]).to_double() < tol) parent[find(i)] = find(j);
    }
  }
  std::vector<RootCluster> out;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.push_back({BigComplex::zero(roots[i].precision()), 0, {}});
    }
    out[static_cast<std::size_t>(slot[r])].members.push_back(i);
  }
  for (auto& cl : out) {
    for (auto m : cl.members) cl.center += roots[m];
    cl.multiplicity = cl.members.size();
    cl.center = cl.center / BigComplex(static_cast<long>(cl.multiplicity), 0L, cl.center.precision());
  }
  return out;
}

}  // namespace epdisc
