#include "epdisc/epsolver.hpp"

#include "epdisc/discriminant.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>

namespace epdisc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double dist(const BigComplex& a, const BigComplex& b) { return abs(a - b).to_double(); }

std::vector<std::size_t> nearest(const std::vector<BigComplex>& from, const std::vector<BigComplex>& to) {
  std::vector<std::size_t> out(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      const double d = dist(from[i], to[j]);
      if (d < best) {
        best = d;
        out[i] = j;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Match> match_filter(const std::vector<BigComplex>& roots_n, const std::vector<BigComplex>& roots_prev,
                                double tol) {
  if (!(tol > 0)) throw Error("match_filter: tolerance must be positive");
  std::vector<Match> out;
  if (roots_n.empty() || roots_prev.empty()) return out;
  const auto fwd = nearest(roots_n, roots_prev);
  const auto back = nearest(roots_prev, roots_n);
  std::vector<bool> used(roots_prev.size(), false);
  for (std::size_t i = 0; i < roots_n.size(); ++i) {
    const std::size_t j = fwd[i];
    if (back[j] != i || used[j]) continue;
    BigReal r = abs(roots_n[i] - roots_prev[j]);
    if (r.to_double() >= tol) continue;
    used[j] = true;
    out.push_back({i, j, roots_n[i], std::move(r)});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Σ |c_jk| |E|^j |λ|^k
BigReal abs_eval(const BiPoly<BigReal>& p, const BigReal& e, const BigReal& l) {
  const auto abs_p = p.map<BigReal>([](const BigReal& c) { return abs(c); });
  return abs_p.eval_at(e, l);
}

struct Level {
  bool converged = false;
  bool singular = false;
  BigComplex e, l;
  int iterations = 0;
};

Level newton_level(const std::vector<BiPoly<BigReal>>& d, const std::vector<BiPoly<BigReal>>& dl, std::size_t k,
                   BigComplex e, BigComplex l, Precision target, int max_iter) {
  const Precision w = e.precision();
  const BiPoly<BigReal>& g1 = d[k - 2];
  const BiPoly<BigReal>& g2 = d[k - 1];
  const BigReal stop = exp2i(-static_cast<long>(target.bits) - 16, w);
  const BigReal singular_ratio = exp2i(-static_cast<long>(target.bits) / 8, w);
  auto scaled_residual = [&](const BigComplex& ee, const BigComplex& ll) {
    const BigReal ae = abs(ee), al = abs(ll);
    const BigReal s1 = abs_eval(g1, ae, al), s2 = abs_eval(g2, ae, al);
    BigReal r1 = abs(g1.eval_at(ee, ll)), r2 = abs(g2.eval_at(ee, ll));
    if (!s1.is_zero()) r1 = r1 / s1;
    if (!s2.is_zero()) r2 = r2 / s2;
    return r1 > r2 ? r1 : r2;
  };
  Level out;
  BigReal res = scaled_residual(e, l);
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    if (res <= stop) {
      out.converged = true;
      break;
    }
    const BigComplex f1 = g1.eval_at(e, l), f2 = g2.eval_at(e, l);
    const BigComplex j00 = d[k - 1].eval_at(e, l), j01 = dl[k - 2].eval_at(e, l);
    const BigComplex j10 = d[k].eval_at(e, l), j11 = dl[k - 1].eval_at(e, l);
    const BigComplex det = j00 * j11 - j01 * j10;
    const BigReal norm2 = j00.norm() + j01.norm() + j10.norm() + j11.norm();
    if (det.is_zero() || abs(det) <= singular_ratio * norm2) {
      out.singular = true;
      break;
    }
    const BigComplex de = (f1 * j11 - f2 * j01) / det;
    const BigComplex dlam = (j00 * f2 - j10 * f1) / det;
    // Halve the step while the residual grows.
    BigComplex scale(1L, 0L, w);
    BigComplex ne = e - de, nl = l - dlam;
    BigReal nres = scaled_residual(ne, nl);
    for (int h = 0; h < 20 && !(nres < res); ++h) {
      scale = scale / BigComplex(2L, 0L, w);
      ne = e - de * scale;
      nl = l - dlam * scale;
      nres = scaled_residual(ne, nl);
    }
    const bool tiny_step = abs(de * scale) <= stop * (BigReal(1L, w) + abs(e)) &&
                           abs(dlam * scale) <= stop * (BigReal(1L, w) + abs(l));
    e = std::move(ne);
    l = std::move(nl);
    res = std::move(nres);
    if (!e.re().is_finite() || !e.im().is_finite() || !l.re().is_finite() || !l.im().is_finite()) break;
    if (tiny_step) {
      out.converged = res <= exp2i(-static_cast<long>(target.bits) / 2, w);
      break;
    }
  }
  if (!out.converged && res <= stop) out.converged = true;
  out.e = std::move(e);
  out.l = std::move(l);
  return out;
}

bool vanishes(const BiPoly<BigReal>& q, const BigComplex& e, const BigComplex& l, Precision target) {
  const BigReal s = abs_eval(q, abs(e), abs(l));
  const BigReal v = abs(q.eval_at(e, l));
  if (s.is_zero()) return true;
  return v <= s * exp2i(-static_cast<long>(target.bits) / 2, e.precision());
}

template <class Eval>
std::size_t winding_order(Eval&& f, const BigComplex& center, Precision target) {
  const Precision w = center.precision();
  const BigReal rho = exp2i(-static_cast<long>(target.bits) / 8, w) * (BigReal(1L, w) + abs(center));
  constexpr long kSamples = 64;
  const BigReal two_pi = BigReal::pi(w) * 2L;
  BigComplex prev = f(center + BigComplex::polar_unit(BigReal::zero(w)) * rho);
  BigReal total = BigReal::zero(w);
  for (long s = 1; s <= kSamples; ++s) {
    const BigComplex z = center + BigComplex::polar_unit(two_pi * s / kSamples) * rho;
    const BigComplex cur = f(z);
    if (cur.is_zero() || prev.is_zero()) return 0;
    total += arg(cur / prev);
    prev = cur;
  }
  const double turns = (total / two_pi).to_double();
  return turns < 0.5 ? 0 : static_cast<std::size_t>(std::lround(turns));
}

}  // namespace

RefinedEP refine_ep(const SecularPoly& p, const BigComplex& lambda0, const RefineOptions& opts,
                    const UniPoly<BigComplex>* f) {
  if (p.dim < 2) throw Error("refine_ep: E-degree must be at least 2");
  const Precision target = opts.precision;
  const Precision w{target.bits + 64};
  const BiPoly<BigReal> q = p.real(w);
  const std::size_t m = *q.degree_e();
  const BigComplex l0(lambda0, w);

  // Closest pair of the eigenvalue roots at λ0.
  const RootSet er = roots_all(q.specialize(l0), RootOptions{w});
  std::size_t bi = 0, bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < er.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < er.roots.size(); ++j) {
      const double g = dist(er.roots[i], er.roots[j]);
      if (g < best) {
        best = g;
        bi = i;
        bj = j;
      }
    }
  }
  const BigComplex e0 = (BigComplex(er.roots[bi], w) + BigComplex(er.roots[bj], w)) / BigComplex(2L, 0L, w);

  std::vector<BiPoly<BigReal>> d{q};
  for (std::size_t j = 1; j <= m; ++j) d.push_back(d.back().derivative(Var::E));
  std::vector<BiPoly<BigReal>> dl;
  for (const auto& x : d) dl.push_back(x.derivative(Var::Lambda));

  BigComplex e = e0, l = l0;
  bool saw_singular = false;
  int iterations = 0;
  for (std::size_t k = 2; k <= m; ++k) {
    Level lv = newton_level(d, dl, k, e, l, target, opts.max_iterations);
    iterations += lv.iterations;
    saw_singular = saw_singular || lv.singular;
    const bool finite = lv.e.re().is_finite() && lv.e.im().is_finite() && lv.l.re().is_finite() && lv.l.im().is_finite();
    if (finite) {
      e = lv.e;
      l = lv.l;
    }
    if (!lv.converged) continue;
    bool lower_ok = true;
    for (std::size_t j = 0; j + 2 < k && lower_ok; ++j) lower_ok = vanishes(d[j], lv.e, lv.l, target);
    if (!lower_ok) continue;

    RefinedEP out;
    out.iterations = iterations;
    out.higher_order = k > 2;
    std::size_t c = k;
    while (c < m && vanishes(d[c], lv.e, lv.l, target)) ++c;
    out.coalescence = c;
    if (opts.estimate_order) {
      if (f != nullptr) {
        const UniPoly<BigComplex> fw = map_coeffs<BigComplex>(*f, [&](const BigComplex& x) { return BigComplex(x, w); });
        out.disc_order = winding_order([&](const BigComplex& z) { return eval(fw, z); }, lv.l, target);
      } else {
        out.disc_order = winding_order([&](const BigComplex& z) { return disc_value_at(q, z); }, lv.l, target);
      }
    }
    out.lambda = BigComplex(lv.l, target);
    out.energy = BigComplex(lv.e, target);
    return out;
  }
  if (saw_singular) throw Error("refine_ep: higher-order coalescence; reduce step or raise precision");
  throw Error("refine_ep: Newton iteration diverged");
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::pair<GroupKind, const char*> kGroupNames[] = {
    {GroupKind::Quadruplet, "quadruplet"},        {GroupKind::ImaginaryDoublet, "imaginary_doublet"},
    {GroupKind::ConjugatePair, "conjugate_pair"}, {GroupKind::NegationPair, "negation_pair"},
    {GroupKind::Singleton, "singleton"},          {GroupKind::Other, "other"},
};

bool has_near(const std::vector<BigComplex>& set, const BigComplex& z, double tol, std::optional<std::size_t> skip) {
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (skip && *skip == j) continue;
    if (dist(set[j], z) < tol) return true;
  }
  return false;
}

}  // namespace

const char* group_kind_name(GroupKind k) {
  for (const auto& [kind, name] : kGroupNames) {
    if (kind == k) return name;
  }
  return "other";
}

std::optional<GroupKind> group_kind_from_name(const std::string& s) {
  for (const auto& [kind, name] : kGroupNames) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

bool closed_under_conjugation(const std::vector<BigComplex>& set, double tol) {
  return std::all_of(set.begin(), set.end(), [&](const BigComplex& z) { return has_near(set, z.conj(), tol, std::nullopt); });
}

bool closed_under_negation(const std::vector<BigComplex>& set, double tol) {
  return std::all_of(set.begin(), set.end(), [&](const BigComplex& z) { return has_near(set, -z, tol, std::nullopt); });
}

bool sets_related_by_negation(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b, double tol) {
  const bool ab = std::all_of(a.begin(), a.end(), [&](const BigComplex& z) { return has_near(b, -z, tol, std::nullopt); });
  const bool ba = std::all_of(b.begin(), b.end(), [&](const BigComplex& z) { return has_near(a, -z, tol, std::nullopt); });
  return ab && ba;
}

SymmetryReport symmetry_partition(std::vector<ExceptionalPoint>& eps, const ModelSpec& spec, double tol) {
  const std::size_t n = eps.size();
  std::vector<BigComplex> pts;
  for (const auto& ep : eps) pts.push_back(ep.lambda);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  SymmetryReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    const BigComplex& z = pts[i];
    auto& fl = eps[i].flags;
    fl.imaginary_axis = std::fabs(z.re().to_double()) < tol;
    fl.conjugate_partner_present = false;
    fl.negation_partner_present = false;
    for (std::size_t j = 0; j < n; ++j) {
      const bool conj = dist(pts[j], z.conj()) < tol;
      const bool neg = dist(pts[j], -z) < tol;
      const bool negconj = dist(pts[j], -z.conj()) < tol;
      if (j != i) {
        fl.conjugate_partner_present = fl.conjugate_partner_present || conj;
        fl.negation_partner_present = fl.negation_partner_present || neg;
        if (conj || neg || negconj) parent[find(i)] = find(j);
      }
    }
    if (!fl.conjugate_partner_present) rep.warnings.push_back("no conjugate partner for " + z.to_string(12));
    if (spec.negation_symmetric() && !fl.negation_partner_present) {
      rep.warnings.push_back("no negation partner for " + z.to_string(12));
    }
  }
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(rep.groups.size());
      rep.groups.push_back({});
    }
    rep.groups[static_cast<std::size_t>(slot[r])].members.push_back(i);
  }
  for (auto& g : rep.groups) {
    const auto& mem = g.members;
    if (mem.size() == 1) {
      g.kind = GroupKind::Singleton;
    } else if (mem.size() == 4) {
      g.kind = GroupKind::Quadruplet;
    } else if (mem.size() == 2) {
      const bool imag = eps[mem[0]].flags.imaginary_axis && eps[mem[1]].flags.imaginary_axis;
      if (imag) {
        g.kind = GroupKind::ImaginaryDoublet;
      } else if (dist(pts[mem[0]], pts[mem[1]].conj()) < tol) {
        g.kind = GroupKind::ConjugatePair;
      } else {
        g.kind = GroupKind::NegationPair;
      }
    } else {
      g.kind = GroupKind::Other;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

const char* ring_path_name(RingPath r) {
  switch (r) {
    case RingPath::Exact:
      return "exact";
    case RingPath::Float:
      return "float";
    default:
      return "auto";
  }
}

std::optional<RingPath> ring_path_from_name(const std::string& s) {
  if (s == "exact") return RingPath::Exact;
  if (s == "float") return RingPath::Float;
  if (s == "auto") return RingPath::Auto;
  return std::nullopt;
}

RingTag resolve_ring(const ModelSpec& spec, const ScanOptions& opts) {
  const bool exact_capable = spec.kind != ModelKind::BoxX2;
  switch (opts.ring) {
    case RingPath::Exact:
      if (!exact_capable) throw Error(std::string(kind_name(spec.kind)) + " has no exact secular polynomial");
      return RingTag::Exact;
    case RingPath::Float:
      return RingTag::Float;
    default:
      return exact_capable && opts.n_max <= kAutoExactMaxDim ? RingTag::Exact : RingTag::Float;
  }
}

namespace {

struct RawRoots {
  std::vector<BigComplex> roots;  // scaled variable
  UniPoly<BigComplex> f;
  std::size_t degree = 0;
  bool even_reduced = false;
};

RawRoots raw_roots(const SecularPoly& sp, RingTag ring, Precision precision) {
  RawRoots out;
  const std::optional<std::size_t> expected = sp.model.kind == ModelKind::Toy3 ? std::nullopt : std::optional(sp.dim);
  if (ring == RingTag::Exact) {
    const Discriminant d = disc_in_e(sp.exact(), expected);
    out.degree = *d.raw.degree();
    out.even_reduced = d.even_reduced;
    out.f = to_bigcomplex(d.normalized, Precision{precision.bits + 64});
    out.roots = roots_all(d.normalized, RootOptions{precision}).roots;
  } else {
    const SampledDiscriminant d = disc_in_e_sampled(sp.real(precision), SampleOptions{precision}, expected);
    out.degree = *d.normalized.degree();
    out.even_reduced = d.even_reduced;
    out.f = to_bigcomplex(d.normalized, precision);
    out.roots = roots_all(d.normalized, RootOptions{precision}).roots;
  }
  return out;
}

}  // namespace

DimensionRoots dimension_roots(const ModelSpec& spec, std::size_t n, RingTag ring, Precision precision) {
  const auto t0 = std::chrono::steady_clock::now();
  DimensionRoots out;
  out.record.n = n;
  SecularPoly sp = secular(spec, n);
  if (ring == RingTag::Exact && !sp.is_exact()) throw Error("model has no exact secular polynomial");
  RawRoots raw = raw_roots(sp, ring, precision);

  std::vector<double> shift(raw.roots.size(), 0.0);
  if (ring == RingTag::Float) {
    // The float path is re-run at twice the precision; the 2P roots are kept.
    const Precision p2{precision.bits * 2};
    RawRoots hi = raw_roots(sp, ring, p2);
    double worst = -1e300;
    if (hi.roots.size() == raw.roots.size()) {
      const auto near = nearest(hi.roots, raw.roots);
      for (std::size_t i = 0; i < hi.roots.size(); ++i) {
        shift[i] = dist(hi.roots[i], raw.roots[near[i]]);
        worst = std::max(worst, shift[i] > 0 ? std::log2(shift[i]) : -1e300);
      }
    } else {
      shift.assign(hi.roots.size(), std::numeric_limits<double>::infinity());
      worst = std::numeric_limits<double>::infinity();
    }
    out.record.revalidation_log2_shift = worst;
    for (auto& z : hi.roots) z = BigComplex(z, precision);
    raw.roots = std::move(hi.roots);
    raw.f = map_coeffs<BigComplex>(hi.f, [&](const BigComplex& c) { return BigComplex(c, Precision{precision.bits + 64}); });
  }

  const double cluster_tol = std::ldexp(1.0, -static_cast<int>(precision.bits / 8));
  std::vector<BigComplex> scaled_roots = raw.roots;
  const auto clusters = cluster_roots(scaled_roots, cluster_tol);
  const double unstable_at = std::ldexp(1.0, -static_cast<int>(precision.bits / 4));
  for (const auto& cl : clusters) {
    out.scaled.push_back(BigComplex(cl.center, precision));
    out.roots.push_back(scale_map(spec, out.scaled.back()));
    out.multiplicity.push_back(cl.multiplicity);
    bool bad = false;
    for (auto m : cl.members) bad = bad || shift[m] > unstable_at;
    out.unstable.push_back(bad);
  }
  out.record.ok = true;
  out.record.degree_f = raw.degree;
  out.record.root_count = raw.roots.size();
  out.record.even_reduced = raw.even_reduced;
  out.f = std::move(raw.f);
  out.secular = std::move(sp);
  out.record.seconds = seconds_since(t0);
  return out;
}

ScanReport scan(const ModelSpec& spec, const ScanOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.model = spec;
  rep.tol = opts.tol;
  rep.precision = opts.precision;
  if (!(opts.tol > 0)) throw Error("scan: tolerance must be positive");

  std::vector<std::size_t> dims;
  if (spec.kind == ModelKind::Toy3) {
    dims = {3};
  } else {
    if (opts.n_min < 2 || opts.n_max <= opts.n_min) throw Error("scan: need 2 <= n_min < n_max");
    for (std::size_t n = opts.n_min; n <= opts.n_max; ++n) dims.push_back(n);
  }
  rep.n_min = dims.front();
  rep.n_max = dims.back();
  rep.ring = resolve_ring(spec, opts);

  std::vector<std::future<DimensionRoots>> jobs;
  for (std::size_t n : dims) {
    jobs.push_back(std::async(opts.parallel ? std::launch::async : std::launch::deferred,
                              [&spec, n, &rep] { return dimension_roots(spec, n, rep.ring, rep.precision); }));
  }
  std::vector<std::optional<DimensionRoots>> results;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    try {
      results.emplace_back(jobs[i].get());
      rep.dims.push_back(results.back()->record);
    } catch (const std::exception& e) {
      results.emplace_back(std::nullopt);
      DimensionRecord r;
      r.n = dims[i];
      r.error = e.what();
      rep.dims.push_back(r);
      rep.warnings.push_back("dimension " + std::to_string(dims[i]) + ": " + e.what());
    }
  }

  // Largest dimension whose predecessor also succeeded.
  std::optional<std::size_t> top;
  if (dims.size() == 1) {
    if (results[0]) top = 0;
  } else {
    for (std::size_t i = dims.size(); i-- > 1;) {
      if (results[i] && results[i - 1]) {
        top = i;
        break;
      }
    }
  }
  if (!top) {
    rep.warnings.push_back("no usable dimension pair; nothing accepted");
    rep.seconds = seconds_since(t0);
    return rep;
  }
  const DimensionRoots& cur = *results[*top];
  rep.accepted_n = dims[*top];

  const double real_tol = opts.tol;
  std::vector<std::optional<BigReal>> residual(cur.roots.size());
  if (dims.size() == 1) {
    for (auto& r : residual) r = BigReal::zero(opts.precision);
  } else {
    const DimensionRoots& prev = *results[*top - 1];
    rep.accepted_prev = dims[*top - 1];
    for (auto& m : match_filter(cur.roots, prev.roots, opts.tol)) residual[m.index_n] = std::move(m.residual);
  }

  for (std::size_t i = 0; i < cur.roots.size(); ++i) {
    const BigComplex& z = cur.roots[i];
    const std::size_t mult = cur.multiplicity[i];
    if (!residual[i]) {
      rep.rejected.push_back({z, "spurious", mult});
      continue;
    }
    if (std::fabs(z.im().to_double()) < real_tol) {
      rep.rejected.push_back({z, "real_suspect", mult});
      continue;
    }
    if (cur.unstable[i]) {
      rep.rejected.push_back({z, "unstable", mult});
      continue;
    }
    ExceptionalPoint ep;
    ep.lambda = z;
    ep.residual = *residual[i];
    ep.accepted_dim = rep.accepted_n;
    ep.multiplicity = mult;
    ep.energy = BigComplex::zero(opts.precision);
    if (opts.refine) {
      try {
        const RefinedEP r = refine_ep(*cur.secular, cur.scaled[i], RefineOptions{opts.precision}, &cur.f);
        const BigComplex lam = scale_map(spec, r.lambda);
        if (dist(lam, z) > std::max(1e-8, 1e-8 * abs(z).to_double())) {
          rep.warnings.push_back("refinement of " + z.to_string(12) + " moved to " + lam.to_string(12) + "; kept the root");
        } else {
          ep.lambda = lam;
          ep.refined = true;
        }
        ep.energy = scale_energy(spec, r.energy);
        ep.coalescence = r.coalescence;
        ep.disc_order = r.disc_order;
      } catch (const std::exception& e) {
        rep.warnings.push_back("refinement of " + z.to_string(12) + " failed: " + e.what());
      }
    }
    rep.accepted.push_back(std::move(ep));
  }

  SymmetryReport sym = symmetry_partition(rep.accepted, spec, opts.tol);
  rep.groups = std::move(sym.groups);
  for (auto& w : sym.warnings) rep.warnings.push_back(std::move(w));
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace epdisc
