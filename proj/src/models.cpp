#include "epdisc/models.hpp"

#include <array>
#include <cstdlib>

namespace epdisc {

namespace {

using Bi = BiPoly<Rational>;

constexpr std::array<std::pair<ModelKind, const char*>, 9> kKindNames{{
    {ModelKind::BoxX, "box-x"},
    {ModelKind::BoxX2, "box-x2"},
    {ModelKind::MathieuPiEven, "mathieu-pi-even"},
    {ModelKind::MathieuPiOdd, "mathieu-pi-odd"},
    {ModelKind::Mathieu2PiEven, "mathieu-2pi-even"},
    {ModelKind::Mathieu2PiOdd, "mathieu-2pi-odd"},
    {ModelKind::RigidRotor, "rotor"},
    {ModelKind::SymmetricTop, "top"},
    {ModelKind::Toy3, "toy3"},
}};

Bi lam_sq(const Rational& c) { return Bi::term(c, 0, 2); }
// c + d λ - E
Bi diag(const Rational& c, const Rational& d = Rational(0)) {
  return Bi::from_terms({{c, 0, 0}, {d, 0, 1}, {Rational(-1), 1, 0}});
}

BigReal pi_pow(int k, Precision p) {
  BigReal r(1L, p);
  const BigReal pi = BigReal::pi(p);
  for (int i = 0; i < k; ++i) r = r * pi;
  return r;
}

}  // namespace

bool ModelSpec::is_tridiagonal() const {
  switch (kind) {
    case ModelKind::MathieuPiEven:
    case ModelKind::MathieuPiOdd:
    case ModelKind::Mathieu2PiEven:
    case ModelKind::Mathieu2PiOdd:
    case ModelKind::RigidRotor:
    case ModelKind::SymmetricTop:
      return true;
    default:
      return false;
  }
}

bool ModelSpec::is_dense() const { return kind == ModelKind::BoxX || kind == ModelKind::BoxX2; }

bool ModelSpec::negation_symmetric() const {
  switch (kind) {
    case ModelKind::BoxX:
    case ModelKind::MathieuPiEven:
    case ModelKind::MathieuPiOdd:
    case ModelKind::RigidRotor:
      return true;
    case ModelKind::SymmetricTop:
      return M * K == 0;
    default:
      return false;
  }
}

std::string ModelSpec::label() const {
  std::string s = kind_name(kind);
  switch (kind) {
    case ModelKind::BoxX2:
      s += parity == Parity::Even ? "-even" : "-odd";
      break;
    case ModelKind::RigidRotor:
      s += "-M" + std::to_string(M);
      break;
    case ModelKind::SymmetricTop:
      s += "-M" + std::to_string(M) + "-K" + std::to_string(K);
      break;
    case ModelKind::Toy3:
      s += "-beta" + to_string(beta);
      break;
    default:
      break;
  }
  return s;
}

const char* kind_name(ModelKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<ModelKind> kind_from_name(const std::string& s) {
  for (const auto& [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

RecurrenceCoeffs recurrence_coeffs(const ModelSpec& spec, std::size_t idx) {
  const long i = static_cast<long>(idx);
  RecurrenceCoeffs r;
  switch (spec.kind) {
    case ModelKind::MathieuPiEven:
      if (i >= 1) r.asq = lam_sq(Rational(i == 1 ? 2 : 1));
      r.b = diag(Rational(4 * i * i));
      break;
    case ModelKind::MathieuPiOdd:
      if (i >= 1) r.asq = lam_sq(Rational(1));
      r.b = diag(Rational(4 * (i + 1) * (i + 1)));
      break;
    case ModelKind::Mathieu2PiEven:
    case ModelKind::Mathieu2PiOdd: {
      if (i >= 1) r.asq = lam_sq(Rational(1));
      const long sign = spec.kind == ModelKind::Mathieu2PiEven ? 1 : -1;
      r.b = diag(Rational((2 * i + 1) * (2 * i + 1)), Rational(i == 0 ? sign : 0));
      break;
    }
    case ModelKind::RigidRotor: {
      if (spec.M < 0) throw Error("rotor: M must be non-negative");
      const long M = spec.M;
      if (i >= 1) {
        Rational c(i * (i + 2 * M), 4 * (i + M) * (i + M) - 1);
        c.canonicalize();
        r.asq = lam_sq(c);
      }
      r.b = diag(Rational((i + M) * (i + M + 1)));
      break;
    }
    case ModelKind::SymmetricTop: {
      const long M = spec.M;
      const long K = spec.K;
      const long J = std::max(std::labs(M), std::labs(K)) + i;
      if (i >= 1) {
        Rational c((J * J - K * K) * (J * J - M * M), J * J * (4 * J * J - 1));
        c.canonicalize();
        r.asq = lam_sq(c);
      }
      // The λMK/(J(J+1)) term is taken as zero whenever MK = 0, including J = 0.
      Rational mk(0);
      if (M * K != 0) {
        mk = Rational(-M * K, J * (J + 1));
        mk.canonicalize();
      }
      r.b = diag(Rational(J * (J + 1)), mk);
      break;
    }
    default:
      throw Error(std::string("recurrence_coeffs: ") + kind_name(spec.kind) + " is not a tridiagonal model");
  }
  return r;
}

BigReal box_x_element(long m, long n, Precision p) {
  const long a = m + 1;
  const long b = n + 1;
  if ((a + b) % 2 == 0) return BigReal::zero(p);
  const long d = a * a - b * b;
  const BigReal pi = BigReal::pi(p);
  return BigReal(Rational(-16 * a * b, d * d), p) / (pi * pi);
}

BigReal box_x2_element(long m, long n, Precision p) {
  const long a = m + 1;
  const long b = n + 1;
  const BigReal pi2 = BigReal::pi(p) * BigReal::pi(p);
  if (m == n) return BigReal(Rational(1, 3), p) - BigReal(Rational(2, a * a), p) / pi2;
  if ((a + b) % 2 != 0) return BigReal::zero(p);
  const long d = a * a - b * b;
  return BigReal(Rational(32 * a * b, d * d), p) / pi2;
}

ScaleDescriptor scale_descriptor(const ModelSpec& spec) {
  ScaleDescriptor s;
  if (spec.kind == ModelKind::BoxX) {
    // Ẽ = 4E/π², λ̃ = 4λ/π⁴
    s = {Rational(1, 4), 4, Rational(1, 4), 2};
  } else if (spec.kind == ModelKind::BoxX2) {
    // Ẽ = 4E/π², λ̃ = 4λ/π²
    s = {Rational(1, 4), 2, Rational(1, 4), 2};
  }
  return s;
}

BigReal ScaleDescriptor::lambda_scale(Precision p) const { return BigReal(lambda_factor, p) * pi_pow(lambda_pi_power, p); }
BigReal ScaleDescriptor::energy_scale(Precision p) const { return BigReal(energy_factor, p) * pi_pow(energy_pi_power, p); }

BigComplex scale_map(const ModelSpec& spec, const BigComplex& lambda_scaled) {
  const ScaleDescriptor s = scale_descriptor(spec);
  if (s.is_identity()) return lambda_scaled;
  return lambda_scaled * s.lambda_scale(lambda_scaled.precision());
}

BigComplex scale_energy(const ModelSpec& spec, const BigComplex& energy_scaled) {
  const ScaleDescriptor s = scale_descriptor(spec);
  if (s.is_identity()) return energy_scaled;
  return energy_scaled * s.energy_scale(energy_scaled.precision());
}

DenseModelMatrix dense_matrix(const ModelSpec& spec, std::size_t dim) {
  if (!spec.is_dense()) throw Error(std::string("dense_matrix: ") + kind_name(spec.kind) + " is not a box model");
  if (dim < 2) throw Error("dense_matrix: dimension must be at least 2");
  DenseModelMatrix out;
  out.model = spec;
  out.dim = dim;
  out.scale = scale_descriptor(spec);
  for (std::size_t k = 0; k < dim; ++k) {
    const long idx = static_cast<long>(k);
    out.basis.push_back(spec.kind == ModelKind::BoxX2 ? 2 * idx + (spec.parity == Parity::Odd ? 1 : 0) : idx);
  }

  if (spec.kind == ModelKind::BoxX) {
    Matrix<UniPoly<Rational>> h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const long a = out.basis[i] + 1;
        const long b = out.basis[j] + 1;
        Rational kin(i == j ? a * a : 0);
        Rational pot(0);
        if ((a + b) % 2 == 1) {
          const long d = a * a - b * b;
          pot = Rational(-16 * a * b, d * d);
          pot.canonicalize();
        }
        h(i, j) = UniPoly<Rational>({kin, pot});
      }
    }
    out.h = std::move(h);
    return out;
  }

  // x² = δ/3 + r/π² with r rational: h = K + λ̃ δ/3 + (λ̃/π²) r.
  const Precision p = spec.precision;
  Matrix<UniPoly<BigReal>> h(dim, dim);
  Matrix<UniPoly<Rational>> core(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const long a = out.basis[i] + 1;
      const long b = out.basis[j] + 1;
      Rational r;
      if (i == j) {
        r = Rational(-2, a * a);
      } else {
        const long d = a * a - b * b;
        r = Rational(32 * a * b, d * d);
      }
      r.canonicalize();
      const Rational kin(i == j ? a * a : 0);
      core(i, j) = UniPoly<Rational>({kin, r});
      h(i, j) = UniPoly<BigReal>({BigReal(kin, p), box_x2_element(out.basis[i], out.basis[j], p)});
    }
  }
  out.h = std::move(h);
  out.split = RationalSplit{std::move(core), Rational(1, 3), 2};
  return out;
}

}  // namespace epdisc
