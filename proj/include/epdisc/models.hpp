#pragma once

// The model catalog: three-term recurrence coefficients for the tridiagonal
// families and truncated dense matrices for the particle in a box.

#include "epdisc/matrix.hpp"
#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace epdisc {

enum class ModelKind {
  BoxX,
  BoxX2,
  MathieuPiEven,
  MathieuPiOdd,
  Mathieu2PiEven,
  Mathieu2PiOdd,
  RigidRotor,
  SymmetricTop,
  Toy3,
};

enum class Parity { Even, Odd };

struct ModelSpec {
  ModelKind kind = ModelKind::Toy3;
  /// Basis block for BoxX2.
  Parity parity = Parity::Even;
  /// Rotor M, or top M.
  long M = 0;
  /// Top K.
  long K = 0;
  /// Toy3 coupling.
  Rational beta{1, 10};
  /// Working precision for float-carried models.
  Precision precision = kDefaultPrecision;

  bool is_tridiagonal() const;
  bool is_dense() const;
  /// Whether λ -> -λ maps the model's own determinant onto itself.
  bool negation_symmetric() const;
  /// Stable short label, e.g. "mathieu-pi-even", "top-M1-K-1".
  std::string label() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

const char* kind_name(ModelKind k);
std::optional<ModelKind> kind_from_name(const std::string& s);

/// A_i^2 and B_i of the recurrence A_i c_{i-1} + B_i c_i + A_{i+1} c_{i+1} = 0.
/// Polynomials in (E, λ); E stands for the model's energy variable (ε for
/// the rotor and top).
struct RecurrenceCoeffs {
  BiPoly<Rational> asq;
  BiPoly<Rational> b;
};

RecurrenceCoeffs recurrence_coeffs(const ModelSpec& spec, std::size_t i);

/// λ = lambda_factor π^lambda_pi_power λ̃ and likewise for E.
struct ScaleDescriptor {
  Rational lambda_factor{1};
  int lambda_pi_power = 0;
  Rational energy_factor{1};
  int energy_pi_power = 0;

  bool is_identity() const { return lambda_pi_power == 0 && energy_pi_power == 0 && lambda_factor == 1 && energy_factor == 1; }
  BigReal lambda_scale(Precision p) const;
  BigReal energy_scale(Precision p) const;
};

/// h(λ̃) = core(ν) + shift λ̃ I with ν = λ̃ / π^pi_power, all exact.
struct RationalSplit {
  Matrix<UniPoly<Rational>> core;
  Rational shift;
  int pi_power = 0;
};

/// Truncated matrix of H in scaled units; entries are polynomials in λ̃ of
/// degree at most one. The secular polynomial is det(h(λ̃) - Ẽ I).
struct DenseModelMatrix {
  ModelSpec model;
  std::size_t dim = 0;
  std::variant<Matrix<UniPoly<Rational>>, Matrix<UniPoly<BigReal>>> h;
  ScaleDescriptor scale;
  /// Box quantum numbers n of the basis functions, in matrix order.
  std::vector<long> basis;
  /// Exact decomposition of float-carried matrices, when one exists.
  std::optional<RationalSplit> split;
};

DenseModelMatrix dense_matrix(const ModelSpec& spec, std::size_t dim);

/// Closed-form box matrix elements <m|x|n> and <m|x^2|n>.
BigReal box_x_element(long m, long n, Precision p);
BigReal box_x2_element(long m, long n, Precision p);

ScaleDescriptor scale_descriptor(const ModelSpec& spec);
/// Scaled λ̃ back to the model's λ; the identity for unscaled models.
BigComplex scale_map(const ModelSpec& spec, const BigComplex& lambda_scaled);
BigComplex scale_energy(const ModelSpec& spec, const BigComplex& energy_scaled);

}  // namespace epdisc
