#pragma once

// All complex roots of a univariate polynomial by Aberth-Ehrlich iteration.

#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"

#include <vector>

namespace epdisc {

struct RootOptions {
  Precision precision = kDefaultPrecision;
  /// 0 chooses a cap from the degree.
  int max_iterations = 0;
};

struct RootDiagnostics {
  /// Top coefficients that rounded to zero at the working precision.
  std::size_t trimmed_leading = 0;
  /// Exact zero roots split off before iterating.
  std::size_t zero_roots = 0;
  int iterations = 0;
  /// Roots were taken in μ = λ² for an even polynomial.
  bool even_reduced = false;
  /// Largest |F(λ)| / Σ|c_k||λ|^k over the returned roots, as log2.
  double worst_log2_residual = 0.0;
};

struct RootSet {
  std::vector<BigComplex> roots;
  RootDiagnostics diagnostics;
};

class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& what, std::vector<BigComplex> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<BigComplex>& partial() const { return partial_; }

 private:
  std::vector<BigComplex> partial_;
};

/// Every root with multiplicity; each satisfies |F(λ)| <= 2^{-P/2} Σ|c_k||λ|^k.
RootSet roots_all(const UniPoly<BigComplex>& f, const RootOptions& opts = {});
RootSet roots_all(const UniPoly<BigReal>& f, const RootOptions& opts = {});
RootSet roots_all(const UniPoly<Rational>& f, const RootOptions& opts = {});

struct RootCluster {
  BigComplex center;
  std::size_t multiplicity = 0;
  std::vector<std::size_t> members;
};

/// Single-linkage grouping of roots closer than tol; center is the mean.
std::vector<RootCluster> cluster_roots(const std::vector<BigComplex>& roots, double tol);

}  // namespace epdisc
