#pragma once

// Exceptional points: roots of F(λ) across truncation dimensions, the
// convergence filter, Newton refinement and symmetry classification.

#include "epdisc/charpoly.hpp"
#include "epdisc/models.hpp"
#include "epdisc/numeric.hpp"
#include "epdisc/polynomial.hpp"
#include "epdisc/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epdisc {

struct EpFlags {
  bool real_suspect = false;
  bool imaginary_axis = false;
  bool conjugate_partner_present = false;
  bool negation_partner_present = false;

  friend bool operator==(const EpFlags&, const EpFlags&) = default;
};

struct ExceptionalPoint {
  /// In the model's own units (after scale_map).
  BigComplex lambda;
  /// |λ^(n) - λ^(n-1)| in the same units.
  BigReal residual;
  std::size_t accepted_dim = 0;
  /// Coalescence energy from refinement, model units.
  BigComplex energy;
  /// Roots of F merged into this point.
  std::size_t multiplicity = 1;
  /// Eigenvalues that coalesce, and the order of the root of F.
  std::size_t coalescence = 0;
  std::size_t disc_order = 0;
  bool refined = false;
  EpFlags flags;
};

struct RejectedRoot {
  BigComplex lambda;
  std::string reason;  // "spurious", "real_suspect", "unstable", ...
  std::size_t multiplicity = 1;
};

/// (λ, residual) pairs of mutually nearest roots closer than tol.
struct Match {
  std::size_t index_n = 0;
  std::size_t index_prev = 0;
  BigComplex lambda;
  BigReal residual;
};

std::vector<Match> match_filter(const std::vector<BigComplex>& roots_n, const std::vector<BigComplex>& roots_prev,
                                double tol = 1e-3);

struct RefineOptions {
  Precision precision = kDefaultPrecision;
  int max_iterations = 80;
  /// Estimate the order of the root of F by a winding number.
  bool estimate_order = true;
};

struct RefinedEP {
  BigComplex lambda;
  BigComplex energy;
  /// Number of coalescing roots of p(., λ).
  std::size_t coalescence = 0;
  /// Order of the root of F (0 when not estimated).
  std::size_t disc_order = 0;
  /// The Newton system was escalated past (p, ∂p/∂E).
  bool higher_order = false;
  int iterations = 0;
};

/// Newton iteration on (∂^{k-2}p, ∂^{k-1}p) = 0 in (E, λ), starting at k = 2 and
/// escalating while the Jacobian is singular. λ0 is in the polynomial's own
/// (scaled) variable. `f` optionally supplies F for the order estimate.
RefinedEP refine_ep(const SecularPoly& p, const BigComplex& lambda0, const RefineOptions& opts = {},
                    const UniPoly<BigComplex>* f = nullptr);

enum class GroupKind { Quadruplet, ImaginaryDoublet, ConjugatePair, NegationPair, Singleton, Other };
const char* group_kind_name(GroupKind k);
std::optional<GroupKind> group_kind_from_name(const std::string& s);

struct SymmetryGroup {
  GroupKind kind = GroupKind::Singleton;
  std::vector<std::size_t> members;

  friend bool operator==(const SymmetryGroup&, const SymmetryGroup&) = default;
};

struct SymmetryReport {
  std::vector<SymmetryGroup> groups;
  std::vector<std::string> warnings;
};

/// Groups EPs with their conjugate and negation partners and sets the
/// partner flags in place.
SymmetryReport symmetry_partition(std::vector<ExceptionalPoint>& eps, const ModelSpec& spec, double tol);

bool closed_under_conjugation(const std::vector<BigComplex>& set, double tol);
bool closed_under_negation(const std::vector<BigComplex>& set, double tol);
/// -a lies in b for every a in a, and conversely.
bool sets_related_by_negation(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b, double tol);

enum class RingPath { Exact, Float, Auto };
const char* ring_path_name(RingPath r);
std::optional<RingPath> ring_path_from_name(const std::string& s);

struct ScanOptions {
  std::size_t n_min = 2;
  std::size_t n_max = 3;
  double tol = 1e-3;
  Precision precision = kDefaultPrecision;
  RingPath ring = RingPath::Auto;
  bool refine = true;
  bool parallel = true;
};

/// The exact path serves models with rational secular polynomials up to this dimension.
constexpr std::size_t kAutoExactMaxDim = 40;

/// Ring actually used by a scan.
RingTag resolve_ring(const ModelSpec& spec, const ScanOptions& opts);

struct DimensionRecord {
  std::size_t n = 0;
  bool ok = false;
  std::string error;
  std::size_t degree_f = 0;
  std::size_t root_count = 0;
  bool even_reduced = false;
  /// Float path: 2P re-run movement of the roots, log2 of the largest shift.
  std::optional<double> revalidation_log2_shift;
  double seconds = 0.0;

  friend bool operator==(const DimensionRecord&, const DimensionRecord&) = default;
};

struct ScanReport {
  ModelSpec model;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  double tol = 1e-3;
  Precision precision = kDefaultPrecision;
  RingTag ring = RingTag::Exact;
  std::vector<DimensionRecord> dims;
  /// Dimensions (n, n-1) whose matches form the accepted set; n_prev = 0 for
  /// single-dimension models.
  std::size_t accepted_n = 0;
  std::size_t accepted_prev = 0;
  std::vector<ExceptionalPoint> accepted;
  std::vector<RejectedRoot> rejected;
  std::vector<SymmetryGroup> groups;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

/// Roots of F at one dimension, merged into clusters. `scaled` holds the
/// cluster centres in the polynomial's own variable, `roots` in model units.
struct DimensionRoots {
  DimensionRecord record;
  std::vector<BigComplex> scaled;
  std::vector<BigComplex> roots;
  std::vector<std::size_t> multiplicity;
  /// Float path: the root moved by more than 2^{-P/4} at 2P.
  std::vector<bool> unstable;
  std::optional<SecularPoly> secular;
  UniPoly<BigComplex> f;
};

DimensionRoots dimension_roots(const ModelSpec& spec, std::size_t n, RingTag ring, Precision precision);

ScanReport scan(const ModelSpec& spec, const ScanOptions& opts);

}  // namespace epdisc
