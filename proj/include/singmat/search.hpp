#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singmat/structure.hpp"

namespace singmat {

// Number of d-dimensional subspaces of F_q^m. Exact; throws
// std::overflow_error if the count does not fit in 64 bits.
std::uint64_t gaussian_binomial(int m, int d, std::uint64_t q);
// Subspace count times q^(m-d) coset representatives.
std::uint64_t affine_subspace_count(int m, int d, std::uint64_t q);

// Streams every d-dimensional linear subspace of Mat_{n,p}(F_q) exactly
// once, generated directly in canonical form: pivot-column profiles in
// lexicographic order, free entries in odometer order. Return false to
// stop early.
void enumerate_linear_subspaces(int n, int p, FieldCtx field, int d,
                                const std::function<bool(const LinearMatrixSpace&)>& fn);

// Streams every d-dimensional affine subspace exactly once: each direction
// paired with its q^(np-d) canonical coset representatives.
void enumerate_affine_spaces(int n, int p, FieldCtx field, int d,
                             const std::function<bool(const AffineMatrixSpace&)>& fn);

// Scan engine selection; Auto picks the bit-packed path for q = 2. Tests
// force Generic to cross-check the packed path.
enum class ScanEngine { Auto, Packed, Generic };

struct VerifyOptions {
  int jobs = 1;
  ScanEngine engine = ScanEngine::Auto;
  // Scan a custom dimension instead of the default p(n-1)+1 / p(n-1).
  // Violations in bound mode then mean "spaces without a rank-n element"
  // at that dimension, which is only a theorem violation above p(n-1).
  int dim_override = -1;
  std::uint64_t cap = kDefaultEnumerationCap;
};

// Outcome of one exhaustive scan. Everything except wall_seconds is
// deterministic: counts merge commutatively across work units and the
// line lists are sorted, so reports are bit-identical for any worker
// count. serialize() excludes wall_seconds for that reason.
struct VerificationReport {
  std::string mode;  // "bound" or "equality"
  int n = 0;
  int p = 0;
  std::uint32_t q = 0;
  int target_dim = 0;
  std::uint64_t spaces_scanned = 0;
  std::uint64_t singular_spaces_found = 0;
  std::map<std::string, std::uint64_t> outcome_histogram;
  std::vector<std::string> violations;          // sorted "reason: space" lines
  std::vector<std::string> exceptional_spaces;  // sorted one-line canonical forms
  std::uint64_t checksum = 0;  // order-independent sum of per-space hashes
  double wall_seconds = 0.0;

  bool ok() const { return violations.empty(); }
  std::string serialize() const;
};

// Supported (n, p, q) parameter table for the exhaustive verifications;
// anything else throws BudgetExceededError.
bool params_supported(int n, int p, std::uint32_t q);

// Scans all affine spaces of dimension p(n-1)+1 and confirms each contains
// a rank-n element; any space without one is recorded as a violation.
VerificationReport verify_dimension_bound(int n, int p, std::uint32_t q,
                                          const VerifyOptions& options = {});

// Scans all affine spaces of dimension p(n-1); classifies each singular one
// and tabulates witness combinations. Also checks the rank facts that hold
// for maximal singular spaces: dim S_(y) in {0, p-1, p} and rank(yhat) in
// {0, 1, p} for every projective y, plus rank(yhat) = p - dim S_(y).
VerificationReport verify_equality_classification(int n, int p, std::uint32_t q,
                                                  const VerifyOptions& options = {});

// First space (in canonical enumeration order) of dimension d with
// max_rank < n that violates the applicable claim: for d > p(n-1) any
// singular space violates the dimension bound; for d = p(n-1) a singular
// space with no kernel-type witness violates the witness claim; for
// d < p(n-1) there is no claim (returns nullopt).
std::optional<AffineMatrixSpace> find_counterexample(int n, int p, std::uint32_t q, int d);

}  // namespace singmat
