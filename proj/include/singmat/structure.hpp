#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singmat/spaces.hpp"

namespace singmat {

// Structure of a linear space in which every element has rank <= 1:
// either all elements share the row factor f (FixedForm, space =
// {y f : y in column_factors}) or the column factor y (FixedVector, space =
// {y f : f in row_factors}); Both covers dim <= 1 where the two coincide.
// NotRankOne carries an element of rank >= 2 as certificate.
enum class SchurKind { Zero, FixedForm, FixedVector, Both, NotRankOne };

struct SchurClassification {
  SchurKind kind = SchurKind::Zero;
  std::optional<Vec> fixed_form;                       // f, length p
  std::optional<Vec> fixed_vector;                     // y, length n
  std::optional<LinearMatrixSpace> column_factors;     // subspace of F^n (n x 1)
  std::optional<LinearMatrixSpace> row_factors;        // subspace of row space (1 x p)
  std::optional<Matrix> rank2_certificate;
};

const char* schur_kind_name(SchurKind kind);

// Exact classification with reconstructible witnesses; never enumerates
// elements (works on the basis alone).
SchurClassification classify_rank_one_space(const LinearMatrixSpace& s);

// Fills the interior of a matrix with prescribed first row and first
// column (first_row[0] == first_col[0]) so that the result has rank
// n = len(first_col). Requires n <= p = len(first_row). Possible iff both
// borders are nonzero, or n < p and the first row is nonzero; throws
// NoCompletionError otherwise. try_... is the decidable-predicate form.
Matrix complete_to_full_rank(const Vec& first_row, const Vec& first_col, FieldCtx field);
std::optional<Matrix> try_complete_to_full_rank(const Vec& first_row, const Vec& first_col,
                                                FieldCtx field);

// For n <= p: hypothesis is rank(A) < n and rank(A + E_{n,p}) < n;
// conclusion is rank of the leading (n-1) x (p-1) block < n-1. The
// hypothesis always implies the conclusion.
struct ExtractionCheck {
  bool hypothesis_holds;
  bool conclusion_holds;
};

ExtractionCheck extraction_check(const Matrix& a);

enum class OutcomeStatus { HasFullRank, BelowMaxDim, Classified, TheoremViolation };
enum class WitnessKind { LeftKernel, RightKernel, ExceptionalF2 };

const char* outcome_status_name(OutcomeStatus status);
const char* witness_kind_name(WitnessKind kind);

// LeftKernel: Y != 0 with Y^T M = 0 for every element M (the hyperplane
// orthogonal to Y contains every range). RightKernel: n = p and x != 0
// with M x = 0 for every element. ExceptionalF2: n = p = q = 2 and the
// space is not linear. Vec is empty for ExceptionalF2.
struct Witness {
  WitnessKind kind;
  Vec vec;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct DieudonneOutcome {
  OutcomeStatus status = OutcomeStatus::TheoremViolation;
  std::vector<Witness> witnesses;  // all applicable, projective, lex-sorted
  int max_rank_found = 0;
  int dim = 0;
};

// Classifies an affine space of n x p matrices (n <= p, else ShapeError):
// HasFullRank if some element has rank n; BelowMaxDim if singular with
// dim < p(n-1); otherwise Classified with every applicable witness, or
// TheoremViolation if none exists (which the theorem rules out).
DieudonneOutcome classify_singular_space(const AffineMatrixSpace& s,
                                         std::uint64_t cap = kDefaultEnumerationCap);

std::string outcome_to_text(const DieudonneOutcome& outcome);

// Canonical histogram key for a witness set, e.g. "left_kernel",
// "left_kernel+right_kernel", "exceptional_f2", or "none".
std::string witness_combination_key(const std::vector<Witness>& witnesses);

}  // namespace singmat
