#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "singmat/matrix.hpp"

namespace singmat {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 24;

// Linear subspace of Mat_{n,p}(F_q), held in canonical form: the rows of
// basis_rref() are the vectorized basis in reduced row echelon form, so
// equality of spaces is equality of these bytes. Immutable value type.
class LinearMatrixSpace {
 public:
  static LinearMatrixSpace span(int n, int p, FieldCtx field,
                                const std::vector<Matrix>& generators);
  static LinearMatrixSpace zero(int n, int p, FieldCtx field);
  static LinearMatrixSpace full(int n, int p, FieldCtx field);
  // Trusted constructor for rows already in RREF with the given pivot
  // columns (used by the subspace enumerator, which generates RREF forms
  // directly). Validated with assertions only.
  static LinearMatrixSpace from_rref(int n, int p, FieldCtx field, Matrix rref_rows,
                                     std::vector<int> pivots);

  int mat_rows() const { return n_; }
  int mat_cols() const { return p_; }
  int ambient_dim() const { return n_ * p_; }
  const FieldCtx& field() const { return field_; }
  int dim() const { return basis_.rows(); }

  const Matrix& basis_rref() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Matrix basis_element(int k) const;
  std::vector<Matrix> basis() const;

  bool contains(const Matrix& m) const;
  // Coefficients of m in the canonical basis, if m lies in the space.
  std::optional<Vec> coordinates(const Matrix& m) const;
  // Canonical coset representative: v reduced to zero on all pivot
  // coordinates. v and the result differ by an element of the space.
  Vec reduce_vec(Vec v) const;

  bool operator==(const LinearMatrixSpace&) const = default;

 private:
  LinearMatrixSpace(int n, int p, FieldCtx field, Matrix basis, std::vector<int> pivots);

  int n_;
  int p_;
  FieldCtx field_;
  Matrix basis_;  // dim x (n*p), RREF
  std::vector<int> pivots_;
};

// Affine subspace point + direction. The stored point is the canonical
// coset representative (zero on the direction's pivot coordinates), so two
// descriptions of the same affine set compare equal.
class AffineMatrixSpace {
 public:
  AffineMatrixSpace(const Matrix& point, LinearMatrixSpace direction);
  static AffineMatrixSpace from_linear(const LinearMatrixSpace& space);

  const Matrix& point() const { return point_; }
  const LinearMatrixSpace& direction() const { return direction_; }
  int mat_rows() const { return direction_.mat_rows(); }
  int mat_cols() const { return direction_.mat_cols(); }
  const FieldCtx& field() const { return direction_.field(); }
  int dim() const { return direction_.dim(); }

  // True iff the zero matrix belongs to the space.
  bool is_linear() const { return point_.is_zero(); }
  bool contains(const Matrix& m) const;

  bool operator==(const AffineMatrixSpace&) const = default;

 private:
  Matrix point_;
  LinearMatrixSpace direction_;
};

// Number of elements q^dim, saturating.
std::uint64_t space_size(const AffineMatrixSpace& s);

// Visits all q^dim elements exactly once (coefficient odometer order).
// Returns false if the callback stopped the walk early. Throws
// CapExceededError when q^dim > cap.
bool for_each_element(const AffineMatrixSpace& s,
                      const std::function<bool(const Matrix&)>& fn,
                      std::uint64_t cap = kDefaultEnumerationCap);

std::vector<Matrix> elements(const AffineMatrixSpace& s,
                             std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Matrix> elements(const LinearMatrixSpace& s,
                             std::uint64_t cap = kDefaultEnumerationCap);

// Max of rank over all elements; exhaustive, short-circuits at min(n, p).
int max_rank(const AffineMatrixSpace& s, std::uint64_t cap = kDefaultEnumerationCap);
int max_rank(const LinearMatrixSpace& s, std::uint64_t cap = kDefaultEnumerationCap);

// Image space {P M Q : M in s} for invertible P (n x n) and Q (p x p).
// Throws SingularTransformError if either factor is singular.
LinearMatrixSpace transform(const LinearMatrixSpace& s, const Matrix& P, const Matrix& Q);
AffineMatrixSpace transform(const AffineMatrixSpace& s, const Matrix& P, const Matrix& Q);

// S_(y): the subspace of S of matrices all of whose columns lie in the line
// spanned by y. Solved as a linear system in S's basis coordinates, no
// enumeration. Throws ZeroVectorError for y = 0.
LinearMatrixSpace s_sub_y(const LinearMatrixSpace& s, const Vec& y);

// Space file format: header "n p q dim", then one matrix per line in the
// matrix text format; the first matrix is the affine point, the remaining
// dim lines are direction generators. Input is canonicalized on read.
AffineMatrixSpace read_space(std::istream& in);
void write_space(std::ostream& out, const AffineMatrixSpace& s);
std::string space_to_text(const AffineMatrixSpace& s);
// Compact single-line form "n p q dim | point | basis1 | ...".
std::string space_one_line(const AffineMatrixSpace& s);

}  // namespace singmat
