#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "singmat/field.hpp"

namespace singmat {

// Dense matrix over F_q, row-major storage, 0-based indices internally
// (documentation and CLI speak 1-based). Operators act on column vectors:
// an n x p matrix maps F_q^p -> F_q^n. Value type, safe to copy and to
// share read-only across threads.
class Matrix {
 public:
  Matrix(int rows, int cols, FieldCtx field);  // zero-filled
  static Matrix identity(int n, FieldCtx field);
  // Entries are reduced mod q; rows must be equally long.
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows,
                          FieldCtx field);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldCtx& field() const { return field_; }

  elem_t operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
  elem_t& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }

  std::span<const elem_t> row(int i) const {
    return {data_.data() + std::size_t(i) * cols_, std::size_t(cols_)};
  }

  const std::vector<elem_t>& data() const { return data_; }

  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
           a.data_ == b.data_;
  }

 private:
  int rows_;
  int cols_;
  FieldCtx field_;
  std::vector<elem_t> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, elem_t c);

// Row rank, exact. Dispatches to the bit-packed F_2 path when q = 2 and
// the matrix has at most 64 columns.
int rank(const Matrix& m);

namespace detail {
// Generic elimination path, any q. Kept callable so tests can cross-check
// the packed fast path against it.
int rank_bytewise(const Matrix& m);
}  // namespace detail

struct Rref {
  Matrix mat;
  std::vector<int> pivot_cols;
};

// Unique reduced row echelon form (pivots 1, pivot columns otherwise zero,
// zero rows dropped to the bottom but retained).
Rref rref(const Matrix& m);

// Rows of the result form the canonical (RREF) basis of {x : Mx = 0},
// as row vectors of length cols(M). Zero-dimensional kernel -> 0 rows.
Matrix right_kernel(const Matrix& m);
// Canonical basis of {y : y^T M = 0}, rows of length rows(M).
Matrix left_kernel(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);
// One solution of Mx = b, if any (free coordinates set to zero).
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// Outer product y * f: the rank <= 1 operator x |-> f(x) y, shape
// len(y) x len(f). Rank 1 iff both factors are nonzero.
Matrix rank_one(const Vec& f, const Vec& y, FieldCtx field);

// Single 1 at (i, j), 0-based; throws std::out_of_range on bad indices.
Matrix matrix_unit(int n, int p, int i, int j, FieldCtx field);

// Trace pairing tr(v o u) = sum_{i,j} v(j,i) u(i,j) for u n x p, v p x n.
elem_t trace_pair(const Matrix& u, const Matrix& v);

// Submatrix with half-open row/column ranges.
Matrix block(const Matrix& m, int r0, int r1, int c0, int c1);
// Named blocks: the leading (n-1) x (p-1) corner, the trailing column above
// the last row, the first n-1 rows, and the last row.
Matrix upper_left(const Matrix& m);
Matrix upper_right_col(const Matrix& m);
Matrix top_rows(const Matrix& m);
Matrix bottom_row(const Matrix& m);

// Canonical embedding Mat_{n,p} -> F_q^{np}: rows concatenated. All space
// canonical forms are stated in these coordinates.
Vec vectorize(const Matrix& m);
Matrix unvectorize(std::span<const elem_t> v, int rows, int cols, FieldCtx field);

// Text format used by the CLI: rows separated by ';', entries by spaces,
// e.g. "1 0; 0 1". Entries are reduced mod q on input.
Matrix parse_matrix(std::string_view text, FieldCtx field);
std::string to_text(const Matrix& m);

// Vector helpers.
bool is_zero_vec(const Vec& v);
Vec mat_vec(const Matrix& m, const Vec& x);   // M x
Vec vec_mat(const Vec& y, const Matrix& m);   // y^T M, as a row vector
elem_t dot(const Vec& a, const Vec& b, const FieldCtx& field);
std::string vec_to_text(const Vec& v);

// Visits one representative per projective class of F_q^len \ {0}, first
// nonzero coordinate normalized to 1, in lexicographic order. Return false
// from the callback to stop early.
void for_each_projective(int len, const FieldCtx& field,
                         const std::function<bool(const Vec&)>& fn);
std::uint64_t projective_count(int len, const FieldCtx& field);

// q^e, saturating at UINT64_MAX.
std::uint64_t pow_saturating(std::uint64_t q, unsigned e);

}  // namespace singmat
