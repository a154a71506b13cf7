#include "singmat/structure.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace singmat {

const char* schur_kind_name(SchurKind kind) {
  switch (kind) {
    case SchurKind::Zero: return "Zero";
    case SchurKind::FixedForm: return "FixedForm";
    case SchurKind::FixedVector: return "FixedVector";
    case SchurKind::Both: return "Both";
    case SchurKind::NotRankOne: return "NotRankOne";
  }
  return "?";
}

namespace {

Vec normalize_projective(Vec v, const FieldCtx& f) {
  for (elem_t e : v) {
    if (e != 0) {
      if (e != 1) {
        elem_t s = f.inv(e);
        for (elem_t& x : v) x = f.mul(x, s);
      }
      break;
    }
  }
  return v;
}

// First nonzero column of a rank-one matrix spans its column space.
std::optional<Vec> column_direction(const Matrix& m) {
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) {
      if (m(i, j) != 0) {
        Vec y(m.rows());
        for (int r = 0; r < m.rows(); ++r) y[r] = m(r, j);
        return normalize_projective(std::move(y), m.field());
      }
    }
  }
  return std::nullopt;
}

std::optional<Vec> row_direction(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        Vec fm(m.row(i).begin(), m.row(i).end());
        return normalize_projective(std::move(fm), m.field());
      }
    }
  }
  return std::nullopt;
}

// If m = y (x) f for some row vector f, returns f.
std::optional<Vec> factor_against_column(const Matrix& m, const Vec& y) {
  const FieldCtx& fld = m.field();
  int lead = -1;
  for (int i = 0; i < int(y.size()); ++i) {
    if (y[i] != 0) {
      lead = i;
      break;
    }
  }
  Vec f(m.cols(), 0);
  elem_t inv_lead = fld.inv(y[lead]);
  for (int j = 0; j < m.cols(); ++j) f[j] = fld.mul(m(lead, j), inv_lead);
  if (rank_one(f, y, fld) == m) return f;
  return std::nullopt;
}

// If m = y (x) f for some column vector y, returns y.
std::optional<Vec> factor_against_row(const Matrix& m, const Vec& f) {
  const FieldCtx& fld = m.field();
  int lead = -1;
  for (int j = 0; j < int(f.size()); ++j) {
    if (f[j] != 0) {
      lead = j;
      break;
    }
  }
  Vec y(m.rows(), 0);
  elem_t inv_lead = fld.inv(f[lead]);
  for (int i = 0; i < m.rows(); ++i) y[i] = fld.mul(m(i, lead), inv_lead);
  if (rank_one(f, y, fld) == m) return y;
  return std::nullopt;
}

LinearMatrixSpace span_of_columns(const std::vector<Vec>& cols, int n, FieldCtx f) {
  std::vector<Matrix> gens;
  gens.reserve(cols.size());
  for (const Vec& c : cols) {
    Matrix m(n, 1, f);
    for (int i = 0; i < n; ++i) m(i, 0) = c[i];
    gens.push_back(std::move(m));
  }
  return LinearMatrixSpace::span(n, 1, f, gens);
}

LinearMatrixSpace span_of_rows(const std::vector<Vec>& rows, int p, FieldCtx f) {
  std::vector<Matrix> gens;
  gens.reserve(rows.size());
  for (const Vec& r : rows) {
    Matrix m(1, p, f);
    for (int j = 0; j < p; ++j) m(0, j) = r[j];
    gens.push_back(std::move(m));
  }
  return LinearMatrixSpace::span(1, p, f, gens);
}

}  // namespace

SchurClassification classify_rank_one_space(const LinearMatrixSpace& s) {
  SchurClassification out;
  const int d = s.dim();
  if (d == 0) {
    out.kind = SchurKind::Zero;
    return out;
  }
  std::vector<Matrix> basis = s.basis();
  for (const Matrix& b : basis) {
    if (rank(b) >= 2) {
      out.kind = SchurKind::NotRankOne;
      out.rank2_certificate = b;
      return out;
    }
  }

  Matrix u0 = basis[0];
  Vec y0 = *column_direction(u0);
  Vec f0 = *row_direction(u0);

  std::vector<Vec> row_factors;
  bool fixed_vector_ok = true;
  for (const Matrix& b : basis) {
    if (auto f = factor_against_column(b, y0)) {
      row_factors.push_back(*f);
    } else {
      fixed_vector_ok = false;
      break;
    }
  }

  std::vector<Vec> column_factors;
  bool fixed_form_ok = true;
  for (const Matrix& b : basis) {
    if (auto y = factor_against_row(b, f0)) {
      column_factors.push_back(*y);
    } else {
      fixed_form_ok = false;
      break;
    }
  }

  const FieldCtx& fld = s.field();
  if (fixed_vector_ok && fixed_form_ok) {
    out.kind = SchurKind::Both;
    out.fixed_vector = y0;
    out.fixed_form = f0;
    out.row_factors = span_of_rows(row_factors, s.mat_cols(), fld);
    out.column_factors = span_of_columns(column_factors, s.mat_rows(), fld);
    return out;
  }
  if (fixed_vector_ok) {
    out.kind = SchurKind::FixedVector;
    out.fixed_vector = y0;
    out.row_factors = span_of_rows(row_factors, s.mat_cols(), fld);
    return out;
  }
  if (fixed_form_ok) {
    out.kind = SchurKind::FixedForm;
    out.fixed_form = f0;
    out.column_factors = span_of_columns(column_factors, s.mat_rows(), fld);
    return out;
  }

  // Neither factorization holds, so by Schur's theorem some element has
  // rank 2. One of the following sums always does: take a basis element
  // whose column space escapes span{y0} and one whose row space escapes
  // span{f0} and combine them with u0 or with each other.
  const Matrix* col_breaker = nullptr;
  const Matrix* row_breaker = nullptr;
  for (const Matrix& b : basis) {
    if (!col_breaker && !factor_against_column(b, y0)) col_breaker = &b;
    if (!row_breaker && !factor_against_row(b, f0)) row_breaker = &b;
  }
  assert(col_breaker && row_breaker);
  for (const Matrix& cand :
       {u0 + *col_breaker, u0 + *row_breaker, *col_breaker + *row_breaker}) {
    if (rank(cand) >= 2) {
      out.kind = SchurKind::NotRankOne;
      out.rank2_certificate = cand;
      return out;
    }
  }
  throw std::logic_error("classify_rank_one_space: no rank-2 certificate found");
}

namespace {

// P with P * c = e_1 for nonzero column c (rows 2.. span the annihilator).
Matrix column_normalizer(const Vec& c, const FieldCtx& f) {
  const int k = int(c.size());
  int lead = -1;
  for (int i = 0; i < k; ++i) {
    if (c[i] != 0) {
      lead = i;
      break;
    }
  }
  Matrix col(k, 1, f);
  for (int i = 0; i < k; ++i) col(i, 0) = c[i];
  Matrix annihilator = left_kernel(col);  // (k-1) x k
  Matrix out(k, k, f);
  out(0, lead) = f.inv(c[lead]);
  for (int r = 0; r < annihilator.rows(); ++r)
    for (int j = 0; j < k; ++j) out(r + 1, j) = annihilator(r, j);
  return out;
}

// Q with r * Q = e_1^T for nonzero row r (columns 2.. span the kernel).
Matrix row_normalizer(const Vec& r, const FieldCtx& f) {
  const int k = int(r.size());
  int lead = -1;
  for (int j = 0; j < k; ++j) {
    if (r[j] != 0) {
      lead = j;
      break;
    }
  }
  Matrix row(1, k, f);
  for (int j = 0; j < k; ++j) row(0, j) = r[j];
  Matrix kernel = right_kernel(row);  // (k-1) x k, rows are kernel vectors
  Matrix out(k, k, f);
  out(lead, 0) = f.inv(r[lead]);
  for (int c = 0; c < kernel.rows(); ++c)
    for (int i = 0; i < k; ++i) out(i, c + 1) = kernel(c, i);
  return out;
}

Matrix block_diag_one(const Matrix& inner, const FieldCtx& f) {
  Matrix out(inner.rows() + 1, inner.cols() + 1, f);
  out(0, 0) = 1;
  for (int i = 0; i < inner.rows(); ++i)
    for (int j = 0; j < inner.cols(); ++j) out(i + 1, j + 1) = inner(i, j);
  return out;
}

Matrix must_invert(const Matrix& m) {
  auto inv = inverse(m);
  if (!inv) throw std::logic_error("base-change matrix is singular");
  return *inv;
}

}  // namespace

std::optional<Matrix> try_complete_to_full_rank(const Vec& first_row, const Vec& first_col,
                                                FieldCtx field) {
  const int p = int(first_row.size());
  const int n = int(first_col.size());
  if (n < 1 || p < 1) throw ShapeError("complete: empty border");
  if (n > p) throw ShapeError("complete: requires n <= p");
  if (first_row[0] != first_col[0])
    throw std::invalid_argument("complete: corner entries disagree");

  const bool row_zero = is_zero_vec(first_row);
  const bool col_zero = is_zero_vec(first_col);
  if (row_zero) return std::nullopt;
  if (n == p && col_zero) return std::nullopt;

  if (n == 1) {
    Matrix m(1, p, field);
    for (int j = 0; j < p; ++j) m(0, j) = first_row[j];
    return m;
  }

  const elem_t a = first_row[0];
  Vec l0(first_row.begin() + 1, first_row.end());  // length p-1
  Vec c0(first_col.begin() + 1, first_col.end());  // length n-1
  const bool l0_zero = is_zero_vec(l0);
  const bool c0_zero = is_zero_vec(c0);

  // In normalized coordinates the border becomes (a, e_1^T / e_1) and the
  // interior is one of three fixed blocks; mapping back through the
  // inverse base changes restores the requested border.
  Matrix a_prime(n, p, field);
  a_prime(0, 0) = a;
  if (!l0_zero) a_prime(0, 1) = 1;
  if (!c0_zero) a_prime(1, 0) = 1;

  if (col_zero) {
    // n < p, zero first column, nonzero first row: shift the identity one
    // column right of the border.
    for (int i = 0; i < n - 1; ++i) a_prime(i + 1, i + 2) = 1;
  } else if (c0_zero || l0_zero) {
    for (int i = 0; i < n - 1; ++i) a_prime(i + 1, i + 1) = 1;
  } else {
    for (int i = 0; i < n - 2; ++i) a_prime(i + 2, i + 2) = 1;
  }

  Matrix result = a_prime;
  if (!c0_zero) {
    Matrix p_full = block_diag_one(column_normalizer(c0, field), field);
    result = must_invert(p_full) * result;
  }
  if (!l0_zero) {
    Matrix q_full = block_diag_one(row_normalizer(l0, field), field);
    result = result * must_invert(q_full);
  }

  assert(rank(result) == n);
  return result;
}

Matrix complete_to_full_rank(const Vec& first_row, const Vec& first_col, FieldCtx field) {
  auto m = try_complete_to_full_rank(first_row, first_col, field);
  if (!m) {
    throw NoCompletionError("no full-rank completion exists for this border");
  }
  return *m;
}

ExtractionCheck extraction_check(const Matrix& a) {
  const int n = a.rows(), p = a.cols();
  if (n > p) throw ShapeError("extraction_check: requires n <= p");
  if (n < 1 || p < 1) throw ShapeError("extraction_check: empty matrix");
  Matrix bumped = a + matrix_unit(n, p, n - 1, p - 1, a.field());
  bool hypothesis = rank(a) < n && rank(bumped) < n;
  bool conclusion = rank(upper_left(a)) < n - 1;
  return {hypothesis, conclusion};
}

const char* outcome_status_name(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::HasFullRank: return "HasFullRank";
    case OutcomeStatus::BelowMaxDim: return "BelowMaxDim";
    case OutcomeStatus::Classified: return "Classified";
    case OutcomeStatus::TheoremViolation: return "TheoremViolation";
  }
  return "?";
}

const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::LeftKernel: return "left_kernel";
    case WitnessKind::RightKernel: return "right_kernel";
    case WitnessKind::ExceptionalF2: return "exceptional_f2";
  }
  return "?";
}

namespace {

// All projective vectors of the row space of a kernel basis, lex-sorted.
std::vector<Vec> projective_vectors_of(const Matrix& basis_rows) {
  std::vector<Vec> out;
  const int k = basis_rows.rows();
  if (k == 0) return out;
  const FieldCtx& f = basis_rows.field();
  for_each_projective(k, f, [&](const Vec& coeff) {
    Vec v(basis_rows.cols(), 0);
    for (int r = 0; r < k; ++r) {
      if (coeff[r] == 0) continue;
      for (int j = 0; j < basis_rows.cols(); ++j)
        v[j] = f.add(v[j], f.mul(coeff[r], basis_rows(r, j)));
    }
    out.push_back(normalize_projective(std::move(v), f));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DieudonneOutcome classify_singular_space(const AffineMatrixSpace& s, std::uint64_t cap) {
  const int n = s.mat_rows(), p = s.mat_cols(), d = s.dim();
  if (n > p) throw ShapeError("classify_singular_space: requires n <= p");
  const FieldCtx& f = s.field();

  DieudonneOutcome out;
  out.dim = d;
  out.max_rank_found = max_rank(s, cap);
  if (out.max_rank_found == n) {
    out.status = OutcomeStatus::HasFullRank;
    return out;
  }
  if (d < p * (n - 1)) {
    out.status = OutcomeStatus::BelowMaxDim;
    return out;
  }

  // Y^T M = 0 for all elements M iff Y is in the left kernel of the
  // horizontal concatenation [point | basis...]; no enumeration needed.
  Matrix horizontal(n, (d + 1) * p, f);
  Matrix vertical((d + 1) * n, p, f);
  auto paste = [&](const Matrix& m, int index) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) {
        horizontal(i, index * p + j) = m(i, j);
        vertical(index * n + i, j) = m(i, j);
      }
  };
  paste(s.point(), 0);
  for (int k = 0; k < d; ++k) paste(s.direction().basis_element(k), k + 1);

  for (const Vec& y : projective_vectors_of(left_kernel(horizontal))) {
    out.witnesses.push_back({WitnessKind::LeftKernel, y});
  }
  if (n == p) {
    for (const Vec& x : projective_vectors_of(right_kernel(vertical))) {
      out.witnesses.push_back({WitnessKind::RightKernel, x});
    }
  }
  if (n == 2 && p == 2 && f.order() == 2 && !s.is_linear()) {
    out.witnesses.push_back({WitnessKind::ExceptionalF2, {}});
  }
  out.status = out.witnesses.empty() ? OutcomeStatus::TheoremViolation
                                     : OutcomeStatus::Classified;
  return out;
}

std::string outcome_to_text(const DieudonneOutcome& outcome) {
  std::ostringstream out;
  out << "status: " << outcome_status_name(outcome.status) << '\n';
  out << "dim: " << outcome.dim << '\n';
  out << "max_rank: " << outcome.max_rank_found << '\n';
  for (const Witness& w : outcome.witnesses) {
    out << "witness: " << witness_kind_name(w.kind);
    if (!w.vec.empty()) out << ' ' << vec_to_text(w.vec);
    out << '\n';
  }
  return out.str();
}

std::string witness_combination_key(const std::vector<Witness>& witnesses) {
  bool left = false, right = false, exceptional = false;
  for (const Witness& w : witnesses) {
    switch (w.kind) {
      case WitnessKind::LeftKernel: left = true; break;
      case WitnessKind::RightKernel: right = true; break;
      case WitnessKind::ExceptionalF2: exceptional = true; break;
    }
  }
  std::string key;
  auto append = [&](const char* part) {
    if (!key.empty()) key += '+';
    key += part;
  };
  if (left) append("left_kernel");
  if (right) append("right_kernel");
  if (exceptional) append("exceptional_f2");
  if (key.empty()) key = "none";
  return key;
}

}  // namespace singmat
