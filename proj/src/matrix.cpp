#include "singmat/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "singmat/gf2.hpp"

namespace singmat {

Matrix::Matrix(int rows, int cols, FieldCtx field)
    : rows_(rows), cols_(cols), field_(field) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
  data_.assign(std::size_t(rows) * cols, 0);
}

Matrix Matrix::identity(int n, FieldCtx field) {
  Matrix m(n, n, field);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows,
                         FieldCtx field) {
  int n = int(rows.size());
  int p = n == 0 ? 0 : int(rows[0].size());
  Matrix m(n, p, field);
  for (int i = 0; i < n; ++i) {
    if (int(rows[i].size()) != p) throw ShapeError("ragged row lengths");
    for (int j = 0; j < p; ++j) m(i, j) = field.reduce(rows[i][j]);
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](elem_t e) { return e == 0; });
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.field() != b.field())
    throw std::invalid_argument(std::string(op) + ": field mismatch");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shape mismatch");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix r = a;
  const FieldCtx& f = a.field();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = f.add(a(i, j), b(i, j));
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "sub");
  Matrix r = a;
  const FieldCtx& f = a.field();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = f.sub(a(i, j), b(i, j));
  return r;
}

Matrix operator-(const Matrix& a) {
  Matrix r = a;
  const FieldCtx& f = a.field();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = f.neg(a(i, j));
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw std::invalid_argument("mul: field mismatch");
  if (a.cols() != b.rows()) throw ShapeError("mul: inner dimension mismatch");
  const FieldCtx& f = a.field();
  Matrix r(a.rows(), b.cols(), f);
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      elem_t aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        r(i, j) = f.add(r(i, j), f.mul(aik, b(k, j)));
      }
    }
  }
  return r;
}

Matrix scale(const Matrix& a, elem_t c) {
  Matrix r = a;
  const FieldCtx& f = a.field();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = f.mul(a(i, j), c);
  return r;
}

namespace detail {

int rank_bytewise(const Matrix& m) {
  const FieldCtx& f = m.field();
  int nr = m.rows(), nc = m.cols();
  std::vector<elem_t> work(m.data());
  auto at = [&](int i, int j) -> elem_t& { return work[std::size_t(i) * nc + j]; };
  int rank = 0;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int piv = -1;
    for (int i = rank; i < nr; ++i) {
      if (at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int j = col; j < nc; ++j) std::swap(at(piv, j), at(rank, j));
    }
    elem_t invp = f.inv(at(rank, col));
    for (int i = rank + 1; i < nr; ++i) {
      elem_t factor = f.mul(at(i, col), invp);
      if (factor == 0) continue;
      for (int j = col; j < nc; ++j) {
        at(i, j) = f.sub(at(i, j), f.mul(factor, at(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

int rank(const Matrix& m) {
  if (m.field().order() == 2 && m.cols() <= 64) {
    std::vector<std::uint64_t> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) rows[i] = gf2::pack_row(m.row(i));
    return gf2::rank_words(rows);
  }
  return detail::rank_bytewise(m);
}

Rref rref(const Matrix& m) {
  const FieldCtx& f = m.field();
  int nr = m.rows(), nc = m.cols();
  Matrix r = m;
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < nc && lead < nr; ++col) {
    int piv = -1;
    for (int i = lead; i < nr; ++i) {
      if (r(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != lead) {
      for (int j = 0; j < nc; ++j) std::swap(r(piv, j), r(lead, j));
    }
    elem_t invp = f.inv(r(lead, col));
    if (invp != 1) {
      for (int j = col; j < nc; ++j) r(lead, j) = f.mul(r(lead, j), invp);
    }
    for (int i = 0; i < nr; ++i) {
      if (i == lead) continue;
      elem_t factor = r(i, col);
      if (factor == 0) continue;
      for (int j = col; j < nc; ++j) {
        r(i, j) = f.sub(r(i, j), f.mul(factor, r(lead, j)));
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(r), std::move(pivots)};
}

Matrix right_kernel(const Matrix& m) {
  const FieldCtx& f = m.field();
  int nc = m.cols();
  Rref red = rref(m);
  int rk = int(red.pivot_cols.size());
  std::vector<bool> is_pivot(nc, false);
  for (int c : red.pivot_cols) is_pivot[c] = true;

  Matrix basis(nc - rk, nc, f);
  int row = 0;
  for (int c = 0; c < nc; ++c) {
    if (is_pivot[c]) continue;
    basis(row, c) = 1;
    for (int r = 0; r < rk; ++r) {
      basis(row, red.pivot_cols[r]) = f.neg(red.mat(r, c));
    }
    ++row;
  }
  // Canonicalize: the free-column construction is not RREF in general.
  return rref(basis).mat;
}

Matrix left_kernel(const Matrix& m) { return right_kernel(m.transpose()); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  int n = m.rows();
  const FieldCtx& f = m.field();
  Matrix aug(n, 2 * n, f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Rref red = rref(aug);
  if (int(red.pivot_cols.size()) != n || (n > 0 && red.pivot_cols.back() != n - 1)) {
    return std::nullopt;
  }
  Matrix inv(n, n, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = red.mat(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (int(b.size()) != m.rows()) throw ShapeError("solve: rhs length mismatch");
  const FieldCtx& f = m.field();
  Matrix aug(m.rows(), m.cols() + 1, f);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref red = rref(aug);
  for (int c : red.pivot_cols) {
    if (c == m.cols()) return std::nullopt;  // inconsistent system
  }
  Vec x(m.cols(), 0);
  for (int r = 0; r < int(red.pivot_cols.size()); ++r) {
    x[red.pivot_cols[r]] = red.mat(r, m.cols());
  }
  return x;
}

Matrix rank_one(const Vec& f, const Vec& y, FieldCtx field) {
  Matrix m(int(y.size()), int(f.size()), field);
  for (int i = 0; i < m.rows(); ++i) {
    if (y[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) m(i, j) = field.mul(y[i], f[j]);
  }
  return m;
}

Matrix matrix_unit(int n, int p, int i, int j, FieldCtx field) {
  if (i < 0 || i >= n || j < 0 || j >= p)
    throw std::out_of_range("matrix_unit: index out of range");
  Matrix m(n, p, field);
  m(i, j) = 1;
  return m;
}

elem_t trace_pair(const Matrix& u, const Matrix& v) {
  if (u.field() != v.field()) throw std::invalid_argument("trace_pair: field mismatch");
  if (u.rows() != v.cols() || u.cols() != v.rows())
    throw ShapeError("trace_pair: shapes must be n x p and p x n");
  const FieldCtx& f = u.field();
  elem_t acc = 0;
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j) acc = f.add(acc, f.mul(u(i, j), v(j, i)));
  return acc;
}

Matrix block(const Matrix& m, int r0, int r1, int c0, int c1) {
  if (r0 < 0 || r1 > m.rows() || c0 < 0 || c1 > m.cols() || r0 > r1 || c0 > c1)
    throw std::out_of_range("block: range out of bounds");
  Matrix b(r1 - r0, c1 - c0, m.field());
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) b(i - r0, j - c0) = m(i, j);
  return b;
}

Matrix upper_left(const Matrix& m) {
  if (m.rows() < 1 || m.cols() < 1) throw std::out_of_range("upper_left: empty matrix");
  return block(m, 0, m.rows() - 1, 0, m.cols() - 1);
}

Matrix upper_right_col(const Matrix& m) {
  if (m.rows() < 1 || m.cols() < 1) throw std::out_of_range("upper_right_col: empty matrix");
  return block(m, 0, m.rows() - 1, m.cols() - 1, m.cols());
}

Matrix top_rows(const Matrix& m) {
  if (m.rows() < 1) throw std::out_of_range("top_rows: empty matrix");
  return block(m, 0, m.rows() - 1, 0, m.cols());
}

Matrix bottom_row(const Matrix& m) {
  if (m.rows() < 1) throw std::out_of_range("bottom_row: empty matrix");
  return block(m, m.rows() - 1, m.rows(), 0, m.cols());
}

Vec vectorize(const Matrix& m) { return m.data(); }

Matrix unvectorize(std::span<const elem_t> v, int rows, int cols, FieldCtx field) {
  if (int(v.size()) != rows * cols) throw ShapeError("unvectorize: length mismatch");
  Matrix m(rows, cols, field);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = v[std::size_t(i) * cols + j];
  return m;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::vector<long long> parse_ints(std::string_view text) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
    if (ec != std::errc() || ptr != text.data() + j) {
      throw std::invalid_argument("bad matrix entry '" + std::string(text.substr(i, j - i)) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

Matrix parse_matrix(std::string_view text, FieldCtx field) {
  std::vector<std::vector<long long>> rows;
  for (std::string_view part : split(text, ';')) {
    rows.push_back(parse_ints(part));
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw std::invalid_argument("empty matrix text");
  for (const auto& r : rows) {
    if (r.empty() || r.size() != rows[0].size())
      throw std::invalid_argument("ragged or empty matrix row");
  }
  return Matrix::from_rows(rows, field);
}

std::string to_text(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    if (i > 0) out += "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(m(i, j));
    }
  }
  return out;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](elem_t e) { return e == 0; });
}

Vec mat_vec(const Matrix& m, const Vec& x) {
  if (int(x.size()) != m.cols()) throw ShapeError("mat_vec: length mismatch");
  const FieldCtx& f = m.field();
  Vec y(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    elem_t acc = 0;
    for (int j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

Vec vec_mat(const Vec& y, const Matrix& m) {
  if (int(y.size()) != m.rows()) throw ShapeError("vec_mat: length mismatch");
  const FieldCtx& f = m.field();
  Vec r(m.cols(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    if (y[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) r[j] = f.add(r[j], f.mul(y[i], m(i, j)));
  }
  return r;
}

elem_t dot(const Vec& a, const Vec& b, const FieldCtx& field) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  elem_t acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc = field.add(acc, field.mul(a[k], b[k]));
  return acc;
}

std::string vec_to_text(const Vec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ' ';
    out += std::to_string(v[k]);
  }
  return out;
}

void for_each_projective(int len, const FieldCtx& field,
                         const std::function<bool(const Vec&)>& fn) {
  const std::uint32_t q = field.order();
  Vec v(len, 0);
  for (int lead = len - 1; lead >= 0; --lead) {
    // v[0..lead) = 0, v[lead] = 1, remaining coordinates run over all tuples.
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    int tail = len - lead - 1;
    std::uint64_t count = pow_saturating(q, unsigned(tail));
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t rest = t;
      for (int k = tail - 1; k >= 0; --k) {
        v[lead + 1 + k] = elem_t(rest % q);
        rest /= q;
      }
      if (!fn(v)) return;
    }
  }
}

std::uint64_t projective_count(int len, const FieldCtx& field) {
  const std::uint64_t q = field.order();
  std::uint64_t total = 0;
  for (int lead = 0; lead < len; ++lead) {
    total += pow_saturating(q, unsigned(len - lead - 1));
  }
  return total;
}

std::uint64_t pow_saturating(std::uint64_t q, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned k = 0; k < e; ++k) {
    if (r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

}  // namespace singmat
