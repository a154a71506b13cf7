#include "singmat/spaces.hpp"

#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace singmat {

LinearMatrixSpace::LinearMatrixSpace(int n, int p, FieldCtx field, Matrix basis,
                                     std::vector<int> pivots)
    : n_(n), p_(p), field_(field), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

LinearMatrixSpace LinearMatrixSpace::span(int n, int p, FieldCtx field,
                                          const std::vector<Matrix>& generators) {
  Matrix stacked(int(generators.size()), n * p, field);
  for (int g = 0; g < int(generators.size()); ++g) {
    const Matrix& m = generators[g];
    if (m.rows() != n || m.cols() != p) throw ShapeError("span: generator shape mismatch");
    if (m.field() != field) throw std::invalid_argument("span: generator field mismatch");
    for (int k = 0; k < n * p; ++k) stacked(g, k) = m.data()[k];
  }
  Rref red = rref(stacked);
  int d = int(red.pivot_cols.size());
  Matrix basis(d, n * p, field);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < n * p; ++k) basis(r, k) = red.mat(r, k);
  return LinearMatrixSpace(n, p, field, std::move(basis), std::move(red.pivot_cols));
}

LinearMatrixSpace LinearMatrixSpace::zero(int n, int p, FieldCtx field) {
  return LinearMatrixSpace(n, p, field, Matrix(0, n * p, field), {});
}

LinearMatrixSpace LinearMatrixSpace::full(int n, int p, FieldCtx field) {
  Matrix basis = Matrix::identity(n * p, field);
  std::vector<int> pivots(n * p);
  for (int k = 0; k < n * p; ++k) pivots[k] = k;
  return LinearMatrixSpace(n, p, field, std::move(basis), std::move(pivots));
}

LinearMatrixSpace LinearMatrixSpace::from_rref(int n, int p, FieldCtx field,
                                               Matrix rref_rows, std::vector<int> pivots) {
  assert(rref_rows.cols() == n * p);
  assert(int(pivots.size()) == rref_rows.rows());
  return LinearMatrixSpace(n, p, field, std::move(rref_rows), std::move(pivots));
}

Matrix LinearMatrixSpace::basis_element(int k) const {
  return unvectorize(basis_.row(k), n_, p_, field_);
}

std::vector<Matrix> LinearMatrixSpace::basis() const {
  std::vector<Matrix> out;
  out.reserve(dim());
  for (int k = 0; k < dim(); ++k) out.push_back(basis_element(k));
  return out;
}

bool LinearMatrixSpace::contains(const Matrix& m) const {
  return coordinates(m).has_value();
}

std::optional<Vec> LinearMatrixSpace::coordinates(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != p_) throw ShapeError("contains: shape mismatch");
  if (m.field() != field_) throw std::invalid_argument("contains: field mismatch");
  // Basis rows have 1 at their own pivot and 0 at the others, so the
  // coordinate over row r can be read off at pivot r before reduction.
  Vec v = m.data();
  Vec coords(dim(), 0);
  for (int r = 0; r < dim(); ++r) {
    elem_t c = v[pivots_[r]];
    coords[r] = c;
    if (c == 0) continue;
    for (int k = 0; k < basis_.cols(); ++k) {
      if (basis_(r, k) != 0) v[k] = field_.sub(v[k], field_.mul(c, basis_(r, k)));
    }
  }
  if (!is_zero_vec(v)) return std::nullopt;
  return coords;
}

Vec LinearMatrixSpace::reduce_vec(Vec v) const {
  if (int(v.size()) != ambient_dim()) throw ShapeError("reduce_vec: length mismatch");
  for (int r = 0; r < dim(); ++r) {
    elem_t c = v[pivots_[r]];
    if (c == 0) continue;
    for (int k = 0; k < basis_.cols(); ++k) {
      if (basis_(r, k) != 0) v[k] = field_.sub(v[k], field_.mul(c, basis_(r, k)));
    }
  }
  return v;
}

AffineMatrixSpace::AffineMatrixSpace(const Matrix& point, LinearMatrixSpace direction)
    : point_(point), direction_(std::move(direction)) {
  if (point.rows() != direction_.mat_rows() || point.cols() != direction_.mat_cols())
    throw ShapeError("affine: point/direction shape mismatch");
  if (point.field() != direction_.field())
    throw std::invalid_argument("affine: field mismatch");
  point_ = unvectorize(direction_.reduce_vec(point.data()), point.rows(), point.cols(),
                       point.field());
}

AffineMatrixSpace AffineMatrixSpace::from_linear(const LinearMatrixSpace& space) {
  Matrix zero(space.mat_rows(), space.mat_cols(), space.field());
  return AffineMatrixSpace(zero, space);
}

bool AffineMatrixSpace::contains(const Matrix& m) const {
  return direction_.contains(m - point_);
}

std::uint64_t space_size(const AffineMatrixSpace& s) {
  return pow_saturating(s.field().order(), unsigned(s.dim()));
}

bool for_each_element(const AffineMatrixSpace& s,
                      const std::function<bool(const Matrix&)>& fn, std::uint64_t cap) {
  std::uint64_t count = space_size(s);
  if (count > cap || count == UINT64_MAX) {
    throw CapExceededError("element enumeration of size " + std::to_string(count) +
                           " exceeds cap " + std::to_string(cap));
  }
  const FieldCtx& f = s.field();
  const std::uint32_t q = f.order();
  const int d = s.dim();
  const Matrix& basis = s.direction().basis_rref();
  const int len = s.direction().ambient_dim();

  Vec cur = s.point().data();
  std::vector<std::uint32_t> digits(d, 0);
  auto add_row = [&](int r) {
    for (int k = 0; k < len; ++k) {
      if (basis(r, k) != 0) cur[k] = f.add(cur[k], basis(r, k));
    }
  };

  for (std::uint64_t i = 0;; ++i) {
    if (!fn(unvectorize(cur, s.mat_rows(), s.mat_cols(), f))) return false;
    if (i + 1 == count) break;
    // Odometer step: rolling a digit from q-1 back to 0 adds the basis row
    // once more (since -(q-1) = 1 mod q), then the next digit increments.
    int r = 0;
    while (digits[r] + 1 == q) {
      digits[r] = 0;
      add_row(r);
      ++r;
    }
    ++digits[r];
    add_row(r);
  }
  return true;
}

std::vector<Matrix> elements(const AffineMatrixSpace& s, std::uint64_t cap) {
  std::vector<Matrix> out;
  for_each_element(
      s,
      [&](const Matrix& m) {
        out.push_back(m);
        return true;
      },
      cap);
  return out;
}

std::vector<Matrix> elements(const LinearMatrixSpace& s, std::uint64_t cap) {
  return elements(AffineMatrixSpace::from_linear(s), cap);
}

int max_rank(const AffineMatrixSpace& s, std::uint64_t cap) {
  const int bound = std::min(s.mat_rows(), s.mat_cols());
  int best = 0;
  for_each_element(
      s,
      [&](const Matrix& m) {
        int r = rank(m);
        if (r > best) best = r;
        return best < bound;
      },
      cap);
  return best;
}

int max_rank(const LinearMatrixSpace& s, std::uint64_t cap) {
  return max_rank(AffineMatrixSpace::from_linear(s), cap);
}

namespace {

void require_invertible(const Matrix& m, int size, const char* name) {
  if (m.rows() != size || m.cols() != size)
    throw ShapeError(std::string("transform: ") + name + " has wrong shape");
  if (rank(m) != size)
    throw SingularTransformError(std::string("transform: ") + name + " is singular");
}

}  // namespace

LinearMatrixSpace transform(const LinearMatrixSpace& s, const Matrix& P, const Matrix& Q) {
  require_invertible(P, s.mat_rows(), "P");
  require_invertible(Q, s.mat_cols(), "Q");
  std::vector<Matrix> images;
  images.reserve(s.dim());
  for (int k = 0; k < s.dim(); ++k) images.push_back(P * s.basis_element(k) * Q);
  return LinearMatrixSpace::span(s.mat_rows(), s.mat_cols(), s.field(), images);
}

AffineMatrixSpace transform(const AffineMatrixSpace& s, const Matrix& P, const Matrix& Q) {
  LinearMatrixSpace dir = transform(s.direction(), P, Q);
  require_invertible(P, s.mat_rows(), "P");
  require_invertible(Q, s.mat_cols(), "Q");
  return AffineMatrixSpace(P * s.point() * Q, std::move(dir));
}

LinearMatrixSpace s_sub_y(const LinearMatrixSpace& s, const Vec& y) {
  const int n = s.mat_rows(), p = s.mat_cols(), d = s.dim();
  if (int(y.size()) != n) throw ShapeError("s_sub_y: vector length mismatch");
  if (is_zero_vec(y)) throw ZeroVectorError("s_sub_y: y must be nonzero");
  const FieldCtx& f = s.field();

  // A matrix has all columns in span{y} iff w^T M = 0 for every w in the
  // orthogonal complement of y. One constraint row per (w, column) pair
  // over the coordinates of S: a p*(n-1) x dim system.
  Matrix y_row(1, n, f);
  for (int i = 0; i < n; ++i) y_row(0, i) = y[i];
  Matrix w_basis = right_kernel(y_row);  // (n-1) rows of length n

  Matrix constraints(w_basis.rows() * p, d, f);
  for (int w = 0; w < w_basis.rows(); ++w) {
    for (int k = 0; k < d; ++k) {
      Matrix bk = s.basis_element(k);
      Vec wb = vec_mat(Vec(w_basis.row(w).begin(), w_basis.row(w).end()), bk);
      for (int j = 0; j < p; ++j) constraints(w * p + j, k) = wb[j];
    }
  }
  Matrix coeff_basis = right_kernel(constraints);  // rows = coefficient vectors

  std::vector<Matrix> gens;
  gens.reserve(coeff_basis.rows());
  for (int r = 0; r < coeff_basis.rows(); ++r) {
    Matrix m(n, p, f);
    for (int k = 0; k < d; ++k) {
      elem_t c = coeff_basis(r, k);
      if (c == 0) continue;
      const Matrix& row = s.basis_rref();
      for (int t = 0; t < n * p; ++t) {
        if (row(k, t) != 0) {
          elem_t cur = m.data()[t];
          m(t / p, t % p) = f.add(cur, f.mul(c, row(k, t)));
        }
      }
    }
    gens.push_back(std::move(m));
  }
  return LinearMatrixSpace::span(n, p, f, gens);
}

AffineMatrixSpace read_space(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("space file: missing header");
  std::istringstream header(line);
  long long n = 0, p = 0, q = 0, d = 0;
  if (!(header >> n >> p >> q >> d) || n < 1 || p < 1 || d < 0)
    throw std::invalid_argument("space file: bad header '" + line + "'");
  std::string extra;
  if (header >> extra) throw std::invalid_argument("space file: trailing header tokens");
  FieldCtx field{std::uint32_t(q)};

  auto read_matrix_line = [&](const char* what) {
    std::string text;
    while (std::getline(in, text)) {
      if (text.find_first_not_of(" \t\r") != std::string::npos) break;
      text.clear();
    }
    if (text.empty()) throw std::invalid_argument(std::string("space file: missing ") + what);
    if (!text.empty() && text.back() == '\r') text.pop_back();
    Matrix m = parse_matrix(text, field);
    if (m.rows() != n || m.cols() != p)
      throw std::invalid_argument(std::string("space file: ") + what + " has wrong shape");
    return m;
  };

  Matrix point = read_matrix_line("affine point");
  std::vector<Matrix> gens;
  gens.reserve(std::size_t(d));
  for (long long k = 0; k < d; ++k) gens.push_back(read_matrix_line("direction generator"));
  LinearMatrixSpace dir = LinearMatrixSpace::span(int(n), int(p), field, gens);
  return AffineMatrixSpace(point, std::move(dir));
}

void write_space(std::ostream& out, const AffineMatrixSpace& s) {
  out << s.mat_rows() << ' ' << s.mat_cols() << ' ' << s.field().order() << ' ' << s.dim()
      << '\n';
  out << to_text(s.point()) << '\n';
  for (int k = 0; k < s.dim(); ++k) {
    out << to_text(s.direction().basis_element(k)) << '\n';
  }
}

std::string space_to_text(const AffineMatrixSpace& s) {
  std::ostringstream out;
  write_space(out, s);
  return out.str();
}

std::string space_one_line(const AffineMatrixSpace& s) {
  std::string out = std::to_string(s.mat_rows()) + ' ' + std::to_string(s.mat_cols()) +
                    ' ' + std::to_string(s.field().order()) + ' ' + std::to_string(s.dim());
  out += " | " + to_text(s.point());
  for (int k = 0; k < s.dim(); ++k) {
    out += " | " + to_text(s.direction().basis_element(k));
  }
  return out;
}

}  // namespace singmat
