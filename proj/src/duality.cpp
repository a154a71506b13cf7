#include "singmat/duality.hpp"

namespace singmat {

LinearMatrixSpace orthogonal(const LinearMatrixSpace& s) {
  const int n = s.mat_rows(), p = s.mat_cols(), d = s.dim();
  const FieldCtx& f = s.field();
  // tr(v o u) = sum u(i,j) v(j,i): in vectorized coordinates the pairing
  // matrix is S's basis with columns re-indexed by the transposition
  // (i,j) -> (j,i). Its right kernel is the complement.
  Matrix constraints(d, p * n, f);
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j)
        constraints(k, j * n + i) = s.basis_rref()(k, i * p + j);
  }
  Matrix kernel = right_kernel(constraints);
  std::vector<Matrix> gens;
  gens.reserve(kernel.rows());
  for (int r = 0; r < kernel.rows(); ++r)
    gens.push_back(unvectorize(kernel.row(r), p, n, f));
  return LinearMatrixSpace::span(p, n, f, gens);
}

EvaluationOperator evaluation_operator(const LinearMatrixSpace& s_perp, const Vec& y) {
  const int p = s_perp.mat_rows(), n = s_perp.mat_cols(), d = s_perp.dim();
  if (int(y.size()) != n) throw ShapeError("evaluation_operator: y length mismatch");
  Matrix m(p, d, s_perp.field());
  for (int k = 0; k < d; ++k) {
    Vec col = mat_vec(s_perp.basis_element(k), y);
    for (int i = 0; i < p; ++i) m(i, k) = col[i];
  }
  return {y, std::move(m)};
}

RankIdentityReport rank_identity_report(const LinearMatrixSpace& s, const Vec& y) {
  if (is_zero_vec(y)) throw ZeroVectorError("rank_identity_report: y must be nonzero");
  LinearMatrixSpace s_perp = orthogonal(s);
  EvaluationOperator yhat = evaluation_operator(s_perp, y);
  LinearMatrixSpace sy = s_sub_y(s, y);
  return {rank(yhat.matrix), sy.dim()};
}

std::map<int, std::uint64_t> dual_rank_spectrum(const LinearMatrixSpace& s,
                                                std::uint64_t cap) {
  const int n = s.mat_rows();
  std::uint64_t total = pow_saturating(s.field().order(), unsigned(n));
  if (total > cap) {
    throw CapExceededError("dual_rank_spectrum: q^n = " + std::to_string(total) +
                           " exceeds cap " + std::to_string(cap));
  }
  LinearMatrixSpace s_perp = orthogonal(s);
  std::map<int, std::uint64_t> spectrum;
  for_each_projective(n, s.field(), [&](const Vec& y) {
    ++spectrum[rank(evaluation_operator(s_perp, y).matrix)];
    return true;
  });
  return spectrum;
}

}  // namespace singmat
