#pragma once

#include <map>

#include "singmat/spaces.hpp"

namespace singmat {

// Trace-orthogonal complement of S inside Mat_{p,n}: all v with
// tr(v o u) = 0 for every u in S. dim S + dim orthogonal(S) = n*p and
// orthogonal(orthogonal(S)) = S.
LinearMatrixSpace orthogonal(const LinearMatrixSpace& s);

// The evaluation operator of y over a dual space: column j is B_j * y for
// the j-th canonical basis element B_j of s_perp. Linear in y.
struct EvaluationOperator {
  Vec y;
  Matrix matrix;  // p x dim(s_perp)
};

EvaluationOperator evaluation_operator(const LinearMatrixSpace& s_perp, const Vec& y);

// Both sides of the rank identity rank(yhat) = p - dim S_(y).
struct RankIdentityReport {
  int rk_yhat;
  int dim_s_sub_y;
};

RankIdentityReport rank_identity_report(const LinearMatrixSpace& s, const Vec& y);

// Multiset {rank(yhat)} over one y per projective class, as rank -> count.
// Throws CapExceededError when q^n > cap.
std::map<int, std::uint64_t> dual_rank_spectrum(const LinearMatrixSpace& s,
                                                std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace singmat
