#include "singmat/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "singmat/duality.hpp"

namespace singmat {

std::uint64_t gaussian_binomial(int m, int d, std::uint64_t q) {
  if (d < 0 || d > m) return 0;
  // q-Pascal recurrence G(m, d) = G(m-1, d-1) + q^d * G(m-1, d).
  std::vector<unsigned __int128> row(std::size_t(d) + 1, 0);
  row[0] = 1;
  for (int mm = 1; mm <= m; ++mm) {
    for (int dd = std::min(d, mm); dd >= 1; --dd) {
      unsigned __int128 qd = 1;
      for (int k = 0; k < dd; ++k) qd *= q;
      row[dd] = row[dd - 1] + qd * row[dd];
      if (row[dd] > (unsigned __int128)UINT64_MAX)
        throw std::overflow_error("gaussian_binomial overflows 64 bits");
    }
  }
  return std::uint64_t(row[d]);
}

std::uint64_t affine_subspace_count(int m, int d, std::uint64_t q) {
  std::uint64_t subspaces = gaussian_binomial(m, d, q);
  std::uint64_t cosets = pow_saturating(q, unsigned(m - d));
  if (subspaces != 0 && cosets > UINT64_MAX / subspaces)
    throw std::overflow_error("affine_subspace_count overflows 64 bits");
  return subspaces * cosets;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct FreeCell {
  int row;
  int col;
};

std::vector<std::vector<int>> all_pivot_profiles(int m, int d) {
  std::vector<std::vector<int>> out;
  if (d < 0 || d > m) return out;
  std::vector<int> c(d);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    if (d == 0) break;
    int i = d - 1;
    while (i >= 0 && c[i] == m - d + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::vector<FreeCell> free_cells_of(int m, const std::vector<int>& pivots) {
  std::vector<bool> is_pivot(m, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<FreeCell> cells;
  for (int r = 0; r < int(pivots.size()); ++r) {
    for (int c = pivots[r] + 1; c < m; ++c) {
      if (!is_pivot[c]) cells.push_back({r, c});
    }
  }
  return cells;
}

std::vector<int> free_coords_of(int m, const std::vector<int>& pivots) {
  std::vector<bool> is_pivot(m, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> coords;
  for (int c = 0; c < m; ++c) {
    if (!is_pivot[c]) coords.push_back(c);
  }
  return coords;
}

// Visits every RREF row filling for a fixed pivot profile; rows is a
// d x m workspace owned by the caller. Returns false if fn stopped early.
bool for_each_rref_fill(int m, const std::vector<int>& pivots, const FieldCtx& f,
                        std::vector<Vec>& rows, const std::function<bool()>& fn) {
  const std::uint32_t q = f.order();
  const int d = int(pivots.size());
  for (int r = 0; r < d; ++r) {
    std::fill(rows[r].begin(), rows[r].end(), 0);
    rows[r][pivots[r]] = 1;
  }
  std::vector<FreeCell> cells = free_cells_of(m, pivots);
  std::vector<std::uint32_t> digits(cells.size(), 0);
  while (true) {
    if (!fn()) return false;
    std::size_t t = 0;
    while (t < cells.size() && digits[t] + 1 == q) {
      digits[t] = 0;
      rows[cells[t].row][cells[t].col] = 0;
      ++t;
    }
    if (t == cells.size()) return true;
    ++digits[t];
    rows[cells[t].row][cells[t].col] = elem_t(digits[t]);
  }
}

// Visits every canonical coset representative (zero on pivot coordinates).
bool for_each_coset_rep(int m, const std::vector<int>& pivots, const FieldCtx& f,
                        Vec& point, const std::function<bool()>& fn) {
  const std::uint32_t q = f.order();
  std::fill(point.begin(), point.end(), 0);
  std::vector<int> coords = free_coords_of(m, pivots);
  std::vector<std::uint32_t> digits(coords.size(), 0);
  while (true) {
    if (!fn()) return false;
    std::size_t t = 0;
    while (t < coords.size() && digits[t] + 1 == q) {
      digits[t] = 0;
      point[coords[t]] = 0;
      ++t;
    }
    if (t == coords.size()) return true;
    ++digits[t];
    point[coords[t]] = elem_t(digits[t]);
  }
}

LinearMatrixSpace space_from_rows(int n, int p, const FieldCtx& f,
                                  const std::vector<Vec>& rows,
                                  const std::vector<int>& pivots) {
  Matrix basis(int(rows.size()), n * p, f);
  for (int r = 0; r < int(rows.size()); ++r)
    for (int k = 0; k < n * p; ++k) basis(r, k) = rows[r][k];
  return LinearMatrixSpace::from_rref(n, p, f, std::move(basis), pivots);
}

// Rank lookup keyed by the mixed-radix code sum v[k] * q^k of the
// vectorized matrix; for q = 2 the code is the packed bit word itself.
class RankTable {
 public:
  RankTable(int n, int p, FieldCtx f) {
    const std::uint64_t q = f.order();
    std::uint64_t total = pow_saturating(q, unsigned(n * p));
    table_.resize(total);
    Vec v(std::size_t(n) * p, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      for (int k = 0; k < n * p; ++k) {
        v[k] = elem_t(rest % q);
        rest /= q;
      }
      table_[code] = std::uint8_t(rank(unvectorize(v, n, p, f)));
    }
  }

  int operator[](std::uint64_t code) const { return table_[code]; }

 private:
  std::vector<std::uint8_t> table_;
};

struct ScanConfig {
  int n;
  int p;
  FieldCtx field;
  int d;
  bool equality_mode;
  std::uint64_t cap;
};

struct PartialReport {
  std::uint64_t scanned = 0;
  std::uint64_t singular = 0;
  std::map<std::string, std::uint64_t> histogram;
  std::vector<std::string> violations;
  std::vector<std::string> exceptional;
  std::uint64_t checksum = 0;
};

void merge_into(PartialReport& dst, PartialReport&& src) {
  dst.scanned += src.scanned;
  dst.singular += src.singular;
  for (const auto& [key, count] : src.histogram) dst.histogram[key] += count;
  dst.violations.insert(dst.violations.end(), src.violations.begin(), src.violations.end());
  dst.exceptional.insert(dst.exceptional.end(), src.exceptional.begin(),
                         src.exceptional.end());
  dst.checksum += src.checksum;
}

std::uint64_t space_hash(const ScanConfig& cfg, std::span<const std::uint64_t> basis_codes,
                         std::uint64_t point_code) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  h = splitmix64(h ^ std::uint64_t(cfg.n));
  h = splitmix64(h ^ std::uint64_t(cfg.p));
  h = splitmix64(h ^ std::uint64_t(cfg.field.order()));
  h = splitmix64(h ^ std::uint64_t(cfg.d));
  for (std::uint64_t code : basis_codes) h = splitmix64(h ^ code);
  h = splitmix64(h ^ point_code);
  return h;
}

// Shared handling of a scanned space that turned out singular.
void handle_singular(const ScanConfig& cfg, const AffineMatrixSpace& space, int best_rank,
                     PartialReport& rep) {
  std::string line = space_one_line(space);
  ++rep.singular;
  if (!cfg.equality_mode) {
    rep.violations.push_back("contains_no_full_rank: " + line);
    return;
  }
  DieudonneOutcome outcome = classify_singular_space(space, cfg.cap);
  if (outcome.max_rank_found != best_rank) {
    // Object-path rank disagrees with the table-driven scan.
    rep.violations.push_back("rank_path_mismatch: " + line);
  }
  if (outcome.status == OutcomeStatus::BelowMaxDim) {
    // Only reachable through a dimension override below p(n-1).
    ++rep.histogram["below_max_dim"];
    return;
  }
  ++rep.histogram[witness_combination_key(outcome.witnesses)];
  if (outcome.status == OutcomeStatus::TheoremViolation) {
    rep.violations.push_back("no_witness: " + line);
  }
  for (const Witness& w : outcome.witnesses) {
    if (w.kind == WitnessKind::ExceptionalF2) {
      rep.exceptional.push_back(line);
      break;
    }
  }
  if (cfg.d != cfg.p * (cfg.n - 1)) return;
  // Rank facts that hold for every maximal singular space: dim S_(y) in
  // {0, p-1, p}, rank(yhat) in {0, 1, p}, and rank(yhat) = p - dim S_(y).
  const LinearMatrixSpace& dir = space.direction();
  for_each_projective(cfg.n, cfg.field, [&](const Vec& y) {
    RankIdentityReport r = rank_identity_report(dir, y);
    if (r.rk_yhat != cfg.p - r.dim_s_sub_y)
      rep.violations.push_back("rank_identity: y=" + vec_to_text(y) + " " + line);
    if (!(r.dim_s_sub_y == 0 || r.dim_s_sub_y == cfg.p - 1 || r.dim_s_sub_y == cfg.p))
      rep.violations.push_back("s_y_dimension: y=" + vec_to_text(y) + " " + line);
    if (!(r.rk_yhat == 0 || r.rk_yhat == 1 || r.rk_yhat == cfg.p))
      rep.violations.push_back("dual_rank: y=" + vec_to_text(y) + " " + line);
    return true;
  });
}

std::uint64_t vec_code(const Vec& v, std::uint64_t q) {
  std::uint64_t code = 0;
  for (int k = int(v.size()) - 1; k >= 0; --k) code = code * q + v[k];
  return code;
}

void scan_profile_generic(const ScanConfig& cfg, const std::vector<int>& pivots,
                          const RankTable& lut, PartialReport& rep) {
  const int m = cfg.n * cfg.p;
  const FieldCtx& f = cfg.field;
  const std::uint32_t q = f.order();
  const int d = cfg.d;
  const int target = cfg.n;

  std::vector<Vec> rows(d, Vec(m, 0));
  Vec point(m, 0);
  Vec cur(m, 0);
  std::vector<std::uint64_t> basis_codes(d, 0);
  std::vector<std::uint32_t> elem_digits(d, 0);

  auto add_row = [&](int r) {
    const Vec& row = rows[r];
    for (int k = 0; k < m; ++k) {
      if (row[k] != 0) cur[k] = f.add(cur[k], row[k]);
    }
  };

  for_each_rref_fill(m, pivots, f, rows, [&]() {
    for (int r = 0; r < d; ++r) basis_codes[r] = vec_code(rows[r], q);
    for_each_coset_rep(m, pivots, f, point, [&]() {
      ++rep.scanned;
      rep.checksum += space_hash(cfg, basis_codes, vec_code(point, q));

      cur = point;
      std::fill(elem_digits.begin(), elem_digits.end(), 0);
      int best = lut[vec_code(cur, q)];
      std::uint64_t total = pow_saturating(q, unsigned(d));
      for (std::uint64_t i = 1; i < total && best < target; ++i) {
        int r = 0;
        while (elem_digits[r] + 1 == q) {
          elem_digits[r] = 0;
          add_row(r);  // rolling a digit over adds the row once more mod q
          ++r;
        }
        ++elem_digits[r];
        add_row(r);
        int rk = lut[vec_code(cur, q)];
        if (rk > best) best = rk;
      }
      if (best < target) {
        LinearMatrixSpace dir = space_from_rows(cfg.n, cfg.p, f, rows, pivots);
        AffineMatrixSpace space(unvectorize(point, cfg.n, cfg.p, f), std::move(dir));
        handle_singular(cfg, space, best, rep);
      }
      return true;
    });
    return true;
  });
}

// Bit-packed q = 2 scan: rows and points are np-bit words, Gray-code
// stepping flips one cell / coordinate / basis row at a time.
void scan_profile_packed(const ScanConfig& cfg, const std::vector<int>& pivots,
                         const RankTable& lut, PartialReport& rep) {
  const int m = cfg.n * cfg.p;
  const int d = cfg.d;
  const int target = cfg.n;
  const FieldCtx& f = cfg.field;

  std::vector<FreeCell> cells = free_cells_of(m, pivots);
  std::vector<int> coords = free_coords_of(m, pivots);

  std::vector<std::uint64_t> basis(d, 0);
  for (int r = 0; r < d; ++r) basis[r] = std::uint64_t(1) << pivots[r];

  auto emit_singular = [&](std::uint64_t point_code, int best) {
    std::vector<Vec> rows(d, Vec(m, 0));
    for (int r = 0; r < d; ++r)
      for (int k = 0; k < m; ++k) rows[r][k] = elem_t((basis[r] >> k) & 1);
    Vec point(m, 0);
    for (int k = 0; k < m; ++k) point[k] = elem_t((point_code >> k) & 1);
    LinearMatrixSpace dir = space_from_rows(cfg.n, cfg.p, f, rows, pivots);
    AffineMatrixSpace space(unvectorize(point, cfg.n, cfg.p, f), std::move(dir));
    handle_singular(cfg, space, best, rep);
  };

  const std::uint64_t fills = std::uint64_t(1) << cells.size();
  const std::uint64_t cosets = std::uint64_t(1) << coords.size();
  const std::uint64_t elems = std::uint64_t(1) << d;

  for (std::uint64_t a = 0;; ++a) {
    std::uint64_t point = 0;
    for (std::uint64_t b = 0;; ++b) {
      ++rep.scanned;
      rep.checksum += space_hash(cfg, basis, point);

      std::uint64_t curm = point;
      int best = lut[curm];
      for (std::uint64_t i = 1; i < elems && best < target; ++i) {
        curm ^= basis[std::countr_zero(i)];
        int rk = lut[curm];
        if (rk > best) best = rk;
      }
      if (best < target) emit_singular(point, best);

      if (b + 1 == cosets) break;
      point ^= std::uint64_t(1) << coords[std::countr_zero(b + 1)];
    }
    if (a + 1 == fills) break;
    const FreeCell& cell = cells[std::countr_zero(a + 1)];
    basis[cell.row] ^= std::uint64_t(1) << cell.col;
  }
}

PartialReport run_scan(const ScanConfig& cfg, bool packed, int jobs) {
  const int m = cfg.n * cfg.p;
  RankTable lut(cfg.n, cfg.p, cfg.field);
  std::vector<std::vector<int>> profiles = all_pivot_profiles(m, cfg.d);

  jobs = std::clamp(jobs, 1, 64);
  std::vector<PartialReport> parts(static_cast<std::size_t>(jobs));
  std::atomic<std::size_t> next{0};
  auto worker = [&](int w) {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= profiles.size()) break;
      if (packed) {
        scan_profile_packed(cfg, profiles[idx], lut, parts[w]);
      } else {
        scan_profile_generic(cfg, profiles[idx], lut, parts[w]);
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(jobs));
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  PartialReport total;
  for (auto& part : parts) merge_into(total, std::move(part));
  std::sort(total.violations.begin(), total.violations.end());
  std::sort(total.exceptional.begin(), total.exceptional.end());
  return total;
}

VerificationReport run_verification(int n, int p, std::uint32_t q, int default_dim,
                                    bool equality, const VerifyOptions& options) {
  if (!params_supported(n, p, q)) {
    throw BudgetExceededError("parameters (" + std::to_string(n) + "," + std::to_string(p) +
                              "," + std::to_string(q) + ") are outside the supported budget");
  }
  int target_dim = options.dim_override >= 0 ? options.dim_override : default_dim;
  if (target_dim > n * p) throw ShapeError("verify: dimension exceeds the ambient space");
  FieldCtx field(q);
  ScanConfig cfg{n, p, field, target_dim, equality, options.cap};

  bool packed;
  switch (options.engine) {
    case ScanEngine::Packed:
      if (q != 2 || n * p > 24)
        throw std::invalid_argument("packed engine requires q = 2 and np <= 24");
      packed = true;
      break;
    case ScanEngine::Generic:
      packed = false;
      break;
    default:
      packed = (q == 2 && n * p <= 24);
  }

  auto t0 = std::chrono::steady_clock::now();
  PartialReport total = run_scan(cfg, packed, options.jobs);
  auto t1 = std::chrono::steady_clock::now();

  VerificationReport report;
  report.mode = equality ? "equality" : "bound";
  report.n = n;
  report.p = p;
  report.q = q;
  report.target_dim = target_dim;
  report.spaces_scanned = total.scanned;
  report.singular_spaces_found = total.singular;
  report.outcome_histogram = std::move(total.histogram);
  report.violations = std::move(total.violations);
  report.exceptional_spaces = std::move(total.exceptional);
  report.checksum = total.checksum;
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  assert(report.spaces_scanned ==
         affine_subspace_count(n * p, target_dim, q));
  return report;
}

}  // namespace

void enumerate_linear_subspaces(int n, int p, FieldCtx field, int d,
                                const std::function<bool(const LinearMatrixSpace&)>& fn) {
  const int m = n * p;
  if (d < 0 || d > m) throw ShapeError("enumerate_linear_subspaces: bad dimension");
  std::vector<Vec> rows(d, Vec(m, 0));
  for (const auto& pivots : all_pivot_profiles(m, d)) {
    bool keep = for_each_rref_fill(m, pivots, field, rows, [&]() {
      return fn(space_from_rows(n, p, field, rows, pivots));
    });
    if (!keep) return;
  }
}

void enumerate_affine_spaces(int n, int p, FieldCtx field, int d,
                             const std::function<bool(const AffineMatrixSpace&)>& fn) {
  const int m = n * p;
  if (d < 0 || d > m) throw ShapeError("enumerate_affine_spaces: bad dimension");
  std::vector<Vec> rows(d, Vec(m, 0));
  Vec point(m, 0);
  for (const auto& pivots : all_pivot_profiles(m, d)) {
    bool keep = for_each_rref_fill(m, pivots, field, rows, [&]() {
      LinearMatrixSpace dir = space_from_rows(n, p, field, rows, pivots);
      return for_each_coset_rep(m, pivots, field, point, [&]() {
        return fn(AffineMatrixSpace(unvectorize(point, n, p, field), dir));
      });
    });
    if (!keep) return;
  }
}

bool params_supported(int n, int p, std::uint32_t q) {
  static constexpr struct {
    int n, p;
    std::uint32_t q;
  } kBudget[] = {{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {2, 2, 5}, {3, 3, 2}};
  for (const auto& b : kBudget) {
    if (b.n == n && b.p == p && b.q == q) return true;
  }
  return false;
}

VerificationReport verify_dimension_bound(int n, int p, std::uint32_t q,
                                          const VerifyOptions& options) {
  return run_verification(n, p, q, p * (n - 1) + 1, /*equality=*/false, options);
}

VerificationReport verify_equality_classification(int n, int p, std::uint32_t q,
                                                  const VerifyOptions& options) {
  return run_verification(n, p, q, p * (n - 1), /*equality=*/true, options);
}

std::optional<AffineMatrixSpace> find_counterexample(int n, int p, std::uint32_t q, int d) {
  if (n > p) throw ShapeError("find_counterexample: requires n <= p");
  FieldCtx field(q);
  const int m = n * p;
  if (d < 0 || d > m) throw ShapeError("find_counterexample: bad dimension");
  if (d < p * (n - 1)) return std::nullopt;  // no claim below the critical dimension
  const bool need_witness_check = (d == p * (n - 1));

  std::optional<AffineMatrixSpace> found;
  enumerate_affine_spaces(n, p, field, d, [&](const AffineMatrixSpace& s) {
    if (max_rank(s) == n) return true;
    if (!need_witness_check) {
      found = s;
      return false;
    }
    DieudonneOutcome outcome = classify_singular_space(s);
    for (const Witness& w : outcome.witnesses) {
      if (w.kind == WitnessKind::LeftKernel || w.kind == WitnessKind::RightKernel)
        return true;
    }
    found = s;
    return false;
  });
  return found;
}

std::string VerificationReport::serialize() const {
  std::ostringstream out;
  out << "mode: " << mode << '\n';
  out << "params: n=" << n << " p=" << p << " q=" << q << " target_dim=" << target_dim
      << '\n';
  out << "spaces_scanned: " << spaces_scanned << '\n';
  out << "singular_spaces_found: " << singular_spaces_found << '\n';
  out << "histogram:" << '\n';
  for (const auto& [key, count] : outcome_histogram) {
    out << "  " << key << ": " << count << '\n';
  }
  out << "violations: " << violations.size() << '\n';
  for (const std::string& v : violations) out << "  " << v << '\n';
  out << "exceptional_spaces: " << exceptional_spaces.size() << '\n';
  for (const std::string& e : exceptional_spaces) out << "  " << e << '\n';
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(checksum));
  out << "checksum: 0x" << buf << '\n';
  return out.str();
}

}  // namespace singmat
