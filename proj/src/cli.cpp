#include "singmat/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "singmat/duality.hpp"
#include "singmat/search.hpp"
#include "singmat/structure.hpp"

namespace singmat {

namespace {

using nlohmann::json;

struct GlobalOptions {
  bool json_output = false;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;  // reserved for randomized helpers
};

AffineMatrixSpace load_space(const std::string& path) {
  if (path == "-") return read_space(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open space file '" + path + "'");
  return read_space(in);
}

// Commands that operate on a linear space accept an affine input only via
// --direction, which selects its translation vector space.
LinearMatrixSpace load_linear_space(const std::string& path, bool use_direction) {
  AffineMatrixSpace space = load_space(path);
  if (!space.is_linear() && !use_direction) {
    throw std::invalid_argument(
        "input space is affine with a nonzero point; pass --direction to use its "
        "translation vector space");
  }
  return space.direction();
}

json space_json(const AffineMatrixSpace& s) {
  json basis = json::array();
  for (int k = 0; k < s.dim(); ++k) basis.push_back(to_text(s.direction().basis_element(k)));
  return json{{"n", s.mat_rows()},
              {"p", s.mat_cols()},
              {"q", s.field().order()},
              {"dim", s.dim()},
              {"point", to_text(s.point())},
              {"basis", basis}};
}

json linear_space_json(const LinearMatrixSpace& s) {
  return space_json(AffineMatrixSpace::from_linear(s));
}

json outcome_json(const DieudonneOutcome& outcome) {
  json witnesses = json::array();
  for (const Witness& w : outcome.witnesses) {
    json entry{{"kind", witness_kind_name(w.kind)}};
    if (!w.vec.empty()) entry["vector"] = w.vec;
    witnesses.push_back(entry);
  }
  return json{{"status", outcome_status_name(outcome.status)},
              {"dim", outcome.dim},
              {"max_rank", outcome.max_rank_found},
              {"witnesses", witnesses}};
}

json report_json(const VerificationReport& r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(r.checksum));
  return json{{"mode", r.mode},
              {"n", r.n},
              {"p", r.p},
              {"q", r.q},
              {"target_dim", r.target_dim},
              {"spaces_scanned", r.spaces_scanned},
              {"singular_spaces_found", r.singular_spaces_found},
              {"histogram", r.outcome_histogram},
              {"violations", r.violations},
              {"exceptional_spaces", r.exceptional_spaces},
              {"checksum", std::string("0x") + buf}};
}

AffineMatrixSpace canonical_exceptional_space() {
  FieldCtx f2(2);
  Matrix point = Matrix::from_rows({{1, 0}, {0, 0}}, f2);
  std::vector<Matrix> gens = {Matrix::from_rows({{0, 1}, {0, 0}}, f2),
                              Matrix::from_rows({{1, 0}, {0, 1}}, f2)};
  return AffineMatrixSpace(point, LinearMatrixSpace::span(2, 2, f2, gens));
}

int cmd_rank(const GlobalOptions& global, std::uint32_t q, const std::string& inline_text,
             const std::string& file, std::ostream& out) {
  std::string text = inline_text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open matrix file '" + file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    // Allow newline-separated rows in files.
    for (char& c : text) {
      if (c == '\n') c = ';';
    }
  }
  Matrix m = parse_matrix(text, FieldCtx(q));
  int r = rank(m);
  if (global.json_output) {
    out << json{{"rank", r}, {"n", m.rows()}, {"p", m.cols()}, {"q", q}}.dump(2) << '\n';
  } else {
    out << r << '\n';
  }
  return 0;
}

int cmd_schur(const GlobalOptions& global, const std::string& path, bool use_direction,
              std::ostream& out) {
  LinearMatrixSpace space = load_linear_space(path, use_direction);
  SchurClassification c = classify_rank_one_space(space);
  if (global.json_output) {
    json j{{"kind", schur_kind_name(c.kind)}};
    if (c.fixed_form) j["fixed_form"] = *c.fixed_form;
    if (c.fixed_vector) j["fixed_vector"] = *c.fixed_vector;
    if (c.column_factors) j["column_factors"] = linear_space_json(*c.column_factors);
    if (c.row_factors) j["row_factors"] = linear_space_json(*c.row_factors);
    if (c.rank2_certificate) j["rank2_certificate"] = to_text(*c.rank2_certificate);
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "kind: " << schur_kind_name(c.kind) << '\n';
  if (c.fixed_form) out << "fixed_form: " << vec_to_text(*c.fixed_form) << '\n';
  if (c.fixed_vector) out << "fixed_vector: " << vec_to_text(*c.fixed_vector) << '\n';
  if (c.column_factors) {
    out << "column_factors_dim: " << c.column_factors->dim() << '\n';
    for (int k = 0; k < c.column_factors->dim(); ++k) {
      out << "column_factor: "
          << vec_to_text(c.column_factors->basis_element(k).transpose().data()) << '\n';
    }
  }
  if (c.row_factors) {
    out << "row_factors_dim: " << c.row_factors->dim() << '\n';
    for (int k = 0; k < c.row_factors->dim(); ++k) {
      out << "row_factor: " << vec_to_text(c.row_factors->basis_element(k).data()) << '\n';
    }
  }
  if (c.rank2_certificate) {
    out << "rank2_certificate: " << to_text(*c.rank2_certificate) << '\n';
  }
  return 0;
}

int cmd_complete(const GlobalOptions& global, std::uint32_t q, const std::string& row_text,
                 const std::string& col_text, std::ostream& out) {
  FieldCtx field(q);
  Matrix row = parse_matrix(row_text, field);
  Matrix col = parse_matrix(col_text, field);
  if (row.rows() != 1) throw std::invalid_argument("--row must be a single row");
  if (col.rows() != 1)
    throw std::invalid_argument("--col must be a single row of entries (the column)");
  Vec first_row(row.row(0).begin(), row.row(0).end());
  Vec first_col(col.row(0).begin(), col.row(0).end());
  std::optional<Matrix> m = try_complete_to_full_rank(first_row, first_col, field);
  if (global.json_output) {
    json j{{"q", q}, {"n", first_col.size()}, {"p", first_row.size()}};
    if (m) {
      j["completion"] = to_text(*m);
      j["rank"] = rank(*m);
    } else {
      j["completion"] = nullptr;
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  if (m) {
    out << to_text(*m) << '\n';
  } else {
    out << "NoCompletion" << '\n';
  }
  return 0;
}

int cmd_dualize(const GlobalOptions& global, const std::string& path, bool use_direction,
                std::ostream& out) {
  LinearMatrixSpace space = load_linear_space(path, use_direction);
  LinearMatrixSpace dual = orthogonal(space);
  if (global.json_output) {
    out << linear_space_json(dual).dump(2) << '\n';
  } else {
    write_space(out, AffineMatrixSpace::from_linear(dual));
  }
  return 0;
}

int cmd_spectrum(const GlobalOptions& global, const std::string& path, bool use_direction,
                 std::ostream& out) {
  LinearMatrixSpace space = load_linear_space(path, use_direction);
  auto spectrum = dual_rank_spectrum(space, global.cap);

  struct Row {
    Vec y;
    int dim_s_y;
    int rk_yhat;
  };
  std::vector<Row> rows;
  for_each_projective(space.mat_rows(), space.field(), [&](const Vec& y) {
    RankIdentityReport r = rank_identity_report(space, y);
    rows.push_back({y, r.dim_s_sub_y, r.rk_yhat});
    return true;
  });

  if (global.json_output) {
    json table = json::array();
    for (const Row& r : rows) {
      table.push_back(json{{"y", r.y}, {"dim_s_y", r.dim_s_y}, {"rk_yhat", r.rk_yhat}});
    }
    json counts = json::object();
    for (const auto& [rk, count] : spectrum) counts[std::to_string(rk)] = count;
    out << json{{"spectrum", counts}, {"table", table}}.dump(2) << '\n';
    return 0;
  }
  out << "spectrum:";
  for (const auto& [rk, count] : spectrum) out << ' ' << rk << ':' << count;
  out << '\n';
  for (const Row& r : rows) {
    out << "y: " << vec_to_text(r.y) << "  dim_s_y: " << r.dim_s_y
        << "  rk_yhat: " << r.rk_yhat << '\n';
  }
  return 0;
}

int cmd_classify(const GlobalOptions& global, const std::string& path, std::ostream& out) {
  AffineMatrixSpace space = load_space(path);
  DieudonneOutcome outcome = classify_singular_space(space, global.cap);
  if (global.json_output) {
    out << outcome_json(outcome).dump(2) << '\n';
  } else {
    out << outcome_to_text(outcome);
  }
  return 0;
}

int cmd_verify(const GlobalOptions& global, bool bound, bool equality, int n, int p,
               std::uint32_t q, int jobs, int dim, std::ostream& out, std::ostream& err) {
  if (bound == equality) {
    throw std::invalid_argument("verify: pass exactly one of --bound / --equality");
  }
  VerifyOptions options;
  options.jobs = jobs;
  options.dim_override = dim;
  options.cap = global.cap;
  VerificationReport report = bound ? verify_dimension_bound(n, p, q, options)
                                    : verify_equality_classification(n, p, q, options);
  if (global.json_output) {
    out << report_json(report).dump(2) << '\n';
  } else {
    out << report.serialize();
  }
  err << "elapsed: " << report.wall_seconds << "s\n";
  return report.ok() ? 0 : 1;
}

int cmd_demo_exceptional(const GlobalOptions& global, const std::string& out_path,
                         std::ostream& out) {
  AffineMatrixSpace space = canonical_exceptional_space();
  DieudonneOutcome outcome = classify_singular_space(space, global.cap);
  if (global.json_output) {
    out << json{{"space", space_json(space)}, {"classification", outcome_json(outcome)}}
               .dump(2)
        << '\n';
    if (!out_path.empty()) {
      std::ofstream file(out_path);
      if (!file) throw std::invalid_argument("cannot write '" + out_path + "'");
      write_space(file, space);
    }
    return 0;
  }
  if (out_path.empty()) {
    write_space(out, space);
    out << '\n';
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::invalid_argument("cannot write '" + out_path + "'");
    write_space(file, space);
  }
  out << outcome_to_text(outcome);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact linear algebra over prime fields: singular matrix spaces, trace "
               "duality, and exhaustive verification of the dimension bound"};
  app.name("singmat");

  GlobalOptions global;
  app.add_flag("--json", global.json_output, "emit JSON instead of text");
  app.add_option("--cap", global.cap, "enumeration cap (elements per space walk)")
      ->default_val(kDefaultEnumerationCap);
  app.add_option("--seed", global.seed, "seed for randomized helpers (reserved)");
  app.require_subcommand(1);

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "rank of one matrix");
  std::uint32_t rank_q = 0;
  std::string rank_matrix, rank_file;
  rank_cmd->add_option("--q", rank_q, "field order (prime)")->required();
  rank_cmd->add_option("matrix", rank_matrix, "matrix text, e.g. \"1 0; 0 1\"");
  rank_cmd->add_option("--file", rank_file, "read the matrix from a file");

  // schur
  auto* schur_cmd = app.add_subcommand("schur", "classify a rank <= 1 space");
  std::string schur_path;
  bool schur_direction = false;
  schur_cmd->add_option("space", schur_path, "space file ('-' for stdin)")->required();
  schur_cmd->add_flag("--direction", schur_direction,
                      "classify the translation space of an affine input");

  // complete
  auto* complete_cmd =
      app.add_subcommand("complete", "fill a bordered matrix to full rank");
  std::uint32_t complete_q = 0;
  std::string complete_row, complete_col;
  complete_cmd->add_option("--q", complete_q, "field order (prime)")->required();
  complete_cmd->add_option("--row", complete_row, "first row, e.g. \"1 0 2\"")->required();
  complete_cmd->add_option("--col", complete_col, "first column entries, e.g. \"1 1\"")
      ->required();

  // dualize
  auto* dualize_cmd = app.add_subcommand("dualize", "trace-orthogonal complement");
  std::string dualize_path;
  bool dualize_direction = false;
  dualize_cmd->add_option("space", dualize_path, "space file ('-' for stdin)")->required();
  dualize_cmd->add_flag("--direction", dualize_direction,
                        "dualize the translation space of an affine input");

  // spectrum
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "dual rank spectrum and the per-y rank table");
  std::string spectrum_path;
  bool spectrum_direction = false;
  spectrum_cmd->add_option("space", spectrum_path, "space file ('-' for stdin)")->required();
  spectrum_cmd->add_flag("--direction", spectrum_direction,
                         "use the translation space of an affine input");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "classify a singular affine space");
  std::string classify_path;
  classify_cmd->add_option("space", classify_path, "space file ('-' for stdin)")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "exhaustive verification scan");
  bool verify_bound = false, verify_equality = false;
  int verify_n = 0, verify_p = 0, verify_jobs = int(std::thread::hardware_concurrency());
  int verify_dim = -1;
  std::uint32_t verify_q = 0;
  if (verify_jobs < 1) verify_jobs = 1;
  verify_cmd->add_flag("--bound", verify_bound, "dimension bound scan at p(n-1)+1");
  verify_cmd->add_flag("--equality", verify_equality, "equality classification scan at p(n-1)");
  verify_cmd->add_option("--n", verify_n, "rows")->required();
  verify_cmd->add_option("--p", verify_p, "columns")->required();
  verify_cmd->add_option("--q", verify_q, "field order (prime)")->required();
  verify_cmd->add_option("--jobs", verify_jobs, "worker threads");
  verify_cmd->add_option("--dim", verify_dim, "scan a custom dimension instead of the default");

  // demo-exceptional
  auto* demo_cmd = app.add_subcommand(
      "demo-exceptional",
      "emit the upper-triangular trace-1 space over F_2 and its classification");
  std::string demo_out;
  demo_cmd->add_option("--out", demo_out, "write the space file here instead of stdout");

  std::vector<const char*> argv;
  argv.push_back("singmat");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (rank_cmd->parsed()) {
      if (rank_matrix.empty() == rank_file.empty()) {
        throw std::invalid_argument("rank: pass a matrix argument or --file (not both)");
      }
      return cmd_rank(global, rank_q, rank_matrix, rank_file, out);
    }
    if (schur_cmd->parsed()) return cmd_schur(global, schur_path, schur_direction, out);
    if (complete_cmd->parsed())
      return cmd_complete(global, complete_q, complete_row, complete_col, out);
    if (dualize_cmd->parsed())
      return cmd_dualize(global, dualize_path, dualize_direction, out);
    if (spectrum_cmd->parsed())
      return cmd_spectrum(global, spectrum_path, spectrum_direction, out);
    if (classify_cmd->parsed()) return cmd_classify(global, classify_path, out);
    if (verify_cmd->parsed()) {
      return cmd_verify(global, verify_bound, verify_equality, verify_n, verify_p, verify_q,
                        verify_jobs, verify_dim, out, err);
    }
    if (demo_cmd->parsed()) return cmd_demo_exceptional(global, demo_out, out);
    err << "error: no command\n";
    return 2;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace singmat
