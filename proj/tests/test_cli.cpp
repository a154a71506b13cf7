#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "singmat/cli.hpp"
#include "singmat/spaces.hpp"

using namespace singmat;
using namespace singmat::testing;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Temp file helper for commands that read space files.
struct TempFile {
  std::string path;
  TempFile() {
    char tmpl[] = "/tmp/singmat-test-XXXXXX";
    int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    close(fd);
    path = tmpl;
  }
  explicit TempFile(const std::string& contents) : TempFile() {
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("rank command") {
  CliResult r = run({"rank", "--q", "2", "1 0; 0 1"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  CliResult j = run({"--json", "rank", "--q", "3", "1 2; 2 4"});
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["rank"] == 1);
}

TEST_CASE("rank command input errors") {
  CHECK(run({"rank", "--q", "4", "1 0; 0 1"}).code == 2);   // non-prime field
  CHECK(run({"rank", "--q", "2", "1 0; 0"}).code == 2);     // ragged rows
  CHECK(run({"rank", "--q", "2"}).code == 2);               // no matrix
  CHECK(run({"nonsense"}).code == 2);                       // unknown command
}

TEST_CASE("demo-exceptional emits a space that classifies as exceptional") {
  CliResult r = run({"demo-exceptional"});
  CHECK(r.code == 0);
  CHECK(r.out.find("status: Classified") != std::string::npos);
  CHECK(r.out.find("witness: exceptional_f2") != std::string::npos);

  // Round trip: the emitted space file re-parses to the canonical value.
  std::string text = r.out.substr(0, r.out.find("\n\n") + 1);
  std::stringstream buf(text);
  AffineMatrixSpace parsed = read_space(buf);
  CHECK(parsed == exceptional_space_f2());
}

TEST_CASE("classify command reads a space file") {
  TempFile file(space_to_text(exceptional_space_f2()));
  CliResult r = run({"classify", file.path});
  CHECK(r.code == 0);
  CHECK(r.out.find("status: Classified") != std::string::npos);
  CHECK(r.out.find("witness: exceptional_f2") != std::string::npos);

  CliResult j = run({"--json", "classify", file.path});
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["status"] == "Classified");
  CHECK(parsed["witnesses"].size() == 1);
}

TEST_CASE("dualize output round-trips and dualizes back") {
  FieldCtx f2(2);
  LinearMatrixSpace s = LinearMatrixSpace::span(
      2, 2, f2, {matrix_unit(2, 2, 1, 0, f2), matrix_unit(2, 2, 1, 1, f2)});
  TempFile file(space_to_text(AffineMatrixSpace::from_linear(s)));
  CliResult r = run({"dualize", file.path});
  CHECK(r.code == 0);
  std::stringstream buf(r.out);
  AffineMatrixSpace dual = read_space(buf);
  CHECK(dual.dim() == 2);
  TempFile dual_file(r.out);
  CliResult back = run({"dualize", dual_file.path});
  std::stringstream buf2(back.out);
  CHECK(read_space(buf2).direction() == s);
}

TEST_CASE("dualize requires a linear space unless --direction is passed") {
  TempFile file(space_to_text(exceptional_space_f2()));
  CHECK(run({"dualize", file.path}).code == 2);
  CHECK(run({"dualize", "--direction", file.path}).code == 0);
}

TEST_CASE("spectrum command prints the per-y table") {
  TempFile file(space_to_text(exceptional_space_f2()));
  CliResult r = run({"spectrum", "--direction", file.path});
  CHECK(r.code == 0);
  CHECK(r.out.find("spectrum:") != std::string::npos);
  // One row per projective class of F_2^2.
  CHECK(std::count(r.out.begin(), r.out.end(), 'y') >= 3);
  CliResult j = run({"--json", "spectrum", "--direction", file.path});
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["table"].size() == 3);
}

TEST_CASE("schur command") {
  FieldCtx f2(2);
  LinearMatrixSpace first_row = LinearMatrixSpace::span(
      2, 2, f2, {matrix_unit(2, 2, 0, 0, f2), matrix_unit(2, 2, 0, 1, f2)});
  TempFile file(space_to_text(AffineMatrixSpace::from_linear(first_row)));
  CliResult r = run({"schur", file.path});
  CHECK(r.code == 0);
  CHECK(r.out.find("kind: FixedVector") != std::string::npos);
  CHECK(r.out.find("fixed_vector: 1 0") != std::string::npos);
}

TEST_CASE("complete command") {
  CliResult ok = run({"complete", "--q", "2", "--row", "1 0", "--col", "1 0"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "1 0; 0 1\n");
  CliResult none = run({"complete", "--q", "2", "--row", "0 0", "--col", "0 0"});
  CHECK(none.code == 0);
  CHECK(none.out == "NoCompletion\n");
  CliResult mismatch = run({"complete", "--q", "2", "--row", "1 0", "--col", "0 1"});
  CHECK(mismatch.code == 2);
}

TEST_CASE("verify command exit codes and determinism") {
  CliResult r = run({"verify", "--bound", "--n", "2", "--p", "2", "--q", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("violations: 0") != std::string::npos);
  CHECK(r.err.find("elapsed:") != std::string::npos);

  CliResult j1 = run({"verify", "--equality", "--n", "2", "--p", "2", "--q", "2",
                      "--jobs", "1"});
  CliResult j4 = run({"verify", "--equality", "--n", "2", "--p", "2", "--q", "2",
                      "--jobs", "4"});
  CHECK(j1.code == 0);
  CHECK(j1.out == j4.out);

  // Unsupported parameters surface as exit code 3.
  CHECK(run({"verify", "--bound", "--n", "4", "--p", "4", "--q", "2"}).code == 3);
  // Missing mode flag is a usage error.
  CHECK(run({"verify", "--n", "2", "--p", "2", "--q", "2"}).code == 2);
}

TEST_CASE("verify --json emits machine-readable reports") {
  CliResult r = run({"--json", "verify", "--equality", "--n", "2", "--p", "2", "--q", "2"});
  CHECK(r.code == 0);
  auto parsed = nlohmann::json::parse(r.out);
  CHECK(parsed["spaces_scanned"] == 140);
  CHECK(parsed["histogram"]["exceptional_f2"] == 9);
  CHECK(parsed["violations"].empty());
}

TEST_CASE("demo-exceptional --out writes the space file") {
  TempFile file;
  CliResult r = run({"demo-exceptional", "--out", file.path});
  CHECK(r.code == 0);
  std::ifstream in(file.path);
  REQUIRE(in.good());
  AffineMatrixSpace parsed = read_space(in);
  CHECK(parsed == exceptional_space_f2());
}

TEST_CASE("verify --dim overrides the scanned dimension") {
  CliResult r = run({"verify", "--bound", "--n", "2", "--p", "2", "--q", "2", "--dim", "2"});
  CHECK(r.code == 1);  // singular spaces exist at the critical dimension
  CHECK(r.out.find("violations: 15") != std::string::npos);
  CHECK(run({"verify", "--bound", "--n", "2", "--p", "2", "--q", "2", "--dim", "9"}).code ==
        2);
}

TEST_CASE("cap overrides surface as exit code 3") {
  TempFile file(space_to_text(exceptional_space_f2()));  // 4 elements
  CliResult r = run({"--cap", "2", "classify", file.path});
  CHECK(r.code == 3);
  CHECK(r.err.find("cap") != std::string::npos);
  CHECK(run({"--cap", "4", "classify", file.path}).code == 0);
}

TEST_CASE("seed flag is accepted") {
  CHECK(run({"--seed", "42", "rank", "--q", "2", "1 0; 0 1"}).code == 0);
}

TEST_CASE("help exits zero") {
  CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("singmat") != std::string::npos);
}
