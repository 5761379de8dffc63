#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlie/io.hpp"

#ifdef __unix__
#include <sys/wait.h>
#endif

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qlie_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CommandResult run_cli(const std::string& args) {
  const fs::path out_file = scratch_dir() / "out.txt";
  const std::string cmd =
      std::string(QLIE_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CommandResult result;
#ifdef __unix__
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  result.exit_code = status;
#endif
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  return result;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

const char* kSzSxSystem = R"({
  "n": 2,
  "h0": {"re": [[1.0, 0.0], [0.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]},
  "mu": [{"re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}],
  "functionals": {"type": "monomial", "degree": 1},
  "value_set": [-1.0, 0.0, 1.0]
})";

const char* kRabiSystem = R"({
  "n": 2,
  "h0": {"re": [[0.0, 0.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]},
  "mu": [{"re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}],
  "functionals": {"type": "monomial", "degree": 1},
  "value_set": [-1.0, 0.0, 1.0]
})";

}  // namespace

TEST_CASE("analyze prints the verdict and exits 0") {
  const fs::path sys = write_file("szsx.json", kSzSxSystem);
  const CommandResult r = run_cli("analyze " + sys.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("wavefunction controllable: yes") != std::string::npos);
}

TEST_CASE("analyze exits 0 on negative verdicts too") {
  const char* diagonal = R"({
    "n": 2,
    "h0": {"re": [[1.0, 0.0], [0.0, 2.0]], "im": [[0.0, 0.0], [0.0, 0.0]]},
    "mu": [{"re": [[2.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}],
    "functionals": {"type": "monomial", "degree": 1},
    "value_set": [-1.0, 0.0, 1.0]
  })";
  const fs::path sys = write_file("diag.json", diagonal);
  const CommandResult r = run_cli("analyze " + sys.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("wavefunction controllable: no") != std::string::npos);
}

TEST_CASE("analyze writes a schema-conforming JSON report") {
  const fs::path sys = write_file("szsx.json", kSzSxSystem);
  const fs::path out = scratch_dir() / "report.json";
  const CommandResult r = run_cli("analyze " + sys.string() + " --json " + out.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  const json report = json::parse(in);
  CHECK(report["tool"] == "qlie");
  CHECK(report["report"]["lie_dim"] == 3);
  CHECK(report["report"]["density_controllable"] == true);
  CHECK(report["input_digest"].is_string());
}

TEST_CASE("non-Hermitian h0 exits 2 with a field-level message") {
  const char* bad = R"({
    "n": 2,
    "h0": {"re": [[1.0, 3.0], [0.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]},
    "mu": [{"re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}],
    "functionals": {"type": "monomial", "degree": 1},
    "value_set": [-1.0, 0.0, 1.0]
  })";
  const fs::path sys = write_file("bad.json", bad);
  const CommandResult r = run_cli("analyze " + sys.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("h0") != std::string::npos);
}

TEST_CASE("missing and unparsable files exit 2") {
  CHECK(run_cli("analyze /nonexistent/system.json").exit_code == 2);
  const fs::path garbage = write_file("garbage.json", "{not json");
  CHECK(run_cli("analyze " + garbage.string()).exit_code == 2);
}

TEST_CASE("simulate runs the Rabi quarter-period pulse") {
  const fs::path sys = write_file("rabi.json", kRabiSystem);
  const fs::path ctrl =
      write_file("pulse.json", R"([{"duration": 1.5707963267948966, "value": 1.0}])");
  const fs::path out = scratch_dir() / "sim.json";
  const CommandResult r = run_cli("simulate " + sys.string() + " --control " + ctrl.string() +
                                  " --state 1,0 --json " + out.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  const json sim = json::parse(in);
  CHECK(sim["populations"][0].get<double>() < 1e-9);
  CHECK(sim["populations"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sim["diagnostics"]["norm_drift"].get<double>() < 1e-10);
  CHECK(sim["diagnostics"]["unitarity_residual"].get<double>() < 1e-9);
}

TEST_CASE("simulate with an empty control is the identity") {
  const fs::path sys = write_file("szsx.json", kSzSxSystem);
  const fs::path ctrl = write_file("empty.json", "[]");
  const CommandResult r = run_cli("simulate " + sys.string() + " --control " + ctrl.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("unitarity residual: 0") != std::string::npos);
}

TEST_CASE("malformed control exits 2") {
  const fs::path sys = write_file("szsx.json", kSzSxSystem);
  const fs::path ctrl = write_file("badctrl.json", R"({"duration": 1})");
  CHECK(run_cli("simulate " + sys.string() + " --control " + ctrl.string()).exit_code == 2);
}

TEST_CASE("off-grid control value for a sampled family exits 2") {
  const char* sampled = R"({
    "n": 2,
    "h0": {"re": [[1.0, 0.0], [0.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]},
    "mu": [{"re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}],
    "functionals": {"type": "sampled", "values": [[-1.0, 0.0, 1.0]]},
    "value_set": [-1.0, 0.0, 1.0]
  })";
  const fs::path sys = write_file("sampled.json", sampled);
  const fs::path ok = write_file("ongrid.json", R"([{"duration": 1.0, "value": 1.0}])");
  const fs::path bad = write_file("offgrid.json", R"([{"duration": 1.0, "value": 0.5}])");
  CHECK(run_cli("simulate " + sys.string() + " --control " + ok.string()).exit_code == 0);
  CHECK(run_cli("simulate " + sys.string() + " --control " + bad.string()).exit_code == 2);
}

TEST_CASE("demo subcommands") {
  CHECK(run_cli("demo oscillator --n 4").output.find("wavefunction controllable: yes") !=
        std::string::npos);
  CHECK(run_cli("demo oscillator --n 4").exit_code == 0);

  const CommandResult table = run_cli("demo bracket-table");
  CHECK(table.exit_code == 0);
  CHECK(table.output.find("closure dimension: 4") != std::string::npos);

  const CommandResult diag = run_cli("demo diagonal --n 3");
  CHECK(diag.exit_code == 0);
  CHECK(diag.output.find("wavefunction controllable: no") != std::string::npos);
  CHECK(diag.output.find("density matrix controllable: no") != std::string::npos);

  CHECK(run_cli("demo unknown-model").exit_code == 2);
}

TEST_CASE("QLIE_TOL environment variable is honored and the flag wins") {
  const fs::path sys = write_file("szsx.json", kSzSxSystem);
  const fs::path out = scratch_dir() / "tolreport.json";

  // absurd env tolerance breaks rank detection unless the flag overrides it
  const std::string env_cmd = "QLIE_TOL=0.9999 " + std::string(QLIE_CLI_PATH) + " analyze " +
                              sys.string() + " --json " + out.string() + " > /dev/null 2>&1";
  REQUIRE(std::system(env_cmd.c_str()) == 0);
  {
    std::ifstream in(out);
    const json rep = json::parse(in);
    CHECK(rep["report"]["tolerances"]["rank"].get<double>() == 0.9999);
  }

  const std::string flag_cmd = "QLIE_TOL=0.9999 " + std::string(QLIE_CLI_PATH) + " analyze " +
                               sys.string() + " --tol 1e-9 --json " + out.string() +
                               " > /dev/null 2>&1";
  REQUIRE(std::system(flag_cmd.c_str()) == 0);
  {
    std::ifstream in(out);
    const json rep = json::parse(in);
    CHECK(rep["report"]["tolerances"]["rank"].get<double>() == 1e-9);
  }
}
