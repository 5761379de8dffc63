#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlie/io.hpp"
#include "qlie/models.hpp"
#include "qlie/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

using nlohmann::json;

double resolve_tolerance(double flag_value, bool flag_given, double file_value) {
  // precedence: --tol flag, then QLIE_TOL, then the system file, then default
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("QLIE_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw qlie::ParseError("QLIE_TOL: cannot parse as a number");
    }
  }
  return file_value;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw qlie::ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

int run_analyze(const std::string& path, double tol_flag, bool tol_given,
                const std::string& json_path, int max_rounds) {
  const auto start = std::chrono::steady_clock::now();
  qlie::LoadedSystem loaded = qlie::load_system_file(path);
  qlie::Tolerances tol = loaded.tolerances;
  tol.rank = resolve_tolerance(tol_flag, tol_given, tol.rank);
  if (max_rounds > 0) tol.max_rounds = max_rounds;

  const qlie::ControllabilityReport report = qlie::analyze(loaded.system, tol);
  qlie::print_report(std::cout, report);

  if (!json_path.empty()) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json_file(json_path, qlie::report_to_json(report, loaded.digest, wall));
  }
  return kExitOk;
}

int run_simulate(const std::string& path, const std::string& control_path,
                 const std::string& state_csv, const std::string& density_path,
                 const std::string& json_path) {
  const auto start = std::chrono::steady_clock::now();
  qlie::LoadedSystem loaded = qlie::load_system_file(path);
  const qlie::ControlSystem& sys = loaded.system;

  qlie::PiecewiseConstantControl ctrl;
  if (!control_path.empty()) ctrl = qlie::load_control_file(control_path);

  qlie::ComplexMatrix u;
  try {
    u = qlie::propagator(sys, ctrl);
  } catch (const std::invalid_argument& e) {
    throw qlie::ParseError(std::string("control: ") + e.what());
  }
  const double residual = qlie::unitarity_residual(u);

  json out;
  out["tool"] = "qlie";
  out["version"] = qlie::kVersion;
  out["input_digest"] = loaded.digest;
  out["segments"] = ctrl.segments().size();
  out["total_duration"] = ctrl.total_duration();
  out["diagnostics"] = json{{"unitarity_residual", residual}};

  std::cout << "propagator (" << sys.dimension() << "x" << sys.dimension() << "), "
            << ctrl.segments().size() << " segment(s), total duration " << ctrl.total_duration()
            << "\n";
  {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      json re_row = json::array(), im_row = json::array();
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        re_row.push_back(u(r, c).real());
        im_row.push_back(u(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    out["propagator"] = json{{"re", re}, {"im", im}};
  }

  if (!state_csv.empty()) {
    Eigen::VectorXcd c0 = qlie::parse_state_csv(state_csv);
    if (c0.size() != sys.dimension()) throw qlie::ParseError("state: wrong dimension");
    try {
      const qlie::QuantumState final_state =
          qlie::propagate_state(sys, ctrl, qlie::QuantumState(std::move(c0)));
      const Eigen::VectorXcd& cf = final_state.coefficients();
      const double drift = std::abs(cf.norm() - 1.0);
      std::cout << "final state components (re, im) and populations:\n";
      json comps = json::array();
      json pops = json::array();
      for (Eigen::Index i = 0; i < cf.size(); ++i) {
        std::cout << "  [" << i << "]  " << cf(i).real() << "  " << cf(i).imag() << "   |c|^2 = "
                  << std::norm(cf(i)) << "\n";
        comps.push_back(json{{"re", cf(i).real()}, {"im", cf(i).imag()}});
        pops.push_back(std::norm(cf(i)));
      }
      out["final_state"] = comps;
      out["populations"] = pops;
      out["diagnostics"]["norm_drift"] = drift;
      std::cout << "norm drift: " << drift << "\n";
    } catch (const std::invalid_argument& e) {
      throw qlie::ParseError(std::string("state: ") + e.what());
    }
  }

  if (!density_path.empty()) {
    const qlie::DensityMatrix rho0 = qlie::load_density_file(density_path);
    if (rho0.dimension() != sys.dimension()) throw qlie::ParseError("density: wrong dimension");
    const qlie::DensityMatrix rho = qlie::propagate_density(sys, ctrl, rho0);
    Eigen::SelfAdjointEigenSolver<qlie::ComplexMatrix> before(rho0.matrix(),
                                                              Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<qlie::ComplexMatrix> after(rho.matrix(),
                                                             Eigen::EigenvaluesOnly);
    const double eig_drift =
        (before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff();
    std::cout << "final density diagonal:";
    for (Eigen::Index i = 0; i < rho.dimension(); ++i)
      std::cout << " " << rho.matrix()(i, i).real();
    std::cout << "\neigenvalue drift: " << eig_drift << "\n";
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < rho.dimension(); ++r) {
      json re_row = json::array(), im_row = json::array();
      for (Eigen::Index c = 0; c < rho.dimension(); ++c) {
        re_row.push_back(rho.matrix()(r, c).real());
        im_row.push_back(rho.matrix()(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    out["final_density"] = json{{"re", re}, {"im", im}};
    out["diagnostics"]["eigenvalue_drift"] = eig_drift;
  }

  std::cout << "unitarity residual: " << residual << "\n";
  if (!json_path.empty()) {
    out["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json_file(json_path, out);
  }
  return kExitOk;
}

int run_demo(const std::string& name, int n, int l, std::uint64_t seed,
             const std::string& json_path) {
  if (name == "bracket-table") {
    const qlie::BracketTable table = qlie::oscillator_bracket_table();
    std::cout << "oscillator commutator table: generators";
    for (const std::string& g : table.names()) std::cout << " " << g;
    std::cout << "\nclosure dimension: " << qlie::closure_dim_from_bracket_table(table) << "\n";
    return kExitOk;
  }

  qlie::ControlSystem sys = [&]() {
    if (name == "oscillator") return qlie::truncated_oscillator(n);
    if (name == "random") return qlie::random_dense(n, l, seed);
    if (name == "diagonal") return qlie::diagonal_pair(n);
    throw qlie::ParseError("unknown demo name: " + name +
                           " (expected oscillator, random, diagonal, bracket-table)");
  }();

  std::cout << "demo \"" << name << "\", n = " << n << "\n";
  const qlie::ControllabilityReport report = qlie::analyze(sys);
  qlie::print_report(std::cout, report);
  if (!json_path.empty())
    write_json_file(json_path, qlie::report_to_json(report, "demo:" + name, 0.0));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlie: controllability analysis of quantum control systems with nonlinear "
               "functionals of a single control"};
  app.set_version_flag("--version", qlie::kVersion);
  app.require_subcommand(1);

  std::string path, control_path, state_csv, density_path, json_path, demo_name;
  double tol_flag = qlie::kRankTol;
  int max_rounds = 0;
  int demo_n = 4;
  int demo_l = 1;
  std::uint64_t demo_seed = 1;

  CLI::App* analyze = app.add_subcommand("analyze", "decide controllability of a system file");
  analyze->add_option("path", path, "system JSON file")->required();
  CLI::Option* tol_opt = analyze->add_option("--tol", tol_flag, "rank tolerance (relative)");
  analyze->add_option("--json", json_path, "write the report as JSON to this path");
  analyze->add_option("--max-rounds", max_rounds, "cap closure rounds (default n^2 + 2)");

  CLI::App* simulate = app.add_subcommand("simulate", "propagate a piecewise-constant control");
  simulate->add_option("path", path, "system JSON file")->required();
  simulate->add_option("--control", control_path, "control JSON file: [{duration, value}, ...]");
  simulate->add_option("--state", state_csv, "initial state, comma-separated complex entries");
  simulate->add_option("--density", density_path, "initial density matrix JSON file");
  simulate->add_option("--json", json_path, "write results as JSON to this path");

  CLI::App* demo = app.add_subcommand("demo", "analyze a built-in model");
  demo->add_option("name", demo_name, "oscillator | random | diagonal | bracket-table")
      ->required();
  demo->add_option("--n", demo_n, "dimension");
  demo->add_option("--l", demo_l, "number of coupling operators (random)");
  demo->add_option("--seed", demo_seed, "seed (random)");
  demo->add_option("--json", json_path, "write the report as JSON to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze))
      return run_analyze(path, tol_flag, tol_opt->count() > 0, json_path, max_rounds);
    if (app.got_subcommand(simulate))
      return run_simulate(path, control_path, state_csv, density_path, json_path);
    if (app.got_subcommand(demo)) return run_demo(demo_name, demo_n, demo_l, demo_seed, json_path);
  } catch (const qlie::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qlie::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitParse;
}
