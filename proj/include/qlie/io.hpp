#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qlie/criteria.hpp"
#include "qlie/simulate.hpp"

namespace qlie {

/// File parsing or validation failure; exit code 2 at the CLI.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedSystem {
  ControlSystem system;
  Tolerances tolerances;
  std::string digest;  // fnv1a-64 over the raw file bytes
};

/// Loads and validates a system description file. Interval value sets
/// {min, max, points} are expanded to a uniform grid; sampled tables are
/// re-aligned to the canonically sorted value set.
LoadedSystem load_system_file(const std::string& path);

ControlSystem system_from_json(const nlohmann::json& j, Tolerances* tolerances_out = nullptr);
nlohmann::json system_to_json(const ControlSystem& sys);

/// Control file: JSON list of {"duration": d, "value": v}.
PiecewiseConstantControl load_control_file(const std::string& path);
PiecewiseConstantControl control_from_json(const nlohmann::json& j);

DensityMatrix load_density_file(const std::string& path);

/// Comma-separated complex entries, each "a", "bi" or "a+bi" / "a-bi".
Eigen::VectorXcd parse_state_csv(const std::string& text);

nlohmann::json report_to_json(const ControllabilityReport& report, const std::string& digest,
                              double wall_time_seconds);

void print_report(std::ostream& os, const ControllabilityReport& report);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace qlie
