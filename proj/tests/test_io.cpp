#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qlie/io.hpp"
#include "qlie/models.hpp"
#include "test_helpers.hpp"

using namespace qlie;
using nlohmann::json;

namespace {

json sz_sx_json() {
  return json::parse(R"({
    "n": 2,
    "h0": {"re": [[1.0, 0.0], [0.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]},
    "mu": [{"re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}],
    "functionals": {"type": "monomial", "degree": 1},
    "value_set": [-1.0, 0.0, 1.0]
  })");
}

// Minimal structural validator for the draft-07 subset the schemas use:
// "type", "required", "properties", "items".
bool validates(const json& schema, const json& value);

bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  return false;
}

bool validates(const json& schema, const json& value) {
  if (schema.contains("type") &&
      !type_matches(schema["type"].get<std::string>(), value))
    return false;
  if (schema.contains("required"))
    for (const json& field : schema["required"])
      if (!value.contains(field.get<std::string>())) return false;
  if (schema.contains("properties") && value.is_object())
    for (const auto& [name, sub] : schema["properties"].items())
      if (value.contains(name) && !validates(sub, value[name])) return false;
  if (schema.contains("items") && value.is_array())
    for (const json& element : value)
      if (!validates(schema["items"], element)) return false;
  return true;
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(QLIE_SCHEMA_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("system_from_json round-trips every numeric value exactly") {
  const json original = sz_sx_json();
  const ControlSystem sys = system_from_json(original);
  const json again = system_to_json(sys);
  CHECK(again["n"].get<int>() == 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      CHECK(again["h0"]["re"][r][c].get<double>() ==
            original["h0"]["re"][r][c].get<double>());
      CHECK(again["mu"][0]["re"][r][c].get<double>() ==
            original["mu"][0]["re"][r][c].get<double>());
    }
  CHECK(again["value_set"] == original["value_set"]);

  // a second round trip is textually stable
  const ControlSystem sys2 = system_from_json(again);
  CHECK(system_to_json(sys2).dump() == again.dump());
}

TEST_CASE("round trip preserves awkward doubles") {
  json j = sz_sx_json();
  j["h0"]["re"][0][0] = 0.1;
  j["h0"]["re"][1][1] = -0.1;
  j["mu"][0]["re"][0][1] = 0.30000000000000004;
  j["mu"][0]["re"][1][0] = 0.30000000000000004;
  j["value_set"] = {-0.7071067811865476, 0.0, 0.7071067811865476};
  const json again = system_to_json(system_from_json(j));
  CHECK(again["mu"][0]["re"][0][1].get<double>() == 0.30000000000000004);
  CHECK(again["value_set"][0].get<double>() == -0.7071067811865476);
}

TEST_CASE("system validation failures carry field names") {
  json bad = sz_sx_json();
  bad["h0"]["re"][0][1] = 5.0;  // not Hermitian
  try {
    system_from_json(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("h0") != std::string::npos);
  }

  json missing = sz_sx_json();
  missing.erase("mu");
  CHECK_THROWS_AS(system_from_json(missing), ParseError);

  json ragged = sz_sx_json();
  ragged["h0"]["re"][0] = {1.0};
  CHECK_THROWS_AS(system_from_json(ragged), ParseError);

  json degree = sz_sx_json();
  degree["functionals"]["degree"] = 2;
  CHECK_THROWS_AS(system_from_json(degree), ParseError);
}

TEST_CASE("interval value sets expand to a uniform grid") {
  json j = sz_sx_json();
  j["value_set"] = json{{"min", -2.0}, {"max", 2.0}, {"points", 5}};
  const ControlSystem sys = system_from_json(j);
  CHECK(sys.value_set().points() == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});

  j["value_set"] = json{{"min", 0.0}, {"max", 1.0}};
  CHECK(system_from_json(j).value_set().size() == 33);
}

TEST_CASE("sampled tables are re-aligned when the value set needs sorting") {
  json j = sz_sx_json();
  j["value_set"] = {1.0, -1.0, 0.0};
  j["functionals"] = json{{"type", "sampled"}, {"values", {{10.0, -10.0, 0.0}}}};
  const ControlSystem sys = system_from_json(j);
  CHECK(sys.value_set().points() == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(sys.family().evaluate(-1.0)(0) == -10.0);
  CHECK(sys.family().evaluate(1.0)(0) == 10.0);
}

TEST_CASE("control parsing") {
  const json j = json::parse(R"([{"duration": 0.5, "value": 1.0}, {"duration": 1.5, "value": -1.0}])");
  const PiecewiseConstantControl ctrl = control_from_json(j);
  REQUIRE(ctrl.segments().size() == 2);
  CHECK(ctrl.total_duration() == doctest::Approx(2.0));
  CHECK_THROWS_AS(control_from_json(json::parse(R"({"duration": 1})")), ParseError);
  CHECK_THROWS_AS(control_from_json(json::parse(R"([{"duration": -1, "value": 0}])")), ParseError);
}

TEST_CASE("state csv parsing") {
  const Eigen::VectorXcd v = parse_state_csv("1,0");
  REQUIRE(v.size() == 2);
  CHECK(v(0) == std::complex<double>(1, 0));

  const Eigen::VectorXcd w = parse_state_csv("0.5-0.5i, 0.5+0.5i");
  CHECK(w(0) == std::complex<double>(0.5, -0.5));
  CHECK(w(1) == std::complex<double>(0.5, 0.5));

  const Eigen::VectorXcd u = parse_state_csv("1i,0");
  CHECK(u(0) == std::complex<double>(0, 1));

  CHECK_THROWS_AS(parse_state_csv("abc"), ParseError);
  CHECK_THROWS_AS(parse_state_csv(""), ParseError);
}

TEST_CASE("analyze report JSON validates against the shipped schema") {
  const ControllabilityReport report = analyze(truncated_oscillator(3));
  const json out = report_to_json(report, fnv1a_hex("fixture"), 0.01);
  CHECK(validates(load_schema("report.schema.json"), out));
  CHECK(out["report"]["wavefunction_controllable"].get<bool>());
}

TEST_CASE("digest is stable and content-sensitive") {
  CHECK(fnv1a_hex("") == fnv1a_hex(""));
  CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
  CHECK(fnv1a_hex("qlie").size() == 16);
}

TEST_CASE("print_report contains the verdict lines") {
  const ControllabilityReport report = analyze(truncated_oscillator(2));
  std::ostringstream os;
  print_report(os, report);
  CHECK(os.str().find("wavefunction controllable: yes") != std::string::npos);
  CHECK(os.str().find("density matrix controllable: yes") != std::string::npos);
}
