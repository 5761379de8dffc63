#include "qlie/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qlie/version.hpp"

namespace qlie {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path, std::string* raw_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (raw_out) *raw_out = buf.str();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

double require_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number())
    throw ParseError("missing or non-numeric field: " + field);
  return j[field].get<double>();
}

Eigen::MatrixXd parse_real_matrix(const json& j, const std::string& field, Eigen::Index n) {
  if (!j.is_array()) throw ParseError(field + ": expected an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != n)
    throw ParseError(field + ": expected " + std::to_string(n) + " rows");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError(field + ": row " + std::to_string(r) + " has wrong length");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw ParseError(field + ": non-numeric entry");
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

ComplexMatrix parse_complex_matrix(const json& j, const std::string& field, Eigen::Index n) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError(field + ": expected an object with \"re\" and \"im\" arrays");
  const Eigen::MatrixXd re = parse_real_matrix(j["re"], field + ".re", n);
  const Eigen::MatrixXd im = parse_real_matrix(j["im"], field + ".im", n);
  return re.cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
}

json dump_complex_matrix(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::vector<double> parse_value_set(const json& j) {
  if (j.is_array()) {
    std::vector<double> pts;
    for (const json& x : j) {
      if (!x.is_number()) throw ParseError("value_set: non-numeric entry");
      pts.push_back(x.get<double>());
    }
    return pts;
  }
  if (j.is_object()) {
    const double lo = require_number(j, "min");
    const double hi = require_number(j, "max");
    int count = 33;
    if (j.contains("points")) {
      if (!j["points"].is_number_integer() || j["points"].get<int>() < 2)
        throw ParseError("value_set.points: expected an integer >= 2");
      count = j["points"].get<int>();
    }
    if (!(hi > lo)) throw ParseError("value_set: max must exceed min");
    std::vector<double> pts;
    for (int i = 0; i < count; ++i)
      pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return pts;
  }
  throw ParseError("value_set: expected an array or {min, max, points}");
}

}  // namespace

ControlSystem system_from_json(const json& j, Tolerances* tolerances_out) {
  if (!j.is_object()) throw ParseError("system file: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("n: missing or not an integer");
  const Eigen::Index n = j["n"].get<Eigen::Index>();
  if (n < 1) throw ParseError("n: must be positive");

  if (!j.contains("h0")) throw ParseError("h0: missing");
  ComplexMatrix h0 = parse_complex_matrix(j["h0"], "h0", n);

  if (!j.contains("mu") || !j["mu"].is_array() || j["mu"].empty())
    throw ParseError("mu: expected a nonempty array of matrices");
  std::vector<ComplexMatrix> mus;
  for (std::size_t k = 0; k < j["mu"].size(); ++k)
    mus.push_back(parse_complex_matrix(j["mu"][k], "mu[" + std::to_string(k) + "]", n));

  if (!j.contains("value_set")) throw ParseError("value_set: missing");
  std::vector<double> raw_points = parse_value_set(j["value_set"]);

  if (!j.contains("functionals") || !j["functionals"].is_object() ||
      !j["functionals"].contains("type"))
    throw ParseError("functionals: expected an object with a \"type\"");
  const json& fj = j["functionals"];
  const std::string type = fj["type"].get<std::string>();

  auto make_hermitian = [](ComplexMatrix m, const std::string& field) {
    try {
      return HermitianOperator(std::move(m));
    } catch (const std::invalid_argument& e) {
      throw ParseError(field + ": " + e.what());
    }
  };

  HermitianOperator h0_op = make_hermitian(std::move(h0), "h0");
  std::vector<HermitianOperator> mu_ops;
  for (std::size_t k = 0; k < mus.size(); ++k)
    mu_ops.push_back(make_hermitian(std::move(mus[k]), "mu[" + std::to_string(k) + "]"));

  if (tolerances_out != nullptr && j.contains("tolerances")) {
    const json& tj = j["tolerances"];
    if (!tj.is_object()) throw ParseError("tolerances: expected an object");
    if (tj.contains("rank")) tolerances_out->rank = require_number(tj, "rank");
    if (tj.contains("herm")) tolerances_out->herm = require_number(tj, "herm");
    if (tj.contains("basis_accept"))
      tolerances_out->basis_accept = require_number(tj, "basis_accept");
    if (tj.contains("trace")) tolerances_out->trace = require_number(tj, "trace");
    if (tj.contains("unitary")) tolerances_out->unitary = require_number(tj, "unitary");
    if (tj.contains("max_rounds")) {
      if (!tj["max_rounds"].is_number_integer())
        throw ParseError("tolerances.max_rounds: expected an integer");
      tolerances_out->max_rounds = tj["max_rounds"].get<int>();
    }
  }

  try {
    if (type == "monomial") {
      if (!fj.contains("degree") || !fj["degree"].is_number_integer())
        throw ParseError("functionals.degree: missing or not an integer");
      const int degree = fj["degree"].get<int>();
      if (static_cast<std::size_t>(degree) != mu_ops.size())
        throw ParseError("functionals.degree: must equal the number of mu matrices");
      return ControlSystem(std::move(h0_op), std::move(mu_ops),
                           FunctionalFamily::monomial(degree), ValueSet(std::move(raw_points)));
    }
    if (type == "sampled") {
      if (!fj.contains("values") || !fj["values"].is_array())
        throw ParseError("functionals.values: expected an L x |V| array");
      const json& vj = fj["values"];
      const Eigen::Index rows = static_cast<Eigen::Index>(vj.size());
      if (static_cast<std::size_t>(rows) != mu_ops.size())
        throw ParseError("functionals.values: row count must equal the number of mu matrices");
      Eigen::MatrixXd table(rows, static_cast<Eigen::Index>(raw_points.size()));
      for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = vj[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != raw_points.size())
          throw ParseError("functionals.values: row " + std::to_string(r) +
                           " length differs from |value_set|");
        for (std::size_t c = 0; c < raw_points.size(); ++c) {
          if (!row[c].is_number()) throw ParseError("functionals.values: non-numeric entry");
          table(r, static_cast<Eigen::Index>(c)) = row[c].get<double>();
        }
      }
      // re-align columns with the sorted value set
      std::vector<std::size_t> order(raw_points.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return raw_points[a] < raw_points[b]; });
      Eigen::MatrixXd sorted_table(rows, table.cols());
      std::vector<double> sorted_points;
      for (std::size_t c = 0; c < order.size(); ++c) {
        sorted_table.col(static_cast<Eigen::Index>(c)) =
            table.col(static_cast<Eigen::Index>(order[c]));
        sorted_points.push_back(raw_points[order[c]]);
      }
      ValueSet v(sorted_points);
      return ControlSystem(std::move(h0_op), std::move(mu_ops),
                           FunctionalFamily::sampled(std::move(sorted_table), v), v);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("system file: ") + e.what());
  }
  throw ParseError("functionals.type: expected \"monomial\" or \"sampled\"");
}

LoadedSystem load_system_file(const std::string& path) {
  std::string raw;
  const json j = read_json_file(path, &raw);
  Tolerances tol;
  ControlSystem sys = system_from_json(j, &tol);
  return LoadedSystem{std::move(sys), tol, fnv1a_hex(raw)};
}

json system_to_json(const ControlSystem& sys) {
  json j;
  j["n"] = sys.dimension();
  j["h0"] = dump_complex_matrix(sys.h0().matrix());
  j["mu"] = json::array();
  for (const HermitianOperator& mu : sys.mus()) j["mu"].push_back(dump_complex_matrix(mu.matrix()));
  if (sys.family().is_monomial()) {
    j["functionals"] = json{{"type", "monomial"}, {"degree", sys.family().size()}};
  } else {
    json rows = json::array();
    for (Eigen::Index r = 0; r < sys.family().values().rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < sys.family().values().cols(); ++c)
        row.push_back(sys.family().values()(r, c));
      rows.push_back(std::move(row));
    }
    j["functionals"] = json{{"type", "sampled"}, {"values", std::move(rows)}};
  }
  j["value_set"] = sys.value_set().points();
  return j;
}

PiecewiseConstantControl control_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("control file: expected a JSON array of segments");
  std::vector<ControlSegment> segs;
  for (const json& s : j) {
    if (!s.is_object()) throw ParseError("control file: each segment must be an object");
    segs.push_back({require_number(s, "duration"), require_number(s, "value")});
  }
  try {
    return PiecewiseConstantControl(std::move(segs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("control file: ") + e.what());
  }
}

PiecewiseConstantControl load_control_file(const std::string& path) {
  return control_from_json(read_json_file(path, nullptr));
}

DensityMatrix load_density_file(const std::string& path) {
  const json j = read_json_file(path, nullptr);
  if (!j.is_object() || !j.contains("re"))
    throw ParseError("density file: expected {re, im} arrays");
  const Eigen::Index n = static_cast<Eigen::Index>(j["re"].size());
  try {
    return DensityMatrix(parse_complex_matrix(j, "density", n));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("density file: ") + e.what());
  }
}

Eigen::VectorXcd parse_state_csv(const std::string& text) {
  std::vector<std::complex<double>> entries;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    // strip spaces
    std::string s;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("state: empty component");
    double re = 0.0, im = 0.0;
    std::size_t pos = 0;
    try {
      if (s.back() == 'i' || s.back() == 'j') {
        std::string body = s.substr(0, s.size() - 1);
        // find the split between real and imaginary parts, if any
        std::size_t split = std::string::npos;
        for (std::size_t p = 1; p < body.size(); ++p)
          if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E')
            split = p;
        if (split == std::string::npos) {
          im = body.empty() ? 1.0 : std::stod(body, &pos);
        } else {
          re = std::stod(body.substr(0, split), &pos);
          const std::string imag = body.substr(split);
          im = (imag == "+" || imag == "-") ? (imag == "+" ? 1.0 : -1.0) : std::stod(imag, &pos);
        }
      } else {
        re = std::stod(s, &pos);
      }
    } catch (const std::exception&) {
      throw ParseError("state: cannot parse component \"" + tok + "\"");
    }
    entries.emplace_back(re, im);
  }
  if (entries.empty()) throw ParseError("state: no components");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

json report_to_json(const ControllabilityReport& report, const std::string& digest,
                    double wall_time_seconds) {
  json r;
  r["n"] = report.n;
  r["lie_dim"] = report.lie_dim;
  r["traceless_lie_dim"] = report.traceless_lie_dim;
  r["any_nonzero_trace"] = report.any_nonzero_trace;
  r["centralizer_dim"] = report.centralizer_dim;
  r["functional_independent"] = report.functional_independent;
  r["density_controllable"] = report.density_controllable;
  r["wavefunction_controllable"] = report.wavefunction_controllable;
  r["sufficient_dim_condition"] = report.sufficient_dim_condition;
  r["witnesses"] = report.witnesses;
  r["closure_converged"] = report.closure_converged;
  r["warnings"] = report.warnings;
  r["tolerances"] = json{{"rank", report.tolerances.rank},
                         {"herm", report.tolerances.herm},
                         {"basis_accept", report.tolerances.basis_accept},
                         {"trace", report.tolerances.trace},
                         {"unitary", report.tolerances.unitary},
                         {"max_rounds", report.tolerances.max_rounds}};
  r["reduced"] = json::array();
  for (const ReducedAnalysis& red : report.reduced)
    r["reduced"].push_back(json{{"augmented_independent", red.augmented_independent},
                                {"lie_dim", red.lie_dim},
                                {"centralizer_dim", red.centralizer_dim},
                                {"density_controllable", red.density_controllable},
                                {"wavefunction_controllable", red.wavefunction_controllable},
                                {"retained_indices", red.retained_indices},
                                {"witnesses", red.witnesses}});
  return json{{"tool", "qlie"},
              {"version", kVersion},
              {"input_digest", digest},
              {"wall_time_seconds", wall_time_seconds},
              {"report", std::move(r)}};
}

void print_report(std::ostream& os, const ControllabilityReport& report) {
  const int nn = report.n * report.n;
  os << "dimension N:                     " << report.n << "\n";
  os << "Lie algebra dimension:           " << report.lie_dim << "  (N^2 = " << nn
     << ", N^2-1 = " << nn - 1 << ")\n";
  os << "traceless route dimension:       " << report.traceless_lie_dim << "\n";
  os << "any nonzero trace:               " << (report.any_nonzero_trace ? "yes" : "no") << "\n";
  os << "centralizer intersection dim:    " << report.centralizer_dim << "\n";
  os << "dim L - dim(L ^ C_G P):          " << report.lie_dim - report.centralizer_dim
     << "  (2N-2 = " << 2 * report.n - 2 << ")\n";
  os << "family {1,F_1..F_L} independent: "
     << (report.functional_independent ? "yes" : "no") << "\n";
  if (!report.witnesses.empty()) {
    os << "witness points:                 ";
    for (double w : report.witnesses) os << " " << w;
    os << "\n";
  }
  os << "density matrix controllable: " << (report.density_controllable ? "yes" : "no") << "\n";
  os << "wavefunction controllable: " << (report.wavefunction_controllable ? "yes" : "no")
     << "\n";
  for (const ReducedAnalysis& red : report.reduced) {
    os << "reduced family analysis: lie_dim " << red.lie_dim << ", centralizer "
       << red.centralizer_dim << ", density "
       << (red.density_controllable ? "yes" : "no") << ", wavefunction "
       << (red.wavefunction_controllable ? "yes" : "no") << "\n";
  }
  for (const std::string& w : report.warnings) os << "warning: " << w << "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xF);
  return out.str();
}

}  // namespace qlie
