#include "qlie/criteria.hpp"

#include <cmath>
#include <sstream>

namespace qlie {

namespace {

constexpr const char* kDependentWarning =
    "dependent functional family: theorem inapplicable as stated; "
    "analysis of the reduced family reported separately";

struct GeneratorAnalysis {
  int lie_dim = 0;
  int centralizer_dim = 0;
  bool converged = true;
};

GeneratorAnalysis analyze_generators(const std::vector<ComplexMatrix>& gens, Eigen::Index n,
                                     const Tolerances& tol) {
  GeneratorAnalysis out;
  const ClosureResult closure = lie_closure(gens, tol.basis_accept, tol.max_rounds);
  out.lie_dim = closure.basis.dim();
  out.centralizer_dim = centralizer_intersection_dim(closure.basis, p_matrix(n), tol.rank);
  out.converged = closure.converged;
  return out;
}

bool density_verdict(int lie_dim, bool any_nonzero_trace, Eigen::Index n) {
  const int nn = static_cast<int>(n * n);
  return any_nonzero_trace ? lie_dim == nn : lie_dim == nn - 1;
}

bool wavefunction_verdict(int lie_dim, int centralizer_dim, Eigen::Index n) {
  return lie_dim - centralizer_dim == static_cast<int>(2 * n - 2);
}

}  // namespace

ComplexMatrix p_matrix(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("p_matrix: dimension must be positive");
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  p(0, 0) = std::complex<double>(0.0, 1.0);
  return p;
}

ControllabilityReport analyze(const ControlSystem& sys, const Tolerances& tol) {
  const Eigen::Index n = sys.dimension();
  ControllabilityReport report;
  report.n = static_cast<int>(n);
  report.tolerances = tol;

  // Trace dichotomy over the Hermitian inputs, with a warning when any trace
  // sits near the threshold (the theorem's branch choice is discrete).
  const double trace_threshold = tol.trace * static_cast<double>(n);
  double max_abs_trace = std::abs(sys.h0().trace());
  for (const HermitianOperator& mu : sys.mus())
    max_abs_trace = std::max(max_abs_trace, std::abs(mu.trace()));
  report.any_nonzero_trace = max_abs_trace > trace_threshold;
  if (max_abs_trace > trace_threshold / 16.0 && max_abs_trace < trace_threshold * 16.0) {
    std::ostringstream msg;
    msg << "largest |trace| " << max_abs_trace << " is near the zero-trace threshold "
        << trace_threshold << "; nonzero-trace branch tests dim = N^2, zero-trace branch tests "
        << "dim = N^2 - 1";
    report.warnings.push_back(msg.str());
  }

  const GeneratorAnalysis direct = analyze_generators(sys.generators(), n, tol);
  report.lie_dim = direct.lie_dim;
  report.centralizer_dim = direct.centralizer_dim;
  report.closure_converged = direct.converged;
  if (!direct.converged)
    report.warnings.push_back("Lie closure did not converge within max_rounds; "
                              "dimensions are lower bounds");

  // Traceless projection route of the verification procedure.
  std::vector<ComplexMatrix> traceless_gens;
  for (const ComplexMatrix& g : sys.generators()) traceless_gens.push_back(traceless_part(g));
  const ClosureResult traceless = lie_closure(traceless_gens, tol.basis_accept, tol.max_rounds);
  report.traceless_lie_dim = traceless.basis.dim();

  const int nn = static_cast<int>(n * n);
  if (report.any_nonzero_trace) {
    const bool direct_full = report.lie_dim == nn;
    const bool traceless_full = report.traceless_lie_dim == nn - 1;
    if (direct_full != traceless_full)
      throw ConsistencyError("direct dimension test and traceless-projection procedure disagree");
    if (report.lie_dim != report.traceless_lie_dim + 1)
      report.warnings.push_back(
          "degenerate trace structure: identity direction is not generated, "
          "lie_dim != traceless_lie_dim + 1");
  } else if (report.lie_dim != report.traceless_lie_dim) {
    throw ConsistencyError("traceless generators produced a different closure dimension");
  }

  // Theorem hypotheses: {1, F_1..F_L} linearly independent over V.
  const IndependenceResult aug = is_independent(sys.family(), sys.value_set(), true, tol.rank);
  report.functional_independent = aug.independent;

  if (aug.independent) {
    report.witnesses = aug.witnesses;
    report.density_controllable = density_verdict(report.lie_dim, report.any_nonzero_trace, n);
    report.wavefunction_controllable =
        wavefunction_verdict(report.lie_dim, report.centralizer_dim, n);
  } else {
    report.warnings.push_back(kDependentWarning);
    report.density_controllable = false;
    report.wavefunction_controllable = false;

    auto [red_fam, red_mus] =
        reduce_to_independent(sys.family(), sys.mus(), sys.value_set(), tol.rank);
    const ControlSystem reduced_sys(sys.h0(), red_mus, red_fam, sys.value_set());
    const IndependenceResult red_aug =
        is_independent(red_fam, sys.value_set(), true, tol.rank);
    const IndependenceResult original =
        is_independent(sys.family(), sys.value_set(), false, tol.rank);

    ReducedAnalysis reduced;
    reduced.augmented_independent = red_aug.independent;
    reduced.retained_indices = original.retained_indices;
    const GeneratorAnalysis red = analyze_generators(reduced_sys.generators(), n, tol);
    reduced.lie_dim = red.lie_dim;
    reduced.centralizer_dim = red.centralizer_dim;
    if (red_aug.independent) {
      bool red_any_trace = std::abs(sys.h0().trace()) > trace_threshold;
      for (const HermitianOperator& mu : red_mus)
        red_any_trace = red_any_trace || std::abs(mu.trace()) > trace_threshold;
      reduced.density_controllable = density_verdict(red.lie_dim, red_any_trace, n);
      reduced.wavefunction_controllable =
          wavefunction_verdict(red.lie_dim, red.centralizer_dim, n);
      reduced.witnesses = red_aug.witnesses;
      report.witnesses = red_aug.witnesses;
    } else {
      report.warnings.push_back(
          "augmented family remains dependent after reduction; reduced verdicts withheld");
    }
    report.reduced.push_back(std::move(reduced));
  }

  report.sufficient_dim_condition = report.lie_dim == nn;
  return report;
}

ControllabilityReport analyze(const ControlSystem& sys, double rank_tol) {
  Tolerances tol;
  tol.rank = rank_tol;
  return analyze(sys, tol);
}

std::pair<bool, ControllabilityReport> density_matrix_controllable(const ControlSystem& sys,
                                                                   const Tolerances& tol) {
  ControllabilityReport report = analyze(sys, tol);
  const bool verdict = report.functional_independent && report.density_controllable;
  return {verdict, std::move(report)};
}

std::pair<bool, ControllabilityReport> wavefunction_controllable(const ControlSystem& sys,
                                                                 const Tolerances& tol) {
  ControllabilityReport report = analyze(sys, tol);
  const bool verdict = report.functional_independent && report.wavefunction_controllable;
  return {verdict, std::move(report)};
}

}  // namespace qlie
