#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qlie/lie.hpp"
#include "qlie/system.hpp"

namespace qlie {

/// Raised when the direct dimension test and the traceless-projection
/// procedure disagree on a verdict; exit code 3 at the CLI.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rank = kRankTol;             // numerical rank, relative
  double herm = kHermTol;             // hermiticity, relative
  double basis_accept = kBasisAcceptTol;
  double trace = 1e-10;               // trace-zero test: |tr| <= trace * n
  double unitary = kUnitaryTol;
  int max_rounds = 0;                 // 0 selects n^2 + 2
};

/// P = i diag(1, 0, ..., 0), the transitivity reference point.
ComplexMatrix p_matrix(Eigen::Index n);

/// Analysis computed on a reduced, independent functional family when the
/// original augmented family {1, F_1..F_L} is dependent on V.
struct ReducedAnalysis {
  bool augmented_independent = false;
  int lie_dim = 0;
  int centralizer_dim = 0;
  bool density_controllable = false;
  bool wavefunction_controllable = false;
  std::vector<int> retained_indices;
  std::vector<double> witnesses;
};

struct ControllabilityReport {
  int n = 0;
  int lie_dim = 0;
  int traceless_lie_dim = 0;
  bool any_nonzero_trace = false;
  int centralizer_dim = 0;
  bool functional_independent = false;  // {1, F_1..F_L} over V
  bool density_controllable = false;
  bool wavefunction_controllable = false;
  bool sufficient_dim_condition = false;  // lie_dim == n^2 shortcut
  std::vector<double> witnesses;
  std::vector<ReducedAnalysis> reduced;  // at most one entry
  bool closure_converged = true;
  Tolerances tolerances;
  std::vector<std::string> warnings;
};

/// Full pipeline: independence test, reduction when needed, both criteria,
/// and the direct-dimension vs traceless-projection cross-check. Throws
/// ConsistencyError when the two routes disagree on a verdict.
ControllabilityReport analyze(const ControlSystem& sys, const Tolerances& tol = {});
ControllabilityReport analyze(const ControlSystem& sys, double rank_tol);

/// Density-matrix criterion: with {1, F_1..F_L} independent, controllable iff
/// dim L = n^2 when some operator has nonzero trace, iff dim L = n^2 - 1 when
/// all are traceless. Dependent families give a false verdict with a warning;
/// the reduced-family analysis is attached to the report.
std::pair<bool, ControllabilityReport> density_matrix_controllable(const ControlSystem& sys,
                                                                   const Tolerances& tol = {});

/// Wavefunction criterion: controllable iff dim L - dim(L with [X, P] = 0)
/// equals 2n - 2; dim L = n^2 is the sufficient shortcut.
std::pair<bool, ControllabilityReport> wavefunction_controllable(const ControlSystem& sys,
                                                                 const Tolerances& tol = {});

}  // namespace qlie
