#pragma once

#include <cstdint>
#include <vector>

#include "qlie/system.hpp"

namespace qlie {

struct ControlSegment {
  double duration = 0.0;  // > 0, dimensionless time (hbar = 1)
  double value = 0.0;     // control amplitude
};

/// Control constant on finitely many time segments.
class PiecewiseConstantControl {
 public:
  PiecewiseConstantControl() = default;
  explicit PiecewiseConstantControl(std::vector<ControlSegment> segments);

  const std::vector<ControlSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  double total_duration() const;

 private:
  std::vector<ControlSegment> segments_;
};

/// c1's segments followed by c2's, so the combined propagator is
/// propagator(c2) * propagator(c1).
PiecewiseConstantControl concat(const PiecewiseConstantControl& c1,
                                const PiecewiseConstantControl& c2);

/// Unit-norm complex state vector.
class QuantumState {
 public:
  explicit QuantumState(Eigen::VectorXcd c, double norm_tol = 1e-10);
  static QuantumState basis_state(Eigen::Index n, Eigen::Index k);

  const Eigen::VectorXcd& coefficients() const { return c_; }
  Eigen::Index dimension() const { return c_.size(); }

 private:
  Eigen::VectorXcd c_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);
  static DensityMatrix pure(const QuantumState& state);
  static DensityMatrix maximally_mixed(Eigen::Index n);

  const ComplexMatrix& matrix() const { return rho_; }
  Eigen::Index dimension() const { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

/// Time-ordered product of the segment propagators, earliest factor
/// rightmost: U = exp(-i dt_m H(eps_m)) ... exp(-i dt_1 H(eps_1)).
/// Monomial families accept any real control value; sampled families are
/// restricted to their grid.
ComplexMatrix propagator(const ControlSystem& sys, const PiecewiseConstantControl& ctrl);

QuantumState propagate_state(const ControlSystem& sys, const PiecewiseConstantControl& ctrl,
                             const QuantumState& c0);

DensityMatrix propagate_density(const ControlSystem& sys, const PiecewiseConstantControl& ctrl,
                                const DensityMatrix& rho0);

/// Frobenius distance between the n-th commutator Trotter product
/// (exp(-t x2/sqrt(n)) exp(-t x1/sqrt(n)) exp(t x2/sqrt(n)) exp(t x1/sqrt(n)))^n
/// and its limit exp(t^2 [x2, x1]). Zero for commuting pairs at every n.
double trotter_commutator_error(const ComplexMatrix& x1, const ComplexMatrix& x2, double t,
                                int n);

struct SearchBounds {
  double min_duration = 0.05;
  double max_duration = 6.283185307179586;  // 2 pi
  int max_segments = 8;
};

struct SearchResult {
  double best_fidelity = 0.0;
  PiecewiseConstantControl best_control;
  long evaluations = 0;
};

/// Randomized search over piecewise-constant controls maximizing propagator
/// fidelity |tr(target^dag U)| / n. Deterministic given (seed, budget).
SearchResult reachability_search(const ControlSystem& sys, const ComplexMatrix& target,
                                 long budget, std::uint64_t seed,
                                 const SearchBounds& bounds = {});

/// State-transfer variant maximizing |<target, U initial>|.
SearchResult reachability_search(const ControlSystem& sys, const QuantumState& initial,
                                 const QuantumState& target, long budget, std::uint64_t seed,
                                 const SearchBounds& bounds = {});

}  // namespace qlie
