#include "qlie/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng_util.hpp"

namespace qlie {

PiecewiseConstantControl::PiecewiseConstantControl(std::vector<ControlSegment> segments)
    : segments_(std::move(segments)) {
  for (const ControlSegment& s : segments_) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration))
      throw std::invalid_argument("PiecewiseConstantControl: durations must be positive");
    if (!std::isfinite(s.value))
      throw std::invalid_argument("PiecewiseConstantControl: values must be finite");
  }
}

double PiecewiseConstantControl::total_duration() const {
  double t = 0.0;
  for (const ControlSegment& s : segments_) t += s.duration;
  return t;
}

PiecewiseConstantControl concat(const PiecewiseConstantControl& c1,
                                const PiecewiseConstantControl& c2) {
  std::vector<ControlSegment> segs = c1.segments();
  segs.insert(segs.end(), c2.segments().begin(), c2.segments().end());
  return PiecewiseConstantControl(std::move(segs));
}

QuantumState::QuantumState(Eigen::VectorXcd c, double norm_tol) : c_(std::move(c)) {
  if (c_.size() == 0) throw std::invalid_argument("QuantumState: empty vector");
  if (!c_.allFinite()) throw std::invalid_argument("QuantumState: entries must be finite");
  if (std::abs(c_.norm() - 1.0) > norm_tol)
    throw std::invalid_argument("QuantumState: vector is not unit norm");
}

QuantumState QuantumState::basis_state(Eigen::Index n, Eigen::Index k) {
  if (k < 0 || k >= n) throw std::invalid_argument("QuantumState: basis index out of range");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  c(k) = 1.0;
  return QuantumState(std::move(c));
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (!is_hermitian(rho_, 1e-8))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(rho_.trace().real() - 1.0) > 1e-10 || std::abs(rho_.trace().imag()) > 1e-10)
    throw std::invalid_argument("DensityMatrix: trace must be 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const QuantumState& state) {
  return DensityMatrix(state.coefficients() * state.coefficients().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index n) {
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

ComplexMatrix propagator(const ControlSystem& sys, const PiecewiseConstantControl& ctrl) {
  const Eigen::Index n = sys.dimension();
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  for (const ControlSegment& s : ctrl.segments()) {
    // hamiltonian() enforces the grid restriction for sampled families.
    const ComplexMatrix h = sys.hamiltonian(s.value);
    u = expm_hermitian_factor(HermitianOperator(h), s.duration) * u;
  }
  return u;
}

QuantumState propagate_state(const ControlSystem& sys, const PiecewiseConstantControl& ctrl,
                             const QuantumState& c0) {
  if (c0.dimension() != sys.dimension())
    throw std::invalid_argument("propagate_state: state dimension mismatch");
  return QuantumState(propagator(sys, ctrl) * c0.coefficients());
}

DensityMatrix propagate_density(const ControlSystem& sys, const PiecewiseConstantControl& ctrl,
                                const DensityMatrix& rho0) {
  if (rho0.dimension() != sys.dimension())
    throw std::invalid_argument("propagate_density: density dimension mismatch");
  const ComplexMatrix u = propagator(sys, ctrl);
  return DensityMatrix(u * rho0.matrix() * u.adjoint());
}

namespace {

ComplexMatrix matrix_power(ComplexMatrix base, int exponent) {
  ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

double trotter_commutator_error(const ComplexMatrix& x1, const ComplexMatrix& x2, double t,
                                int n) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols())
    throw std::invalid_argument("trotter_commutator_error: dimension mismatch");
  if (n < 1) throw std::invalid_argument("trotter_commutator_error: n must be >= 1");
  if (!is_skew_hermitian(x1, 1e-8) || !is_skew_hermitian(x2, 1e-8))
    throw std::invalid_argument("trotter_commutator_error: inputs must be skew-Hermitian");
  const double s = t / std::sqrt(static_cast<double>(n));
  const ComplexMatrix factor = expm_skew(-s * x2) * expm_skew(-s * x1) * expm_skew(s * x2) *
                               expm_skew(s * x1);
  const ComplexMatrix limit = expm_skew(t * t * commutator(x2, x1));
  return (limit - matrix_power(factor, n)).norm();
}

namespace {

struct SearchProblem {
  const ControlSystem& sys;
  const ComplexMatrix* target_propagator = nullptr;
  const Eigen::VectorXcd* initial = nullptr;
  const Eigen::VectorXcd* target_state = nullptr;

  double fidelity(const PiecewiseConstantControl& ctrl) const {
    const ComplexMatrix u = propagator(sys, ctrl);
    if (target_propagator)
      return std::abs((target_propagator->adjoint() * u).trace()) /
             static_cast<double>(sys.dimension());
    return std::abs(target_state->dot(u * *initial));
  }
};

double draw_value(std::mt19937_64& gen, const ControlSystem& sys) {
  const ValueSet& v = sys.value_set();
  if (sys.family().is_monomial()) return detail::uniform_in(gen, v.min(), v.max());
  return v.points()[detail::uniform_index(gen, v.points().size())];
}

double mutate_value(std::mt19937_64& gen, const ControlSystem& sys, double value, double scale) {
  const ValueSet& v = sys.value_set();
  if (sys.family().is_monomial()) {
    const double span = std::max(v.max() - v.min(), 1e-12);
    return std::clamp(value + scale * span * detail::standard_normal(gen), v.min(), v.max());
  }
  // sampled families stay on the grid: occasionally hop to a random point
  if (detail::uniform01(gen) < scale) return v.points()[detail::uniform_index(gen, v.points().size())];
  return value;
}

SearchResult run_search(const SearchProblem& problem, long budget, std::uint64_t seed,
                        const SearchBounds& bounds) {
  if (budget < 1) throw std::invalid_argument("reachability_search: budget must be >= 1");
  if (!(bounds.min_duration > 0.0) || !(bounds.max_duration >= bounds.min_duration))
    throw std::invalid_argument("reachability_search: invalid duration bounds");
  if (bounds.max_segments < 1)
    throw std::invalid_argument("reachability_search: need at least one segment");

  std::mt19937_64 gen(seed);
  const double log_lo = std::log(bounds.min_duration);
  const double log_hi = std::log(bounds.max_duration);

  SearchResult result;
  // candidate 0 is always the empty control
  result.best_control = PiecewiseConstantControl{};
  result.best_fidelity = problem.fidelity(result.best_control);
  result.evaluations = 1;

  auto consider = [&](PiecewiseConstantControl ctrl) {
    const double f = problem.fidelity(ctrl);
    ++result.evaluations;
    if (f > result.best_fidelity) {
      result.best_fidelity = f;
      result.best_control = std::move(ctrl);
    }
  };

  const long random_phase = std::max<long>(1, (budget * 3) / 5);
  while (result.evaluations < std::min(budget, random_phase)) {
    const int count =
        1 + static_cast<int>(detail::uniform_index(gen, static_cast<std::uint64_t>(bounds.max_segments)));
    std::vector<ControlSegment> segs;
    segs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      segs.push_back({std::exp(detail::uniform_in(gen, log_lo, log_hi)),
                      draw_value(gen, problem.sys)});
    consider(PiecewiseConstantControl(std::move(segs)));
  }

  // greedy refinement of the incumbent in small batches; the scale shrinks
  // when a batch fails to improve
  double scale = 0.5;
  while (result.evaluations < budget) {
    const double before = result.best_fidelity;
    const long batch = std::min<long>(32, budget - result.evaluations);
    const std::vector<ControlSegment> base = result.best_control.segments();
    for (long b = 0; b < batch; ++b) {
      std::vector<ControlSegment> segs;
      if (base.empty()) {
        segs.push_back({std::exp(0.5 * (log_lo + log_hi)), draw_value(gen, problem.sys)});
      } else {
        segs = base;
        for (ControlSegment& s : segs) {
          s.duration = std::clamp(s.duration * std::exp(scale * detail::standard_normal(gen)),
                                  bounds.min_duration, bounds.max_duration);
          s.value = mutate_value(gen, problem.sys, s.value, scale);
        }
      }
      consider(PiecewiseConstantControl(std::move(segs)));
    }
    if (!(result.best_fidelity > before)) scale *= 0.7;
    if (scale < 1e-4) scale = 0.5;
  }
  return result;
}

}  // namespace

SearchResult reachability_search(const ControlSystem& sys, const ComplexMatrix& target,
                                 long budget, std::uint64_t seed, const SearchBounds& bounds) {
  if (target.rows() != sys.dimension() || target.cols() != sys.dimension())
    throw std::invalid_argument("reachability_search: target dimension mismatch");
  if (unitarity_residual(target) > 1e-8)
    throw std::invalid_argument("reachability_search: target is not unitary");
  SearchProblem problem{sys, &target, nullptr, nullptr};
  return run_search(problem, budget, seed, bounds);
}

SearchResult reachability_search(const ControlSystem& sys, const QuantumState& initial,
                                 const QuantumState& target, long budget, std::uint64_t seed,
                                 const SearchBounds& bounds) {
  if (initial.dimension() != sys.dimension() || target.dimension() != sys.dimension())
    throw std::invalid_argument("reachability_search: state dimension mismatch");
  SearchProblem problem{sys, nullptr, &initial.coefficients(), &target.coefficients()};
  return run_search(problem, budget, seed, bounds);
}

}  // namespace qlie
