#pragma once

#include <vector>

#include "qlie/functionals.hpp"
#include "qlie/matrix.hpp"

namespace qlie {

/// Control problem statement: drift H_0, coupling operators mu_1..mu_L, the
/// functional family applied to the single control, and the admissible value
/// set. The controlled Hamiltonian is H(eps) = H_0 + sum_k F_k(eps) mu_k.
class ControlSystem {
 public:
  ControlSystem(HermitianOperator h0, std::vector<HermitianOperator> mus, FunctionalFamily fam,
                ValueSet v);

  Eigen::Index dimension() const { return h0_.dimension(); }
  const HermitianOperator& h0() const { return h0_; }
  const std::vector<HermitianOperator>& mus() const { return mus_; }
  const FunctionalFamily& family() const { return fam_; }
  const ValueSet& value_set() const { return v_; }

  /// {-i H_0, -i mu_1, ..., -i mu_L}.
  std::vector<ComplexMatrix> generators() const;

  /// H_0 + sum_k F_k(eps) mu_k. Sampled families throw off the grid.
  ComplexMatrix hamiltonian(double eps) const;

 private:
  HermitianOperator h0_;
  std::vector<HermitianOperator> mus_;
  FunctionalFamily fam_;
  ValueSet v_;
};

}  // namespace qlie
