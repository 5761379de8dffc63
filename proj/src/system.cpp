#include "qlie/system.hpp"

#include <stdexcept>

namespace qlie {

ControlSystem::ControlSystem(HermitianOperator h0, std::vector<HermitianOperator> mus,
                             FunctionalFamily fam, ValueSet v)
    : h0_(std::move(h0)), mus_(std::move(mus)), fam_(std::move(fam)), v_(std::move(v)) {
  if (mus_.empty()) throw std::invalid_argument("ControlSystem: need at least one coupling operator");
  if (static_cast<int>(mus_.size()) != fam_.size())
    throw std::invalid_argument("ControlSystem: operator count differs from family size");
  for (const HermitianOperator& mu : mus_)
    if (mu.dimension() != h0_.dimension())
      throw std::invalid_argument("ControlSystem: operator dimension mismatch");
  if (!fam_.is_monomial() && fam_.grid()->points() != v_.points())
    throw std::invalid_argument("ControlSystem: sampled family grid differs from value set");
}

std::vector<ComplexMatrix> ControlSystem::generators() const {
  const std::complex<double> minus_i(0.0, -1.0);
  std::vector<ComplexMatrix> gens;
  gens.push_back(minus_i * h0_.matrix());
  for (const HermitianOperator& mu : mus_) gens.push_back(minus_i * mu.matrix());
  return gens;
}

ComplexMatrix ControlSystem::hamiltonian(double eps) const {
  ComplexMatrix h = h0_.matrix();
  const Eigen::VectorXd f = fam_.evaluate(eps);
  for (int k = 0; k < fam_.size(); ++k) h += f(k) * mus_[static_cast<std::size_t>(k)].matrix();
  return h;
}

}  // namespace qlie
