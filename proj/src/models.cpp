#include "qlie/models.hpp"

#include <cmath>
#include <stdexcept>

#include "rng_util.hpp"

namespace qlie {

ControlSystem truncated_oscillator(int n) {
  if (n < 2) throw std::invalid_argument("truncated_oscillator: n must be >= 2");
  ComplexMatrix h0 = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) h0(k, k) = static_cast<double>(k) + 0.5;
  ComplexMatrix mu = ComplexMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double x = std::sqrt((static_cast<double>(k) + 1.0) / 2.0);
    mu(k, k + 1) = x;
    mu(k + 1, k) = x;
  }
  return ControlSystem(HermitianOperator(std::move(h0)), {HermitianOperator(std::move(mu))},
                       FunctionalFamily::monomial(1), ValueSet({-1.0, 0.0, 1.0}));
}

BracketTable oscillator_bracket_table() {
  BracketTable table(4, {"iH0", "ix", "d/dx", "-i"});
  RealVector c(4);
  c << 0.0, 0.0, 2.0, 0.0;
  table.set_bracket(0, 1, c);  // [a, b] = 2c
  c << 0.0, -2.0, 0.0, 0.0;
  table.set_bracket(0, 2, c);  // [a, c] = -2b
  c << 0.0, 0.0, 0.0, 1.0;
  table.set_bracket(1, 2, c);  // [b, c] = d
  return table;                // d is central: all its brackets default to zero
}

namespace {

ComplexMatrix random_hermitian(int n, std::mt19937_64& gen) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = std::complex<double>(detail::standard_normal(gen), detail::standard_normal(gen));
  return 0.5 * (a + a.adjoint().eval());
}

}  // namespace

ControlSystem random_dense(int n, int l, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_dense: n must be >= 2");
  if (l < 1) throw std::invalid_argument("random_dense: l must be >= 1");
  std::mt19937_64 gen(seed);
  HermitianOperator h0(random_hermitian(n, gen));
  std::vector<HermitianOperator> mus;
  for (int k = 0; k < l; ++k) mus.emplace_back(random_hermitian(n, gen));
  std::vector<double> points;
  for (int i = 0; i < l + 2; ++i)
    points.push_back(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(l + 1));
  return ControlSystem(std::move(h0), std::move(mus), FunctionalFamily::monomial(l),
                       ValueSet(std::move(points)));
}

ControlSystem diagonal_pair(int n) {
  if (n < 2) throw std::invalid_argument("diagonal_pair: n must be >= 2");
  ComplexMatrix h0 = ComplexMatrix::Zero(n, n);
  ComplexMatrix mu = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    h0(k, k) = static_cast<double>(k + 1);
    mu(k, k) = static_cast<double>(n - k);
  }
  return ControlSystem(HermitianOperator(std::move(h0)), {HermitianOperator(std::move(mu))},
                       FunctionalFamily::monomial(1), ValueSet({-1.0, 0.0, 1.0}));
}

}  // namespace qlie
