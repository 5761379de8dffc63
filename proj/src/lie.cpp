#include "qlie/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace qlie {

namespace {

constexpr double kNegligibleNorm = 1e-14;

}  // namespace

SkewBasis::SkewBasis(Eigen::Index n, std::vector<ComplexMatrix> elements)
    : n_(n), elements_(std::move(elements)) {
  if (static_cast<Eigen::Index>(elements_.size()) > n_ * n_)
    throw std::invalid_argument("SkewBasis: more elements than dim u(N)");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const ComplexMatrix& e = elements_[i];
    if (e.rows() != n_ || e.cols() != n_)
      throw std::invalid_argument("SkewBasis: element dimension mismatch");
    if (!is_skew_hermitian(e, kHermTol))
      throw std::invalid_argument("SkewBasis: element is not skew-Hermitian");
    if (std::abs(e.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("SkewBasis: element is not unit norm");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(frobenius_inner(elements_[j], e)) > 1e-8)
        throw std::invalid_argument("SkewBasis: elements are not orthogonal");
  }
}

bool SkewBasis::try_insert(const ComplexMatrix& candidate, double tol) {
  if (candidate.rows() != n_ || candidate.cols() != n_)
    throw std::invalid_argument("SkewBasis: candidate dimension mismatch");
  const double cnorm = candidate.norm();
  if (cnorm < kNegligibleNorm) return false;
  ComplexMatrix r = candidate / cnorm;
  for (const ComplexMatrix& b : elements_) r -= frobenius_inner(b, r) * b;
  const double rnorm = r.norm();
  if (rnorm <= tol) return false;
  // second orthogonalization pass keeps the basis orthogonal when the
  // accepted residual is small
  for (const ComplexMatrix& b : elements_) r -= frobenius_inner(b, r) * b;
  elements_.push_back(r / r.norm());
  return true;
}

double SkewBasis::residual_norm(const ComplexMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_)
    throw std::invalid_argument("SkewBasis: dimension mismatch");
  ComplexMatrix r = x;
  for (const ComplexMatrix& b : elements_) r -= frobenius_inner(b, r) * b;
  for (const ComplexMatrix& b : elements_) r -= frobenius_inner(b, r) * b;
  return r.norm();
}

ClosureResult lie_closure(const std::vector<ComplexMatrix>& generators, double tol,
                          int max_rounds) {
  if (generators.empty()) throw std::invalid_argument("lie_closure: no generators");
  const Eigen::Index n = generators[0].rows();
  for (const ComplexMatrix& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("lie_closure: generator dimension mismatch");
    if (!g.allFinite())
      throw std::invalid_argument("lie_closure: generator entries must be finite");
    if (!is_skew_hermitian(g, kHermTol))
      throw std::invalid_argument("lie_closure: generator is not skew-Hermitian");
  }
  if (max_rounds <= 0) max_rounds = static_cast<int>(n * n) + 2;

  ClosureResult result;
  result.basis = SkewBasis(n);
  for (const ComplexMatrix& g : generators) result.basis.try_insert(g, tol);

  const int cap = static_cast<int>(n * n);
  while (result.basis.dim() > 0 && result.basis.dim() < cap) {
    if (result.rounds >= max_rounds) {
      result.converged = false;
      return result;
    }
    ++result.rounds;
    const int d0 = result.basis.dim();
    bool grew = false;
    for (int i = 0; i < d0 && result.basis.dim() < cap; ++i) {
      for (int j = i + 1; j < d0 && result.basis.dim() < cap; ++j) {
        const ComplexMatrix c =
            commutator(result.basis.elements()[static_cast<std::size_t>(i)],
                       result.basis.elements()[static_cast<std::size_t>(j)]);
        grew = result.basis.try_insert(c, tol) || grew;
      }
    }
    if (!grew) break;
  }
  return result;
}

int dim(const SkewBasis& basis) { return basis.dim(); }

bool contains(const SkewBasis& basis, const ComplexMatrix& x, double tol) {
  if (x.rows() != basis.n() || x.cols() != basis.n())
    throw std::invalid_argument("contains: dimension mismatch");
  const double xnorm = x.norm();
  if (xnorm < kNegligibleNorm) return true;
  return basis.residual_norm(x) <= tol * xnorm;
}

int centralizer_intersection_dim(const SkewBasis& basis, const ComplexMatrix& p, double tol) {
  if (p.rows() != basis.n() || p.cols() != basis.n())
    throw std::invalid_argument("centralizer_intersection_dim: dimension mismatch");
  if (basis.dim() == 0) return 0;
  RealVectorSet columns;
  columns.dim = 2 * basis.n() * basis.n();
  for (const ComplexMatrix& b : basis.elements())
    columns.vectors.push_back(realify(commutator(b, p)));
  return basis.dim() - numerical_rank(columns, tol);
}

BracketTable::BracketTable(int k, std::vector<std::string> names)
    : k_(k), names_(std::move(names)) {
  if (k_ <= 0) throw std::invalid_argument("BracketTable: need at least one generator");
  if (names_.size() != static_cast<std::size_t>(k_))
    throw std::invalid_argument("BracketTable: name count mismatch");
}

void BracketTable::set_bracket(int i, int j, RealVector coeffs) {
  if (i < 0 || i >= k_ || j < 0 || j >= k_)
    throw std::invalid_argument("BracketTable: generator index out of range");
  if (coeffs.size() != k_)
    throw std::invalid_argument("BracketTable: coefficient vector length mismatch");
  if (!coeffs.allFinite())
    throw std::invalid_argument("BracketTable: coefficients must be finite");
  entries_[{i, j}] = std::move(coeffs);
}

RealVector BracketTable::bracket(int i, int j) const {
  if (i < 0 || i >= k_ || j < 0 || j >= k_)
    throw std::invalid_argument("BracketTable: generator index out of range");
  auto it = entries_.find({i, j});
  if (it != entries_.end()) return it->second;
  it = entries_.find({j, i});
  if (it != entries_.end()) return -it->second;
  return RealVector::Zero(k_);
}

void BracketTable::validate() const {
  for (const auto& [key, coeffs] : entries_) {
    if (key.first == key.second && coeffs.cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("BracketTable: nonzero diagonal bracket");
    auto mirror = entries_.find({key.second, key.first});
    if (mirror != entries_.end() && (coeffs + mirror->second).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("BracketTable: table is not antisymmetric");
  }
}

namespace {

// Orthonormal-basis insertion in R^k coefficient space, same acceptance rule
// as SkewBasis::try_insert.
bool insert_coeff(std::vector<RealVector>& basis, const RealVector& candidate, double tol) {
  const double cnorm = candidate.norm();
  if (cnorm < kNegligibleNorm) return false;
  RealVector r = candidate / cnorm;
  for (const RealVector& b : basis) r -= b.dot(r) * b;
  if (r.norm() <= tol) return false;
  for (const RealVector& b : basis) r -= b.dot(r) * b;
  basis.push_back(r / r.norm());
  return true;
}

RealVector abstract_bracket(const BracketTable& table, const RealVector& u,
                            const RealVector& v) {
  const int k = table.generator_count();
  RealVector out = RealVector::Zero(k);
  for (int i = 0; i < k; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < k; ++j) {
      if (j == i || v(j) == 0.0) continue;
      out += u(i) * v(j) * table.bracket(i, j);
    }
  }
  return out;
}

}  // namespace

int closure_dim_from_bracket_table(const BracketTable& table,
                                   const std::vector<RealVector>& seeds, double tol,
                                   int max_rounds) {
  table.validate();
  const int k = table.generator_count();
  if (max_rounds <= 0) max_rounds = k + 2;
  std::vector<RealVector> basis;
  for (const RealVector& s : seeds) {
    if (s.size() != k)
      throw std::invalid_argument("closure_dim_from_bracket_table: seed length mismatch");
    insert_coeff(basis, s, tol);
  }
  int rounds = 0;
  while (!basis.empty() && static_cast<int>(basis.size()) < k && rounds < max_rounds) {
    ++rounds;
    const std::size_t d0 = basis.size();
    bool grew = false;
    for (std::size_t i = 0; i < d0; ++i)
      for (std::size_t j = i + 1; j < d0; ++j)
        grew = insert_coeff(basis, abstract_bracket(table, basis[i], basis[j]), tol) || grew;
    if (!grew) break;
  }
  return static_cast<int>(basis.size());
}

int closure_dim_from_bracket_table(const BracketTable& table, double tol, int max_rounds) {
  const int k = table.generator_count();
  std::vector<RealVector> seeds;
  for (int i = 0; i < k; ++i) {
    RealVector e = RealVector::Zero(k);
    e(i) = 1.0;
    seeds.push_back(std::move(e));
  }
  return closure_dim_from_bracket_table(table, seeds, tol, max_rounds);
}

}  // namespace qlie
