#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qlie/matrix.hpp"

namespace qlie {

/// Orthonormal real basis of a subspace of u(N): every element is
/// skew-Hermitian, unit Frobenius norm, pairwise Frobenius-orthogonal.
class SkewBasis {
 public:
  SkewBasis() = default;
  explicit SkewBasis(Eigen::Index n) : n_(n) {}

  /// Validating constructor from an already-orthonormal element list.
  SkewBasis(Eigen::Index n, std::vector<ComplexMatrix> elements);

  Eigen::Index n() const { return n_; }
  int dim() const { return static_cast<int>(elements_.size()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

  /// Modified Gram-Schmidt insertion: the candidate is rescaled to unit norm,
  /// orthogonalized against the basis, and accepted iff the residual norm
  /// exceeds tol. Returns true when the basis grew.
  bool try_insert(const ComplexMatrix& candidate, double tol = kBasisAcceptTol);

  /// Residual Frobenius norm of x after projection onto span(basis).
  double residual_norm(const ComplexMatrix& x) const;

 private:
  Eigen::Index n_ = 0;
  std::vector<ComplexMatrix> elements_;
};

struct ClosureResult {
  SkewBasis basis;
  bool converged = true;  // false when max_rounds ran out while still growing
  int rounds = 0;
};

/// Smallest real Lie algebra containing the generators, as an orthonormal
/// basis. Iterates rounds of pairwise commutators in lexicographic index
/// order until a full round adds nothing, the dimension reaches n^2, or
/// max_rounds is exhausted (flagged via ClosureResult::converged).
/// max_rounds <= 0 selects the default n^2 + 2. All-zero generator sets give
/// an empty basis. Throws on non-skew-Hermitian input or dimension mismatch.
ClosureResult lie_closure(const std::vector<ComplexMatrix>& generators,
                          double tol = kBasisAcceptTol, int max_rounds = 0);

int dim(const SkewBasis& basis);

/// True iff the projection residual of x is at most tol * ||x||_F.
bool contains(const SkewBasis& basis, const ComplexMatrix& x, double tol);

/// Dimension of {X in span(basis) : [X, p] = 0}, computed as the null-space
/// dimension of c -> [sum_i c_i basis_i, p] on basis coordinates.
int centralizer_intersection_dim(const SkewBasis& basis, const ComplexMatrix& p,
                                 double tol = kRankTol);

/// Abstract bracket relations over k named generators: bracket(i, j) is the
/// coefficient vector of [g_i, g_j] over the generators. Unspecified pairs
/// default to the zero bracket; (j, i) defaults to the negation of (i, j).
class BracketTable {
 public:
  BracketTable(int k, std::vector<std::string> names);

  /// Stores the (i, j) entry literally. Antisymmetry against an explicitly
  /// stored (j, i) entry is checked by validate().
  void set_bracket(int i, int j, RealVector coeffs);

  RealVector bracket(int i, int j) const;
  int generator_count() const { return k_; }
  const std::vector<std::string>& names() const { return names_; }

  /// Throws if any stored pair violates antisymmetry or a diagonal entry is
  /// nonzero.
  void validate() const;

 private:
  int k_ = 0;
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, RealVector> entries_;
};

/// Dimension of the Lie closure of the k abstract generators, by the same
/// rank-growth iteration as lie_closure but in coefficient space.
int closure_dim_from_bracket_table(const BracketTable& table, double tol = kBasisAcceptTol,
                                   int max_rounds = 0);

/// Closure of a generator subset given as coefficient vectors (seeds).
int closure_dim_from_bracket_table(const BracketTable& table,
                                   const std::vector<RealVector>& seeds,
                                   double tol = kBasisAcceptTol, int max_rounds = 0);

}  // namespace qlie
