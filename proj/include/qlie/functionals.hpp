#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qlie/matrix.hpp"

namespace qlie {

class ControlSystem;

/// Finite set of admissible control values, kept sorted strictly increasing.
class ValueSet {
 public:
  explicit ValueSet(std::vector<double> points);

  const std::vector<double>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  double min() const { return points_.front(); }
  double max() const { return points_.back(); }
  bool contains(double x, double tol = 1e-12) const;

 private:
  std::vector<double> points_;
};

/// Family F_1..F_L of real functionals of the control amplitude. Monomial
/// families are F_k(x) = x^k; sampled families are value tables over an
/// associated grid and can only be evaluated on it.
class FunctionalFamily {
 public:
  static FunctionalFamily monomial(int degree);
  static FunctionalFamily sampled(Eigen::MatrixXd values, ValueSet grid);

  int size() const { return count_; }
  bool is_monomial() const { return monomial_; }
  const std::optional<ValueSet>& grid() const { return grid_; }
  const Eigen::MatrixXd& values() const { return values_; }

  /// (F_1(x), ..., F_L(x)). Sampled families throw off the grid.
  Eigen::VectorXd evaluate(double x) const;

 private:
  FunctionalFamily() = default;
  bool monomial_ = true;
  int count_ = 0;
  Eigen::MatrixXd values_;  // L x |grid|, sampled kind only
  std::optional<ValueSet> grid_;
};

Eigen::VectorXd evaluate(const FunctionalFamily& fam, double x);

/// Linear (in)dependence of the family over a finite value set, with the
/// witness points of the controllability construction.
///
/// The evaluation matrix has one row per point of v and one column per
/// functional, with a constant-1 column prepended when include_constant is
/// set. retained_indices and effective_count describe the retained
/// functionals (the constant column, always independent, is never dropped);
/// witnesses has one point per retained column, so an independent augmented
/// family of L functionals yields L + 1 witnesses. combination maps each
/// dropped functional index to its least-squares coefficients over the
/// retained columns, constant first when present.
struct IndependenceResult {
  bool independent = false;
  bool include_constant = false;
  int effective_count = 0;
  std::vector<int> retained_indices;
  std::vector<double> witnesses;
  std::map<int, RealVector> combination;
  double witness_condition = 0.0;  // sigma_max / sigma_min of the selected minor
  double combination_residual = 0.0;
};

IndependenceResult is_independent(const FunctionalFamily& fam, const ValueSet& v,
                                  bool include_constant, double tol = kRankTol);

/// Drops functionals linearly dependent (over v) on earlier ones and folds
/// their coupling operators into the retained positions:
/// mu'_q = mu_{i_q} + sum_dropped combination[d][q] mu_d, so that
/// sum_k F_k(x) mu_k is unchanged for every x in v. Already-independent
/// families are returned as-is; otherwise the reduced family is sampled on v.
std::pair<FunctionalFamily, std::vector<HermitianOperator>> reduce_to_independent(
    const FunctionalFamily& fam, const std::vector<HermitianOperator>& mus, const ValueSet& v,
    double tol = kRankTol);

/// M_j = -i (H_0 + sum_k F_k(e_j) mu_k) for each witness point e_j (the drift
/// term is the constant functional's; drop it with include_drift = false).
/// Throws when a witness is not a point of the system's value set.
std::vector<ComplexMatrix> witness_generators(const ControlSystem& sys,
                                              const std::vector<double>& witnesses,
                                              bool include_drift = true);

}  // namespace qlie
