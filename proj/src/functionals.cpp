#include "qlie/functionals.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qlie/system.hpp"

namespace qlie {

ValueSet::ValueSet(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("ValueSet: needs at least one point");
  for (double x : points_)
    if (!std::isfinite(x)) throw std::invalid_argument("ValueSet: points must be finite");
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (points_[i] - points_[i - 1] <= 1e-12)
      throw std::invalid_argument("ValueSet: duplicate points within 1e-12");
}

bool ValueSet::contains(double x, double tol) const {
  for (double p : points_)
    if (std::abs(p - x) <= tol) return true;
  return false;
}

FunctionalFamily FunctionalFamily::monomial(int degree) {
  if (degree < 1) throw std::invalid_argument("FunctionalFamily: degree must be >= 1");
  FunctionalFamily f;
  f.monomial_ = true;
  f.count_ = degree;
  return f;
}

FunctionalFamily FunctionalFamily::sampled(Eigen::MatrixXd values, ValueSet grid) {
  if (values.rows() < 1)
    throw std::invalid_argument("FunctionalFamily: need at least one functional");
  if (values.cols() != grid.size())
    throw std::invalid_argument("FunctionalFamily: table width differs from grid size");
  if (!values.allFinite())
    throw std::invalid_argument("FunctionalFamily: table values must be finite");
  FunctionalFamily f;
  f.monomial_ = false;
  f.count_ = static_cast<int>(values.rows());
  f.values_ = std::move(values);
  f.grid_ = std::move(grid);
  return f;
}

Eigen::VectorXd FunctionalFamily::evaluate(double x) const {
  Eigen::VectorXd out(count_);
  if (monomial_) {
    double p = 1.0;
    for (int k = 0; k < count_; ++k) {
      p *= x;
      out(k) = p;
    }
    return out;
  }
  const auto& pts = grid_->points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(pts[i] - x) <= 1e-12) return values_.col(static_cast<Eigen::Index>(i));
  throw std::invalid_argument("FunctionalFamily: sampled family evaluated off the grid");
}

Eigen::VectorXd evaluate(const FunctionalFamily& fam, double x) { return fam.evaluate(x); }

namespace {

// Evaluation matrix: one row per point of v, one column per functional, with
// a leading all-ones column when include_constant is set.
Eigen::MatrixXd evaluation_matrix(const FunctionalFamily& fam, const ValueSet& v,
                                  bool include_constant) {
  const int rows = v.size();
  const int fcols = fam.size();
  Eigen::MatrixXd e(rows, fcols + (include_constant ? 1 : 0));
  for (int r = 0; r < rows; ++r) {
    int c = 0;
    if (include_constant) e(r, c++) = 1.0;
    const Eigen::VectorXd row = fam.evaluate(v.points()[static_cast<std::size_t>(r)]);
    for (int k = 0; k < fcols; ++k) e(r, c + k) = row(k);
  }
  return e;
}

int matrix_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

// Greedy row selection maximizing the smallest singular value of the growing
// minor; first candidate wins ties, so the choice is deterministic.
std::vector<int> select_witness_rows(const Eigen::MatrixXd& e, int count) {
  std::vector<int> selected;
  std::vector<bool> used(static_cast<std::size_t>(e.rows()), false);
  for (int step = 0; step < count; ++step) {
    int best_row = -1;
    double best_sv = -1.0;
    for (int r = 0; r < e.rows(); ++r) {
      if (used[static_cast<std::size_t>(r)]) continue;
      Eigen::MatrixXd minor(step + 1, e.cols());
      for (int s = 0; s < step; ++s) minor.row(s) = e.row(selected[static_cast<std::size_t>(s)]);
      minor.row(step) = e.row(r);
      const double sv = smallest_singular_value(minor);
      if (sv > best_sv) {
        best_sv = sv;
        best_row = r;
      }
    }
    selected.push_back(best_row);
    used[static_cast<std::size_t>(best_row)] = true;
  }
  return selected;
}

}  // namespace

IndependenceResult is_independent(const FunctionalFamily& fam, const ValueSet& v,
                                  bool include_constant, double tol) {
  const Eigen::MatrixXd e = evaluation_matrix(fam, v, include_constant);
  const int offset = include_constant ? 1 : 0;

  IndependenceResult result;
  result.include_constant = include_constant;

  // Keep columns in index order while they grow the numerical rank.
  std::vector<int> kept_cols;
  std::vector<int> dropped_cols;
  Eigen::MatrixXd kept(e.rows(), 0);
  for (int c = 0; c < e.cols(); ++c) {
    Eigen::MatrixXd trial(e.rows(), kept.cols() + 1);
    trial << kept, e.col(c);
    if (matrix_rank(trial, tol) > static_cast<int>(kept_cols.size())) {
      kept_cols.push_back(c);
      kept = std::move(trial);
    } else {
      dropped_cols.push_back(c);
    }
  }

  // Dropped columns lie in the span of the kept ones, so least squares over
  // the full kept matrix recovers the exact combination.
  for (int c : dropped_cols) {
    RealVector coeffs = kept.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(e.col(c));
    result.combination_residual =
        std::max(result.combination_residual, (kept * coeffs - e.col(c)).norm());
    result.combination[c - offset] = std::move(coeffs);
  }

  result.independent = static_cast<int>(kept_cols.size()) == static_cast<int>(e.cols());
  for (int c : kept_cols)
    if (c >= offset) result.retained_indices.push_back(c - offset);
  result.effective_count = static_cast<int>(result.retained_indices.size());

  const std::vector<int> rows = select_witness_rows(kept, static_cast<int>(kept_cols.size()));
  for (int r : rows) result.witnesses.push_back(v.points()[static_cast<std::size_t>(r)]);
  Eigen::MatrixXd minor(rows.size(), kept.cols());
  for (std::size_t s = 0; s < rows.size(); ++s) minor.row(static_cast<Eigen::Index>(s)) = kept.row(rows[s]);
  if (minor.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(minor);
    const auto& sv = svd.singularValues();
    result.witness_condition =
        sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                : std::numeric_limits<double>::infinity();
  }
  return result;
}

std::pair<FunctionalFamily, std::vector<HermitianOperator>> reduce_to_independent(
    const FunctionalFamily& fam, const std::vector<HermitianOperator>& mus, const ValueSet& v,
    double tol) {
  if (static_cast<int>(mus.size()) != fam.size())
    throw std::invalid_argument("reduce_to_independent: operator count differs from family size");
  const IndependenceResult r = is_independent(fam, v, false, tol);
  if (r.independent) return {fam, mus};

  std::vector<HermitianOperator> reduced_mus;
  for (std::size_t q = 0; q < r.retained_indices.size(); ++q) {
    ComplexMatrix m = mus[static_cast<std::size_t>(r.retained_indices[q])].matrix();
    for (const auto& [dropped, coeffs] : r.combination)
      m += coeffs(static_cast<Eigen::Index>(q)) * mus[static_cast<std::size_t>(dropped)].matrix();
    reduced_mus.emplace_back(std::move(m));
  }

  // The reduced family is only used through its values on v.
  Eigen::MatrixXd table(r.retained_indices.size(), v.size());
  for (int c = 0; c < v.size(); ++c) {
    const Eigen::VectorXd all = fam.evaluate(v.points()[static_cast<std::size_t>(c)]);
    for (std::size_t q = 0; q < r.retained_indices.size(); ++q)
      table(static_cast<Eigen::Index>(q), c) = all(r.retained_indices[q]);
  }
  return {FunctionalFamily::sampled(std::move(table), v), std::move(reduced_mus)};
}

std::vector<ComplexMatrix> witness_generators(const ControlSystem& sys,
                                              const std::vector<double>& witnesses,
                                              bool include_drift) {
  std::vector<ComplexMatrix> out;
  const std::complex<double> minus_i(0.0, -1.0);
  for (double e : witnesses) {
    if (!sys.value_set().contains(e))
      throw std::invalid_argument("witness_generators: witness is not in the value set");
    ComplexMatrix h = include_drift
                          ? sys.h0().matrix()
                          : ComplexMatrix::Zero(sys.dimension(), sys.dimension()).eval();
    const Eigen::VectorXd f = sys.family().evaluate(e);
    for (int k = 0; k < sys.family().size(); ++k)
      h += f(k) * sys.mus()[static_cast<std::size_t>(k)].matrix();
    out.push_back(minus_i * h);
  }
  return out;
}

}  // namespace qlie
