#include "qlie/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace qlie {

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= rel_tol * a.norm();
}

bool is_skew_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return (a + a.adjoint()).norm() <= rel_tol * a.norm();
}

HermitianOperator::HermitianOperator(ComplexMatrix mat, double rel_tol) : mat_(std::move(mat)) {
  if (mat_.rows() == 0 || mat_.rows() != mat_.cols())
    throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
  if (!mat_.allFinite())
    throw std::invalid_argument("HermitianOperator: entries must be finite");
  if (!is_hermitian(mat_, rel_tol))
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian within tolerance");
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_inner: dimension mismatch");
  return a.conjugate().cwiseProduct(b).sum().real();
}

RealVector realify(const ComplexMatrix& x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  RealVector v(2 * n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      v(i * m + j) = x(i, j).real();
      v(n * m + i * m + j) = x(i, j).imag();
    }
  return v;
}

int numerical_rank(const RealVectorSet& vs, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("numerical_rank: tol must be positive");
  if (vs.vectors.empty()) return 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vs.vectors.size()), vs.dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const RealVector& v = vs.vectors[static_cast<std::size_t>(i)];
    if (v.size() != vs.dim)
      throw std::invalid_argument("numerical_rank: vector length differs from dim");
    if (!v.allFinite())
      throw std::invalid_argument("numerical_rank: entries must be finite");
    m.row(i) = v.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

ComplexMatrix traceless_part(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("traceless_part: matrix must be square");
  const Eigen::Index n = a.rows();
  return a - (a.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
}

ComplexMatrix expm_hermitian_factor(const HermitianOperator& h, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("expm_hermitian_factor: t must be finite");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expm_hermitian_factor: eigendecomposition failed");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    phases(i) = std::exp(std::complex<double>(0.0, -t * lambda(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix expm_skew(const ComplexMatrix& x) {
  if (!is_skew_hermitian(x, 1e-8))
    throw std::invalid_argument("expm_skew: matrix is not skew-Hermitian");
  // x = -i h with h = i x Hermitian, so exp(x) = exp(-i h).
  ComplexMatrix h = std::complex<double>(0.0, 1.0) * x;
  h = 0.5 * (h + h.adjoint().eval());
  return expm_hermitian_factor(HermitianOperator(std::move(h)), 1.0);
}

double unitarity_residual(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

}  // namespace qlie
