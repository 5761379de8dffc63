#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qlie {

/// Dense complex N x N matrix, the carrier for operators and propagators.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Default tolerances. Rank decisions drive controllability verdicts, so the
// rank threshold is relative to the largest singular value.
inline constexpr double kHermTol = 1e-10;         // hermiticity, relative to Frobenius norm
inline constexpr double kRankTol = 1e-9;          // singular value threshold, relative
inline constexpr double kBasisAcceptTol = 1e-8;   // Gram-Schmidt residual acceptance
inline constexpr double kUnitaryTol = 1e-9;       // ||U^dag U - I||_F bound

bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermTol);
bool is_skew_hermitian(const ComplexMatrix& a, double rel_tol = kHermTol);

/// Hermitian matrix validated at construction; inputs failing the hermiticity
/// tolerance are rejected, not symmetrized.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix mat, double rel_tol = kHermTol);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dimension() const { return mat_.rows(); }
  double trace() const { return mat_.trace().real(); }

 private:
  ComplexMatrix mat_;
};

/// A list of real vectors of common length, used for rank computations over
/// realified matrices.
struct RealVectorSet {
  Eigen::Index dim = 0;
  std::vector<RealVector> vectors;
};

/// ab - ba. Throws on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Real inner product Re tr(a^dag b); equals the Euclidean inner product of
/// the realified vectors.
double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major real parts followed by row-major imaginary parts; an isometry
/// from (C^{n x n}, Frobenius) to (R^{2n^2}, Euclidean).
RealVector realify(const ComplexMatrix& x);

/// Count of singular values exceeding tol times the largest one; 0 for an
/// empty set. tol must be positive.
int numerical_rank(const RealVectorSet& vs, double tol = kRankTol);

/// a - (tr(a)/n) I.
ComplexMatrix traceless_part(const ComplexMatrix& a);

/// exp(-i t h) via Hermitian eigendecomposition; unitary up to round-off.
ComplexMatrix expm_hermitian_factor(const HermitianOperator& h, double t);

/// exp(x) for skew-Hermitian x, computed through the Hermitian route.
ComplexMatrix expm_skew(const ComplexMatrix& x);

/// ||U^dag U - I||_F.
double unitarity_residual(const ComplexMatrix& u);

}  // namespace qlie
