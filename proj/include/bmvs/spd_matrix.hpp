#ifndef BMVS_SPD_MATRIX_HPP_
#define BMVS_SPD_MATRIX_HPP_

#include <Eigen/Dense>

namespace bmvs {

// Lower-triangular Cholesky factor of a symmetric matrix. No pivoting; a
// non-positive pivot throws NumericError naming the pivot index, so
// degeneracy surfaces instead of being repaired silently.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a);

// Dense symmetric positive-definite matrix with a lazily cached Cholesky
// factor. Construction enforces symmetry to 1e-12 relative and finiteness;
// positive-definiteness is checked whenever the factor is first needed.
class SpdMatrix {
 public:
  SpdMatrix() = default;
  explicit SpdMatrix(Eigen::MatrixXd m);

  static SpdMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXd& matrix() const { return mat_; }

  // Lower Cholesky factor, cached after the first call. Not safe to call
  // concurrently on a shared instance until the cache is warm.
  const Eigen::MatrixXd& cholesky() const;

  Eigen::MatrixXd inverse() const;
  double log_det() const;

  double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  Eigen::MatrixXd mat_;
  mutable Eigen::MatrixXd chol_;  // empty until computed
};

}  // namespace bmvs

#endif  // BMVS_SPD_MATRIX_HPP_
