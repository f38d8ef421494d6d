#include "bmvs/spd_matrix.hpp"

#include <cmath>
#include <string>

#include "bmvs/errors.hpp"

namespace bmvs {

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw NumericError("Cholesky failed: pivot " + std::to_string(j) +
                         " is " + std::to_string(pivot) +
                         " (matrix not positive definite)");
    }
    pivot = std::sqrt(pivot);
    l(j, j) = pivot;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / pivot;
    }
  }
  return l;
}

SpdMatrix::SpdMatrix(Eigen::MatrixXd m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw DataError("SpdMatrix: matrix must be square and non-empty");
  }
  if (!mat_.allFinite()) {
    throw DataError("SpdMatrix: non-finite entries");
  }
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  const double asym = (mat_ - mat_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw DataError("SpdMatrix: asymmetry " + std::to_string(asym / scale) +
                    " exceeds 1e-12 relative");
  }
  // Exact symmetry keeps downstream factorizations deterministic.
  mat_ = ((mat_ + mat_.transpose()) * 0.5).eval();
}

SpdMatrix SpdMatrix::identity(Eigen::Index dim) {
  return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

const Eigen::MatrixXd& SpdMatrix::cholesky() const {
  if (chol_.size() == 0) {
    chol_ = cholesky_lower(mat_);
  }
  return chol_;
}

Eigen::MatrixXd SpdMatrix::inverse() const {
  const Eigen::MatrixXd& l = cholesky();
  Eigen::MatrixXd inv_l = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(dim(), dim()));
  return inv_l.transpose() * inv_l;
}

double SpdMatrix::log_det() const {
  return 2.0 * cholesky().diagonal().array().log().sum();
}

}  // namespace bmvs
