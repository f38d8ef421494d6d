#include "bmvs/distributions.hpp"

#include <cmath>
#include <string>

#include "bmvs/errors.hpp"

namespace bmvs {

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const SpdMatrix& cov,
                           RngStream& rng) {
  if (mean.size() != cov.dim()) {
    throw DataError("sample_mvn: mean length " + std::to_string(mean.size()) +
                    " does not match covariance dimension " +
                    std::to_string(cov.dim()));
  }
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z(i) = rng.normal();
  }
  return mean + cov.cholesky() * z;
}

SpdMatrix sample_inv_wishart(double nu, const SpdMatrix& scale,
                             RngStream& rng) {
  const Eigen::Index q = scale.dim();
  if (!(nu > static_cast<double>(q - 1))) {
    throw DataError("sample_inv_wishart: nu = " + std::to_string(nu) +
                    " must exceed dim - 1 = " + std::to_string(q - 1));
  }
  // Bartlett: W = (L A)(L A)' ~ Wishart(nu, scale^-1) with L = chol(scale^-1),
  // so W^-1 = T' T ~ IW(nu, scale) where T = (L A)^-1.
  Eigen::MatrixXd l = cholesky_lower(scale.inverse());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    a(i, i) = std::sqrt(rng.chi_squared(nu - static_cast<double>(i)));
    for (Eigen::Index j = 0; j < i; ++j) {
      a(i, j) = rng.normal();
    }
  }
  Eigen::MatrixXd m = l * a;
  Eigen::MatrixXd t =
      m.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(q, q));
  Eigen::MatrixXd sigma = t.transpose() * t;
  return SpdMatrix((sigma + sigma.transpose()) * 0.5);
}

double sample_inv_gamma(double shape, double scale, RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw DataError("sample_inv_gamma: shape and scale must be positive, got " +
                    std::to_string(shape) + ", " + std::to_string(scale));
  }
  return scale / rng.gamma(shape);
}

}  // namespace bmvs
