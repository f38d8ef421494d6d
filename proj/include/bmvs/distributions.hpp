#pragma once

#include <Eigen/Dense>

#include "bmvs/rng.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

// Draw from N_q(mean, cov) as mean + L z with L the lower Cholesky factor.
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const SpdMatrix& cov,
                           RngStream& rng);

// Draw from IW(nu, scale); requires nu > dim - 1.
SpdMatrix sample_inv_wishart(double nu, const SpdMatrix& scale, RngStream& rng);

// Draw from IG(shape, scale), the reciprocal of a gamma(shape, rate=scale).
double sample_inv_gamma(double shape, double scale, RngStream& rng);

}  // namespace bmvs
