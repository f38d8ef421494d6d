#pragma once

#include <cstdint>
#include <utility>

#include "bmvs/dataset.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

// Spike/slab prior scales, selection probability, and the variance priors.
struct HyperParams {
  double tau0_sq = 0.0;
  double tau1_sq = 0.0;
  double phi = 0.0;
  double alpha1 = 0.01;
  double alpha2 = 0.01;
  double nu = 0.0;
  SpdMatrix lambda;
  // When true, the sigma_beta^2 update uses the un-halved shape/scale
  // parameterization IG(alpha1 + pq, alpha2 + sum_i ||beta_i||^2 / tau^2)
  // instead of the derived IG(alpha1 + pq/2, alpha2 + half that sum).
  bool displayed_ig_update = false;

  // Throws DataError unless 0 < tau0_sq < tau1_sq, phi in (0,1),
  // alpha1, alpha2 > 0, nu > q-1, and lambda is q x q.
  void validate(Eigen::Index q) const;

  // tau from compute_tau, phi from calibrate_phi, nu = q+1, lambda = I_q.
  static HyperParams defaults(const DataSet& data);
};

// tau0^2 = sbar/(10n), tau1^2 = sbar * max((pq)^2.1 / (100n), log n),
// sbar = mean of the unbiased Y-column sample variances.
std::pair<double, double> compute_tau(const DataSet& data);

// Unique phi in (0,1) with P(Binomial(p, phi) > log n) = 0.1, solved by
// bisection to |P - 0.1| <= 1e-10; the event reads X >= floor(log n) + 1.
double calibrate_phi(std::int64_t p, double n);

}  // namespace bmvs
