#pragma once

#include <Eigen/Dense>

#include "bmvs/dataset.hpp"
#include "bmvs/hyperparams.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

struct MvnParams {
  Eigen::VectorXd mean;
  SpdMatrix cov;
};

struct InvGammaParams {
  double shape = 0.0;
  double scale = 0.0;
};

struct InvWishartParams {
  double df = 0.0;
  SpdMatrix scale;
};

// Current position of one Gibbs chain.
struct ChainState {
  Eigen::MatrixXd beta;    // p x q, rows beta_i
  Eigen::VectorXi z;       // p, entries 0/1
  double sigma_beta_sq = 1.0;
  SpdMatrix sigma_y;
  SpdMatrix sigma_y_inv;   // kept in sync with sigma_y via set_sigma_y
  Eigen::MatrixXd fitted;  // n x q, caches X * beta

  ChainState(Eigen::MatrixXd beta_in, Eigen::VectorXi z_in,
             double sigma_beta_sq_in, SpdMatrix sigma_y_in,
             const Eigen::MatrixXd& x);

  void set_sigma_y(SpdMatrix value);

  // Throws DataError on z entries outside {0,1} or non-positive
  // sigma_beta_sq.
  void validate() const;

  // Max relative deviation of the fitted cache from X * beta.
  double fitted_rel_error(const DataSet& data) const;
  void refresh_fitted(const DataSet& data);
};

// N_q parameters of beta_i given everything else:
// cov = ((sigma_beta^2 tau_i^2 I)^-1 + s_i SigmaY^-1)^-1 with s_i = sum_m
// X_mi^2; mean = cov * SigmaY^-1 * sum_m X_mi (Y_m - mu_m(-beta_i))'.
MvnParams beta_conditional(Eigen::Index i, const ChainState& state,
                           const DataSet& data, const HyperParams& hp);

// IG parameters of sigma_beta^2: (alpha1 + pq/2, alpha2 + half the
// tau-weighted sum of ||beta_i||^2), or the un-halved pair when
// hp.displayed_ig_update is set.
InvGammaParams sigma_beta_conditional(const ChainState& state,
                                      const HyperParams& hp);

// P(Z_i = 1 | beta_i, sigma_beta^2), the slab/spike density ratio weighted
// by phi, evaluated in log space.
double z_conditional(Eigen::Index i, const ChainState& state,
                     const HyperParams& hp);

// IW parameters of Sigma_Y: df = n + nu, scale = Lambda + E'E with
// E = Y - X beta.
InvWishartParams sigma_y_conditional(const ChainState& state,
                                     const DataSet& data,
                                     const HyperParams& hp);

}  // namespace bmvs
