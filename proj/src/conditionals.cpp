#include "bmvs/conditionals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bmvs/errors.hpp"

namespace bmvs {

ChainState::ChainState(Eigen::MatrixXd beta_in, Eigen::VectorXi z_in,
                       double sigma_beta_sq_in, SpdMatrix sigma_y_in,
                       const Eigen::MatrixXd& x)
    : beta(std::move(beta_in)),
      z(std::move(z_in)),
      sigma_beta_sq(sigma_beta_sq_in),
      sigma_y(SpdMatrix::identity(sigma_y_in.dim())),
      sigma_y_inv(SpdMatrix::identity(sigma_y_in.dim())),
      fitted(x * beta) {
  if (beta.rows() != x.cols() || z.size() != beta.rows()) {
    throw DataError("ChainState: beta/z dimensions do not match X");
  }
  set_sigma_y(std::move(sigma_y_in));
  validate();
}

void ChainState::set_sigma_y(SpdMatrix value) {
  sigma_y_inv = SpdMatrix(value.inverse());
  sigma_y = std::move(value);
}

void ChainState::validate() const {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z(i) != 0 && z(i) != 1) {
      throw DataError("ChainState: z(" + std::to_string(i) +
                      ") = " + std::to_string(z(i)) + " is not 0/1");
    }
  }
  if (!(sigma_beta_sq > 0.0) || !std::isfinite(sigma_beta_sq)) {
    throw DataError("ChainState: sigma_beta_sq must be positive and finite");
  }
  if (!beta.allFinite()) {
    throw DataError("ChainState: beta contains non-finite entries");
  }
}

double ChainState::fitted_rel_error(const DataSet& data) const {
  const Eigen::MatrixXd exact = data.x * beta;
  const double scale = std::max(1.0, exact.cwiseAbs().maxCoeff());
  return (fitted - exact).cwiseAbs().maxCoeff() / scale;
}

void ChainState::refresh_fitted(const DataSet& data) {
  fitted = data.x * beta;
}

MvnParams beta_conditional(Eigen::Index i, const ChainState& state,
                           const DataSet& data, const HyperParams& hp) {
  const Eigen::Index q = data.q();
  const double tau_sq = state.z(i) == 1 ? hp.tau1_sq : hp.tau0_sq;
  const double prior_prec = 1.0 / (state.sigma_beta_sq * tau_sq);
  const double s_i = data.x.col(i).squaredNorm();

  Eigen::MatrixXd precision =
      prior_prec * Eigen::MatrixXd::Identity(q, q) +
      s_i * state.sigma_y_inv.matrix();
  Eigen::MatrixXd cov = SpdMatrix(std::move(precision)).inverse();
  cov = ((cov + cov.transpose()) * 0.5).eval();

  // sum_m X_mi (Y_m - mu_m(-beta_i))' = (Y - fitted)'X_i + s_i beta_i'.
  Eigen::VectorXd u = (data.y - state.fitted).transpose() * data.x.col(i) +
                      s_i * state.beta.row(i).transpose();
  Eigen::VectorXd mean = cov * (state.sigma_y_inv.matrix() * u);
  if (!mean.allFinite() || !cov.allFinite()) {
    throw NumericError("beta_conditional: non-finite result for predictor " +
                       std::to_string(i));
  }
  return MvnParams{std::move(mean), SpdMatrix(std::move(cov))};
}

InvGammaParams sigma_beta_conditional(const ChainState& state,
                                      const HyperParams& hp) {
  const auto p = static_cast<double>(state.beta.rows());
  const auto q = static_cast<double>(state.beta.cols());
  double quad = 0.0;
  for (Eigen::Index i = 0; i < state.beta.rows(); ++i) {
    const double tau_sq = state.z(i) == 1 ? hp.tau1_sq : hp.tau0_sq;
    quad += state.beta.row(i).squaredNorm() / tau_sq;
  }
  if (hp.displayed_ig_update) {
    return InvGammaParams{hp.alpha1 + p * q, hp.alpha2 + quad};
  }
  return InvGammaParams{hp.alpha1 + 0.5 * p * q, hp.alpha2 + 0.5 * quad};
}

double z_conditional(Eigen::Index i, const ChainState& state,
                     const HyperParams& hp) {
  const auto q = static_cast<double>(state.beta.cols());
  const double norm_sq = state.beta.row(i).squaredNorm();
  const double v1 = state.sigma_beta_sq * hp.tau1_sq;
  const double v0 = state.sigma_beta_sq * hp.tau0_sq;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double log_slab = std::log(hp.phi) - 0.5 * q * std::log(two_pi * v1) -
                          0.5 * norm_sq / v1;
  const double log_spike = std::log1p(-hp.phi) -
                           0.5 * q * std::log(two_pi * v0) -
                           0.5 * norm_sq / v0;
  // 1 / (1 + exp(log_spike - log_slab)), saturating cleanly at 0 and 1.
  const double diff = log_spike - log_slab;
  if (diff > 0.0) {
    return std::exp(-diff) / (1.0 + std::exp(-diff));
  }
  return 1.0 / (1.0 + std::exp(diff));
}

InvWishartParams sigma_y_conditional(const ChainState& state,
                                     const DataSet& data,
                                     const HyperParams& hp) {
  const Eigen::MatrixXd resid = data.y - state.fitted;
  Eigen::MatrixXd scale = hp.lambda.matrix() + resid.transpose() * resid;
  return InvWishartParams{static_cast<double>(data.n()) + hp.nu,
                          SpdMatrix(std::move(scale))};
}

}  // namespace bmvs
