#include "bmvs/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bmvs/errors.hpp"

namespace bmvs {

void OracleContext::validate() const {
  data.validate();
  hp.validate(data.q());
  if (data.p() > 12) {
    throw DataError("OracleContext: p = " + std::to_string(data.p()) +
                    " exceeds the 2^p enumeration limit of p <= 12");
  }
  if (sigma_y.dim() != data.q()) {
    throw DataError("OracleContext: sigma_y dimension does not match q");
  }
  if (!(sigma_beta_sq > 0.0)) {
    throw DataError("OracleContext: sigma_beta_sq must be positive");
  }
}

ModelQuantities model_quantities(const Eigen::VectorXi& k,
                                 const OracleContext& ctx) {
  ctx.validate();
  const Eigen::Index p = ctx.data.p();
  const Eigen::Index q = ctx.data.q();
  if (k.size() != p) {
    throw DataError("model_quantities: k has length " +
                    std::to_string(k.size()) + ", expected p = " +
                    std::to_string(p));
  }
  ModelQuantities mq;
  mq.d_k.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double tau_sq = k(i) == 1 ? ctx.hp.tau1_sq : ctx.hp.tau0_sq;
    mq.d_k(i) = 1.0 / (ctx.sigma_beta_sq * tau_sq);
  }

  const Eigen::MatrixXd sy_inv = ctx.sigma_y.inverse();
  const Eigen::MatrixXd xtx = ctx.data.x.transpose() * ctx.data.x;
  mq.w_k.setZero(p * q, p * q);
  for (Eigen::Index a = 0; a < q; ++a) {
    for (Eigen::Index b = 0; b < q; ++b) {
      mq.w_k.block(a * p, b * p, p, p) = sy_inv(a, b) * xtx;
    }
    mq.w_k.block(a * p, a * p, p, p) += mq.d_k.asDiagonal();
  }

  Eigen::MatrixXd w_chol;
  try {
    w_chol = cholesky_lower((mq.w_k + mq.w_k.transpose()) * 0.5);
  } catch (const NumericError& e) {
    throw NumericError(std::string("model_quantities: W_k is degenerate: ") +
                       e.what());
  }
  const double log_det_w =
      2.0 * w_chol.diagonal().array().log().sum();
  mq.log_q_k = 0.5 * static_cast<double>(q) * mq.d_k.array().log().sum() -
               0.5 * log_det_w;
  mq.q_k = std::exp(mq.log_q_k);

  // (Sigma_Y^-1 (x) X') vec(Y) = vec(X'Y Sigma_Y^-1).
  const Eigen::MatrixXd m = ctx.data.x.transpose() * ctx.data.y * sy_inv;
  const Eigen::VectorXd v =
      Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
  Eigen::VectorXd half = w_chol.triangularView<Eigen::Lower>().solve(v);
  const double t1 = (sy_inv * (ctx.data.y.transpose() * ctx.data.y)).trace();
  mq.r_tilde_k = t1 - half.squaredNorm();
  mq.s_n = ctx.hp.phi / (1.0 - ctx.hp.phi);
  return mq;
}

double log_posterior_ratio(const Eigen::VectorXi& k, const Eigen::VectorXi& t,
                           const OracleContext& ctx) {
  const ModelQuantities mk = model_quantities(k, ctx);
  const ModelQuantities mt = model_quantities(t, ctx);
  const double size_diff = static_cast<double>(k.sum() - t.sum());
  return (mk.log_q_k - mt.log_q_k) + size_diff * std::log(mk.s_n) -
         0.5 * (mk.r_tilde_k - mt.r_tilde_k);
}

double posterior_ratio(const Eigen::VectorXi& k, const Eigen::VectorXi& t,
                       const OracleContext& ctx) {
  return std::exp(log_posterior_ratio(k, t, ctx));
}

std::vector<double> exact_model_probs(const OracleContext& ctx) {
  ctx.validate();
  const Eigen::Index p = ctx.data.p();
  const std::size_t n_models = std::size_t{1} << p;
  const Eigen::VectorXi null_model = Eigen::VectorXi::Zero(p);
  const ModelQuantities m0 = model_quantities(null_model, ctx);
  const double log_s_n = std::log(m0.s_n);

  std::vector<double> log_w(n_models);
  double max_log_w = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < n_models; ++mask) {
    Eigen::VectorXi k(p);
    for (Eigen::Index i = 0; i < p; ++i) {
      k(i) = static_cast<int>((mask >> i) & 1U);
    }
    const ModelQuantities mk = model_quantities(k, ctx);
    log_w[mask] = (mk.log_q_k - m0.log_q_k) +
                  static_cast<double>(k.sum()) * log_s_n -
                  0.5 * (mk.r_tilde_k - m0.r_tilde_k);
    max_log_w = std::max(max_log_w, log_w[mask]);
  }
  double total = 0.0;
  for (double& lw : log_w) {
    lw = std::exp(lw - max_log_w);
    total += lw;
  }
  for (double& w : log_w) {
    w /= total;
  }
  return log_w;
}

Eigen::VectorXd exact_inclusion_probs(const OracleContext& ctx) {
  const std::vector<double> probs = exact_model_probs(ctx);
  const Eigen::Index p = ctx.data.p();
  Eigen::VectorXd incl = Eigen::VectorXd::Zero(p);
  for (std::size_t mask = 0; mask < probs.size(); ++mask) {
    for (Eigen::Index i = 0; i < p; ++i) {
      if ((mask >> i) & 1U) {
        incl(i) += probs[mask];
      }
    }
  }
  return incl;
}

}  // namespace bmvs
