#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bmvs/dataset.hpp"
#include "bmvs/hyperparams.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

// Fixed-variance conditioning for exact posterior computations over the
// 2^p model space; p <= 12 enforced.
struct OracleContext {
  DataSet data;
  double sigma_beta_sq = 1.0;
  SpdMatrix sigma_y;
  HyperParams hp;

  void validate() const;
};

struct ModelQuantities {
  Eigen::VectorXd d_k;    // diagonal of D_k
  Eigen::MatrixXd w_k;    // pq x pq
  double log_q_k = 0.0;   // log |W_k|^-1/2 |I_q (x) D_k|^1/2
  double q_k = 0.0;
  double r_tilde_k = 0.0;
  double s_n = 0.0;       // phi / (1 - phi)
};

// Builds W_k = Sigma_Y^-1 (x) X'X + I_q (x) D_k (column-major vec order)
// and the residual quadratic form
// R~_k = vec(Y)'[(Sigma_Y^-1 (x) I) - (Sigma_Y^-1 (x) X) W_k^-1
//        (Sigma_Y^-1 (x) X')] vec(Y).
ModelQuantities model_quantities(const Eigen::VectorXi& k,
                                 const OracleContext& ctx);

// log of P(Z=k|.) / P(Z=t|.):
// (log Q_k - log Q_t) + (|k| - |t|) log s_n - (R~_k - R~_t)/2.
double log_posterior_ratio(const Eigen::VectorXi& k, const Eigen::VectorXi& t,
                           const OracleContext& ctx);
double posterior_ratio(const Eigen::VectorXi& k, const Eigen::VectorXi& t,
                       const OracleContext& ctx);

// Exact posterior over all 2^p models, indexed by bitmask (bit i = Z_i);
// weights PR(k, 0) normalized via log-sum-exp.
std::vector<double> exact_model_probs(const OracleContext& ctx);

// P(Z_i = 1 | .) marginalized over exact_model_probs.
Eigen::VectorXd exact_inclusion_probs(const OracleContext& ctx);

}  // namespace bmvs
