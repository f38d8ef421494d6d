#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bmvs/conditionals.hpp"
#include "bmvs/dataset.hpp"
#include "bmvs/hyperparams.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

enum class InitMode { kZero, kRidge, kRandom };

struct ChainConfig {
  std::int64_t burn_in = 1000;
  std::int64_t keep_iters = 5000;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::int64_t thin = 1;
  InitMode init_mode = InitMode::kZero;
  bool random_scan = false;
  // Freeze sigma_beta^2 / Sigma_Y at fixed values instead of sampling them
  // (used when comparing against the fixed-variance exact posterior).
  std::optional<double> fixed_sigma_beta_sq;
  std::optional<SpdMatrix> fixed_sigma_y;
};

struct ChainResult {
  Eigen::VectorXd inclusion_prob;  // p, multiples of 1/kept_draws
  Eigen::MatrixXd beta_mean;       // p x q
  SpdMatrix sigma_y_mean;
  double sigma_beta_sq_mean = 0.0;
  // Bitmask of the kept Z vector (bit i = Z_i) -> visit count; only
  // populated for p <= 20.
  std::map<std::uint32_t, std::int64_t> model_visit_counts;
  std::vector<std::int32_t> z_flip_counts;  // one entry per sweep
  std::int64_t kept_draws = 0;
  std::vector<std::string> warnings;
};

// Runs burn_in + keep_iters sweeps. Each sweep visits predictors in index
// order (or a fresh random order under random_scan), drawing beta_i then
// Z_i and maintaining fitted <- fitted + X_i (beta_new - beta_old)';
// sigma_beta^2 and Sigma_Y are drawn once per sweep afterwards, and the
// Sigma_Y^-1 factor is recomputed once per sweep.
ChainResult run_chain(const DataSet& data, const HyperParams& hp,
                      const ChainConfig& cfg);

}  // namespace bmvs
