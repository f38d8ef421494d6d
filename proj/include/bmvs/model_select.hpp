#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bmvs/dataset.hpp"
#include "bmvs/gibbs.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

struct ModelIndex {
  std::vector<Eigen::Index> indices;  // strictly increasing, 0-based
  double aicc = std::numeric_limits<double>::quiet_NaN();
  std::optional<SpdMatrix> residual_cov;

  Eigen::Index size() const {
    return static_cast<Eigen::Index>(indices.size());
  }
};

// Multivariate least squares of Y on the selected columns plus an intercept
// (the intercept is not counted in |model|):
// AICc = n log|Sigma_hat| + d q (n + |model|), Sigma_hat = E'E/n,
// d = n / (n - (|model| + q + 1)).
double aicc(const DataSet& data, const std::vector<Eigen::Index>& model);

// aicc plus the residual covariance from the same fit.
struct AiccFit {
  double aicc = 0.0;
  SpdMatrix residual_cov;
};
AiccFit aicc_fit(const DataSet& data, const std::vector<Eigen::Index>& model);

// Ranks predictors by inclusion probability (ties by smaller index),
// evaluates AICc along the nested top-j path for j = 0..max_size, and
// returns the minimizer (ties by smaller j). Collinear path points are
// skipped with a warning. max_size < 0 selects min(50, n - q - 2).
// path_out, when given, receives the AICc at each path size (NaN where
// skipped).
ModelIndex select_by_aicc(const ChainResult& result, const DataSet& data,
                          Eigen::Index max_size = -1,
                          std::vector<std::string>* warnings = nullptr,
                          std::vector<double>* path_out = nullptr);

// Median-probability rule {i : inclusion_prob_i >= 0.5}; the overload with
// data fills aicc/residual_cov when the model size permits a fit.
ModelIndex select_by_median_probability(const ChainResult& result);
ModelIndex select_by_median_probability(const ChainResult& result,
                                        const DataSet& data);

}  // namespace bmvs
