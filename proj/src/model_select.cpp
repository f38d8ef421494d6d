#include "bmvs/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bmvs/errors.hpp"

namespace bmvs {

namespace {

Eigen::Index default_max_size(const DataSet& data) {
  return std::min<Eigen::Index>(50, data.n() - data.q() - 2);
}

}  // namespace

AiccFit aicc_fit(const DataSet& data, const std::vector<Eigen::Index>& model) {
  data.validate();
  const Eigen::Index n = data.n();
  const Eigen::Index q = data.q();
  const auto size = static_cast<Eigen::Index>(model.size());
  if (size >= n - q - 1) {
    throw DataError("aicc: model size " + std::to_string(size) +
                    " must be below n - q - 1 = " + std::to_string(n - q - 1));
  }
  for (Eigen::Index idx : model) {
    if (idx < 0 || idx >= data.p()) {
      throw DataError("aicc: predictor index " + std::to_string(idx) +
                      " out of range");
    }
  }

  Eigen::MatrixXd design(n, size + 1);
  design.col(0).setOnes();
  for (Eigen::Index j = 0; j < size; ++j) {
    design.col(j + 1) = data.x.col(model[static_cast<std::size_t>(j)]);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    const auto& perm = qr.colsPermutation().indices();
    std::string cols;
    for (Eigen::Index j = qr.rank(); j < design.cols(); ++j) {
      const Eigen::Index pos = perm(j);
      if (!cols.empty()) cols += ", ";
      cols += pos == 0 ? std::string("intercept")
                       : std::to_string(
                             model[static_cast<std::size_t>(pos - 1)] + 1);
    }
    throw DataError("aicc: design is rank-deficient; dependent columns: " +
                    cols);
  }

  Eigen::MatrixXd coef = qr.solve(data.y);
  Eigen::MatrixXd resid = data.y - design * coef;
  Eigen::MatrixXd sigma_hat =
      resid.transpose() * resid / static_cast<double>(n);
  sigma_hat = ((sigma_hat + sigma_hat.transpose()) * 0.5).eval();

  double log_det = 0.0;
  SpdMatrix residual_cov = SpdMatrix::identity(q);
  try {
    residual_cov = SpdMatrix(sigma_hat);
    log_det = residual_cov.log_det();
  } catch (const std::runtime_error& e) {
    throw NumericError(
        std::string("aicc: residual covariance is singular: ") + e.what());
  }

  const auto nd = static_cast<double>(n);
  const auto qd = static_cast<double>(q);
  const auto sd = static_cast<double>(size);
  const double d = nd / (nd - (sd + qd + 1.0));
  return AiccFit{nd * log_det + d * qd * (nd + sd), std::move(residual_cov)};
}

double aicc(const DataSet& data, const std::vector<Eigen::Index>& model) {
  return aicc_fit(data, model).aicc;
}

ModelIndex select_by_aicc(const ChainResult& result, const DataSet& data,
                          Eigen::Index max_size,
                          std::vector<std::string>* warnings,
                          std::vector<double>* path_out) {
  data.validate();
  if (max_size < 0) {
    max_size = default_max_size(data);
  }
  if (max_size >= data.n() - data.q() - 1) {
    throw DataError("select_by_aicc: max_size " + std::to_string(max_size) +
                    " must be below n - q - 1 = " +
                    std::to_string(data.n() - data.q() - 1));
  }
  if (result.inclusion_prob.size() != data.p()) {
    throw DataError("select_by_aicc: inclusion_prob length does not match p");
  }

  std::vector<Eigen::Index> ranked(static_cast<std::size_t>(data.p()));
  std::iota(ranked.begin(), ranked.end(), Eigen::Index{0});
  std::sort(ranked.begin(), ranked.end(),
            [&](Eigen::Index a, Eigen::Index b) {
              if (result.inclusion_prob(a) != result.inclusion_prob(b)) {
                return result.inclusion_prob(a) > result.inclusion_prob(b);
              }
              return a < b;
            });

  if (path_out != nullptr) {
    path_out->clear();
  }
  std::optional<ModelIndex> best;
  std::vector<Eigen::Index> path;
  const Eigen::Index path_end = std::min(max_size, data.p());
  for (Eigen::Index j = 0; j <= path_end; ++j) {
    if (j > 0) {
      path.push_back(ranked[static_cast<std::size_t>(j - 1)]);
    }
    std::vector<Eigen::Index> candidate = path;
    std::sort(candidate.begin(), candidate.end());
    try {
      AiccFit fit = aicc_fit(data, candidate);
      if (path_out != nullptr) {
        path_out->push_back(fit.aicc);
      }
      if (!best || fit.aicc < best->aicc) {
        best = ModelIndex{std::move(candidate), fit.aicc,
                          std::move(fit.residual_cov)};
      }
    } catch (const DataError& e) {
      if (path_out != nullptr) {
        path_out->push_back(std::numeric_limits<double>::quiet_NaN());
      }
      if (warnings != nullptr) {
        warnings->push_back("select_by_aicc: skipped path size " +
                            std::to_string(j) + ": " + e.what());
      }
    }
  }
  if (!best) {
    throw NumericError("select_by_aicc: no evaluable model on the path");
  }
  return std::move(*best);
}

ModelIndex select_by_median_probability(const ChainResult& result) {
  ModelIndex model;
  for (Eigen::Index i = 0; i < result.inclusion_prob.size(); ++i) {
    if (result.inclusion_prob(i) >= 0.5) {
      model.indices.push_back(i);
    }
  }
  return model;
}

ModelIndex select_by_median_probability(const ChainResult& result,
                                        const DataSet& data) {
  ModelIndex model = select_by_median_probability(result);
  if (model.size() < data.n() - data.q() - 1) {
    try {
      AiccFit fit = aicc_fit(data, model.indices);
      model.aicc = fit.aicc;
      model.residual_cov = std::move(fit.residual_cov);
    } catch (const std::runtime_error&) {
      // Size permits but the fit is degenerate; leave aicc unset.
    }
  }
  return model;
}

}  // namespace bmvs
