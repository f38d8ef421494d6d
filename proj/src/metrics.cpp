#include "bmvs/metrics.hpp"

#include <string>

#include "bmvs/errors.hpp"

namespace bmvs {

MetricsRow evaluate(const ModelIndex& selected, const SimTruth& truth,
                    const ChainResult& result) {
  const Eigen::Index p = truth.beta_true.rows();
  if (result.inclusion_prob.size() != p) {
    throw DataError("evaluate: inclusion_prob length " +
                    std::to_string(result.inclusion_prob.size()) +
                    " does not match p = " + std::to_string(p));
  }
  std::vector<bool> in_truth(static_cast<std::size_t>(p), false);
  for (Eigen::Index i : truth.true_model) {
    if (i < 0 || i >= p) {
      throw DataError("evaluate: true-model index out of range");
    }
    in_truth[static_cast<std::size_t>(i)] = true;
  }

  MetricsRow row;
  double sum1 = 0.0;
  double sum0 = 0.0;
  Eigen::Index n1 = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    if (in_truth[static_cast<std::size_t>(i)]) {
      sum1 += result.inclusion_prob(i);
      ++n1;
    } else {
      sum0 += result.inclusion_prob(i);
    }
  }
  row.mpp1 = n1 > 0 ? sum1 / static_cast<double>(n1) : 0.0;
  row.mpp0 = p > n1 ? sum0 / static_cast<double>(p - n1) : 0.0;

  Eigen::Index hits = 0;
  Eigen::Index false_positives = 0;
  for (Eigen::Index i : selected.indices) {
    if (i < 0 || i >= p) {
      throw DataError("evaluate: selected index out of range");
    }
    if (in_truth[static_cast<std::size_t>(i)]) {
      ++hits;
    } else {
      ++false_positives;
    }
  }
  const bool covers = hits == n1;
  row.superset = covers ? 1.0 : 0.0;
  row.exact = covers && false_positives == 0 ? 1.0 : 0.0;
  row.fdr = selected.indices.empty()
                ? 0.0
                : static_cast<double>(false_positives) /
                      static_cast<double>(selected.indices.size());
  return row;
}

MetricsRow aggregate(const std::vector<MetricsRow>& rows) {
  if (rows.empty()) {
    throw DataError("aggregate: empty metrics list");
  }
  MetricsRow out;
  for (const MetricsRow& r : rows) {
    out.mpp1 += r.mpp1;
    out.mpp0 += r.mpp0;
    out.exact += r.exact;
    out.superset += r.superset;
    out.fdr += r.fdr;
  }
  const auto n = static_cast<double>(rows.size());
  out.mpp1 /= n;
  out.mpp0 /= n;
  out.exact /= n;
  out.superset /= n;
  out.fdr /= n;
  return out;
}

}  // namespace bmvs
