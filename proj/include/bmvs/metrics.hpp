#pragma once

#include <vector>

#include "bmvs/gibbs.hpp"
#include "bmvs/model_select.hpp"
#include "bmvs/simgen.hpp"

namespace bmvs {

struct MetricsRow {
  double mpp1 = 0.0;      // mean inclusion prob over the true model
  double mpp0 = 0.0;      // mean over its complement
  double exact = 0.0;     // [selected == truth]
  double superset = 0.0;  // [selected contains truth]
  double fdr = 0.0;       // |selected \ truth| / |selected|, 0 when empty
};

MetricsRow evaluate(const ModelIndex& selected, const SimTruth& truth,
                    const ChainResult& result);

// Field-wise means; errors on an empty list.
MetricsRow aggregate(const std::vector<MetricsRow>& rows);

}  // namespace bmvs
