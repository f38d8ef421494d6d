#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmvs/dataset.hpp"
#include "bmvs/gibbs.hpp"
#include "bmvs/hyperparams.hpp"
#include "bmvs/metrics.hpp"
#include "bmvs/model_select.hpp"
#include "bmvs/simgen.hpp"

namespace bmvs {

enum class SelectionRule { kAicc, kMedian };

// Produces the dataset and truth for replicate r; must be safe to call
// concurrently for distinct r.
using DataGenerator =
    std::function<std::pair<DataSet, SimTruth>(int rep)>;

// Maps a dataset to the hyperparameters its chain runs with; defaults to
// HyperParams::defaults. Applied to the screened dataset when screening.
using HpPolicy = std::function<HyperParams(const DataSet&)>;

struct ReplicateOptions {
  int threads = 1;
  std::optional<Eigen::Index> screen_d;  // run DC-SIS first when set
  SelectionRule rule = SelectionRule::kAicc;
  Eigen::Index max_model_size = -1;      // -1 -> select_by_aicc default
  HpPolicy hp_policy;                    // empty -> HyperParams::defaults
};

struct ReplicateOutcome {
  int rep = 0;
  bool failed = false;
  std::string error;
  // In the original predictor coordinates even when screening dropped
  // columns (dropped columns get inclusion probability 0).
  std::optional<ChainResult> result;
  std::optional<ModelIndex> selected;
  std::optional<MetricsRow> metrics;
  std::vector<Eigen::Index> screen_kept;  // empty when not screening
};

struct ReplicateSummary {
  std::vector<ReplicateOutcome> outcomes;  // ordered by replicate index
  MetricsRow aggregate_metrics;            // over successful replicates
  int failure_count = 0;
};

// Runs n_reps independent chains; replicate r's chain uses stream id r, so
// generators should draw from stream ids >= kDataStreamBase. Failures are
// recorded per replicate, not fatal. Output order does not depend on
// opts.threads.
ReplicateSummary run_replicates(const DataGenerator& gen,
                                const ChainConfig& cfg, int n_reps,
                                const ReplicateOptions& opts = {});

}  // namespace bmvs
