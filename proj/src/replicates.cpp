#include "bmvs/replicates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "bmvs/dcsis.hpp"
#include "bmvs/errors.hpp"

namespace bmvs {

namespace {

// Re-expresses a chain run on screened columns in the original coordinates.
ChainResult expand_result(const ChainResult& screened,
                          const std::vector<Eigen::Index>& kept,
                          Eigen::Index p) {
  ChainResult full = screened;
  full.inclusion_prob = Eigen::VectorXd::Zero(p);
  full.beta_mean = Eigen::MatrixXd::Zero(p, screened.beta_mean.cols());
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto sj = static_cast<Eigen::Index>(j);
    full.inclusion_prob(kept[j]) = screened.inclusion_prob(sj);
    full.beta_mean.row(kept[j]) = screened.beta_mean.row(sj);
  }
  full.model_visit_counts.clear();  // masks would be in screened coordinates
  return full;
}

ReplicateOutcome run_one(int rep, const DataGenerator& gen,
                         const ChainConfig& cfg,
                         const ReplicateOptions& opts) {
  ReplicateOutcome outcome;
  outcome.rep = rep;
  try {
    auto [data, truth] = gen(rep);
    data.validate();

    const DataSet* chain_data = &data;
    DataSet screened;
    if (opts.screen_d) {
      ScreenReport report = screen(data, *opts.screen_d, 1);
      outcome.screen_kept = report.kept;
      screened = subset_columns(data, report.kept);
      chain_data = &screened;
    }

    const HyperParams hp = opts.hp_policy
                               ? opts.hp_policy(*chain_data)
                               : HyperParams::defaults(*chain_data);
    ChainConfig rep_cfg = cfg;
    rep_cfg.stream_id = static_cast<std::uint64_t>(rep);
    ChainResult result = run_chain(*chain_data, hp, rep_cfg);

    ModelIndex selected =
        opts.rule == SelectionRule::kAicc
            ? select_by_aicc(result, *chain_data, opts.max_model_size)
            : select_by_median_probability(result, *chain_data);

    if (opts.screen_d) {
      result = expand_result(result, outcome.screen_kept, data.p());
      for (Eigen::Index& idx : selected.indices) {
        idx = outcome.screen_kept[static_cast<std::size_t>(idx)];
      }
      std::sort(selected.indices.begin(), selected.indices.end());
    }

    outcome.metrics = evaluate(selected, truth, result);
    outcome.result = std::move(result);
    outcome.selected = std::move(selected);
  } catch (const std::exception& e) {
    outcome.failed = true;
    outcome.error = e.what();
  }
  return outcome;
}

}  // namespace

ReplicateSummary run_replicates(const DataGenerator& gen,
                                const ChainConfig& cfg, int n_reps,
                                const ReplicateOptions& opts) {
  if (n_reps < 1) {
    throw DataError("run_replicates: n_reps must be positive");
  }
  if (!gen) {
    throw DataError("run_replicates: data generator is empty");
  }

  ReplicateSummary summary;
  summary.outcomes.resize(static_cast<std::size_t>(n_reps));

  const int workers = std::max(1, std::min(opts.threads, n_reps));
  if (workers <= 1) {
    for (int r = 0; r < n_reps; ++r) {
      summary.outcomes[static_cast<std::size_t>(r)] =
          run_one(r, gen, cfg, opts);
    }
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int r = next.fetch_add(1); r < n_reps; r = next.fetch_add(1)) {
        summary.outcomes[static_cast<std::size_t>(r)] =
            run_one(r, gen, cfg, opts);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  std::vector<MetricsRow> rows;
  for (const ReplicateOutcome& o : summary.outcomes) {
    if (o.failed) {
      ++summary.failure_count;
    } else if (o.metrics) {
      rows.push_back(*o.metrics);
    }
  }
  if (rows.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    summary.aggregate_metrics = MetricsRow{nan, nan, nan, nan, nan};
  } else {
    summary.aggregate_metrics = aggregate(rows);
  }
  return summary;
}

}  // namespace bmvs
