#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmvs/dcsis.hpp"
#include "bmvs/metrics.hpp"
#include "bmvs/simgen.hpp"

namespace bmvs {

// Everything a fit run must persist. Indices are 0-based in memory and
// 1-based in the JSON files.
struct FitReport {
  nlohmann::json config;
  std::uint64_t seed = 0;
  Eigen::VectorXd inclusion_prob;
  std::vector<Eigen::Index> selected;
  double selected_aicc = 0.0;
  std::vector<double> aicc_path;  // NaN -> null for skipped path points
  double wall_time_seconds = 0.0;
  std::int64_t kept_draws = 0;
  std::vector<Eigen::Index> screen_kept;  // empty when not screening
  std::vector<std::string> warnings;
};

void write_report_json(const std::string& path, const FitReport& report);
FitReport read_report_json(const std::string& path);

void write_truth_json(const std::string& path, const SimSpec& spec,
                      const SimTruth& truth);
SimTruth read_truth_json(const std::string& path);

void write_screen_json(const std::string& path, const ScreenReport& report);

nlohmann::json metrics_to_json(const MetricsRow& row);
MetricsRow metrics_from_json(const nlohmann::json& j);
void write_metrics_json(const std::string& path,
                        const std::vector<MetricsRow>& rows,
                        const MetricsRow& aggregate_row, int failures);

// Fixed-width rendering: one line per replicate plus a mean row.
std::string metrics_text_table(const std::vector<MetricsRow>& rows,
                               const MetricsRow& aggregate_row);

}  // namespace bmvs
