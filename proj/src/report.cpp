#include "bmvs/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "bmvs/errors.hpp"

namespace bmvs {

namespace {

nlohmann::json indices_1based(const std::vector<Eigen::Index>& idx) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i : idx) {
    arr.push_back(i + 1);
  }
  return arr;
}

std::vector<Eigen::Index> indices_0based(const nlohmann::json& arr,
                                         const std::string& field) {
  if (!arr.is_array()) {
    throw DataError("expected an array for '" + field + "'");
  }
  std::vector<Eigen::Index> out;
  for (const auto& v : arr) {
    const auto i = v.get<std::int64_t>();
    if (i < 1) {
      throw DataError("'" + field + "' contains non-positive index " +
                      std::to_string(i));
    }
    out.push_back(static_cast<Eigen::Index>(i - 1));
  }
  return out;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v(i));
  }
  return arr;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows,
                                 const std::string& field) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw DataError("expected a 2-D array for '" + field + "'");
  }
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != nc) {
      throw DataError("'" + field + "' has ragged rows");
    }
    for (Eigen::Index c = 0; c < nc; ++c) {
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  return j;
}

void store_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open file for writing: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw DataError("write failed: " + path);
  }
}

}  // namespace

void write_report_json(const std::string& path, const FitReport& report) {
  nlohmann::json j;
  j["config"] = report.config;
  j["seed"] = report.seed;
  j["inclusion_prob"] = vector_to_json(report.inclusion_prob);
  j["selected"] = indices_1based(report.selected);
  j["selected_aicc"] = report.selected_aicc;
  j["aicc_path"] = report.aicc_path;  // NaN serializes as null
  j["wall_time_seconds"] = report.wall_time_seconds;
  j["kept_draws"] = report.kept_draws;
  if (!report.screen_kept.empty()) {
    j["screen_kept"] = indices_1based(report.screen_kept);
  }
  j["warnings"] = report.warnings;
  store_json(path, j);
}

FitReport read_report_json(const std::string& path) {
  const nlohmann::json j = load_json(path);
  for (const char* field :
       {"config", "seed", "inclusion_prob", "selected", "aicc_path",
        "wall_time_seconds"}) {
    if (!j.contains(field)) {
      throw DataError(path + ": missing required field '" +
                      std::string(field) + "'");
    }
  }
  FitReport report;
  report.config = j["config"];
  report.seed = j["seed"].get<std::uint64_t>();
  const auto& incl = j["inclusion_prob"];
  report.inclusion_prob.resize(static_cast<Eigen::Index>(incl.size()));
  for (std::size_t i = 0; i < incl.size(); ++i) {
    report.inclusion_prob(static_cast<Eigen::Index>(i)) =
        incl[i].get<double>();
  }
  report.selected = indices_0based(j["selected"], "selected");
  report.selected_aicc = j.value("selected_aicc", 0.0);
  for (const auto& v : j["aicc_path"]) {
    report.aicc_path.push_back(
        v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                    : v.get<double>());
  }
  report.wall_time_seconds = j["wall_time_seconds"].get<double>();
  report.kept_draws = j.value("kept_draws", std::int64_t{0});
  if (j.contains("screen_kept")) {
    report.screen_kept = indices_0based(j["screen_kept"], "screen_kept");
  }
  if (j.contains("warnings")) {
    report.warnings = j["warnings"].get<std::vector<std::string>>();
  }
  return report;
}

void write_truth_json(const std::string& path, const SimSpec& spec,
                      const SimTruth& truth) {
  nlohmann::json j;
  j["setting"] = spec.setting;
  j["n"] = spec.n;
  j["p"] = truth.beta_true.rows();
  j["q"] = truth.beta_true.cols();
  j["seed"] = spec.seed;
  j["true_model"] = indices_1based(truth.true_model);
  j["beta"] = matrix_to_json(truth.beta_true);
  j["sigma_y"] = matrix_to_json(truth.sigma_y_true.matrix());
  if (truth.rho) {
    j["rho"] = *truth.rho;
  }
  store_json(path, j);
}

SimTruth read_truth_json(const std::string& path) {
  const nlohmann::json j = load_json(path);
  for (const char* field : {"true_model", "beta", "sigma_y"}) {
    if (!j.contains(field)) {
      throw DataError(path + ": missing required field '" +
                      std::string(field) + "'");
    }
  }
  SimTruth truth{indices_0based(j["true_model"], "true_model"),
                 matrix_from_json(j["beta"], "beta"),
                 SpdMatrix(matrix_from_json(j["sigma_y"], "sigma_y")),
                 std::nullopt};
  if (j.contains("rho")) {
    truth.rho = j["rho"].get<double>();
  }
  return truth;
}

void write_screen_json(const std::string& path, const ScreenReport& report) {
  nlohmann::json j;
  j["d"] = report.d;
  j["scores"] = vector_to_json(report.scores);
  j["kept"] = indices_1based(report.kept);
  j["warnings"] = report.warnings;
  store_json(path, j);
}

nlohmann::json metrics_to_json(const MetricsRow& row) {
  return nlohmann::json{{"mpp1", row.mpp1},
                        {"mpp0", row.mpp0},
                        {"exact", row.exact},
                        {"superset", row.superset},
                        {"fdr", row.fdr}};
}

MetricsRow metrics_from_json(const nlohmann::json& j) {
  MetricsRow row;
  row.mpp1 = j.at("mpp1").get<double>();
  row.mpp0 = j.at("mpp0").get<double>();
  row.exact = j.at("exact").get<double>();
  row.superset = j.at("superset").get<double>();
  row.fdr = j.at("fdr").get<double>();
  return row;
}

void write_metrics_json(const std::string& path,
                        const std::vector<MetricsRow>& rows,
                        const MetricsRow& aggregate_row, int failures) {
  nlohmann::json j;
  nlohmann::json arr = nlohmann::json::array();
  for (const MetricsRow& row : rows) {
    arr.push_back(metrics_to_json(row));
  }
  j["replicates"] = std::move(arr);
  j["aggregate"] = metrics_to_json(aggregate_row);
  j["failures"] = failures;
  store_json(path, j);
}

std::string metrics_text_table(const std::vector<MetricsRow>& rows,
                               const MetricsRow& aggregate_row) {
  std::ostringstream out;
  auto line = [&](const std::string& label, const MetricsRow& r) {
    out << std::left << std::setw(6) << label << std::right << std::fixed
        << std::setprecision(4) << std::setw(10) << r.mpp1;
    out << std::scientific << std::setprecision(3) << std::setw(12) << r.mpp0;
    out << std::fixed << std::setprecision(4) << std::setw(10) << r.exact
        << std::setw(10) << r.superset << std::setw(10) << r.fdr << '\n';
  };
  out << std::left << std::setw(6) << "rep" << std::right << std::setw(10)
      << "mpp1" << std::setw(12) << "mpp0" << std::setw(10) << "exact"
      << std::setw(10) << "superset" << std::setw(10) << "fdr" << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    line(std::to_string(i + 1), rows[i]);
  }
  line("mean", aggregate_row);
  return out.str();
}

}  // namespace bmvs
