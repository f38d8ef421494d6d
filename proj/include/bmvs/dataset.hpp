#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bmvs {

// Regression data: n observation rows, p predictors, q responses.
struct DataSet {
  Eigen::MatrixXd x;  // n x p
  Eigen::MatrixXd y;  // n x q
  std::vector<std::string> x_names;  // optional; empty or size p
  std::vector<std::string> y_names;  // optional; empty or size q

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
  Eigen::Index q() const { return y.cols(); }

  // Throws DataError on shape mismatch, n < 2, empty X/Y, or non-finite
  // entries.
  void validate() const;
};

// Copy of the dataset restricted to the given predictor columns.
DataSet subset_columns(const DataSet& data,
                       const std::vector<Eigen::Index>& cols);

}  // namespace bmvs
