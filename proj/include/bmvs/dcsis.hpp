#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bmvs/dataset.hpp"

namespace bmvs {

struct ScreenReport {
  Eigen::VectorXd scores;            // p, each in [0,1]
  std::vector<Eigen::Index> kept;    // d largest scores, ascending order
  Eigen::Index d = 0;
  std::vector<std::string> warnings;
};

// Sample distance correlation between x and the q-variate rows of Y via
// exact O(n^2) double-centering; 0 when either distance variance vanishes.
double distance_correlation(const Eigen::VectorXd& x, const Eigen::MatrixXd& y);

// Scores every column of X against Y and keeps the top d (ties by smaller
// index). The Y-distance matrix is computed once; columns are scored in
// parallel when threads > 1.
ScreenReport screen(const DataSet& data, Eigen::Index d, int threads = 1);

}  // namespace bmvs
