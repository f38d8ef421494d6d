#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bmvs/dataset.hpp"
#include "bmvs/spd_matrix.hpp"

namespace bmvs {

// Stream ids at or above this base are reserved for data generation so
// chains (low stream ids) never replay generator randomness.
inline constexpr std::uint64_t kDataStreamBase = std::uint64_t{1} << 32;

struct SimOverrides {
  std::optional<Eigen::Index> true_size;
  std::optional<double> beta_min;
  std::optional<double> beta_max;
  std::optional<double> sigma_rho;  // AR parameter of Sigma_Y
  std::optional<double> x_rho;      // AR parameter of the setting-3 design
};

// Setting defaults: 1 (q=5, |t|=10, beta~U(1,3), Sigma_Y AR(0.5), X iid
// N(0,1)); 2 = 1 with q=30; 3 = 1 with X ~ N_p(0, AR(0.5)) and
// beta~U(0.5,0.8); 4 = 1 with |t|=20 and Sigma_Y AR(rho), rho~U(0.2,0.8)
// drawn per replicate. q = 0 picks the setting default.
struct SimSpec {
  int setting = 1;
  Eigen::Index n = 200;
  Eigen::Index p = 500;
  Eigen::Index q = 0;
  std::uint64_t seed = 0;
  SimOverrides overrides;
};

struct SimTruth {
  std::vector<Eigen::Index> true_model;  // 0-based, strictly increasing
  Eigen::MatrixXd beta_true;             // p x q, zero rows off true_model
  SpdMatrix sigma_y_true;
  std::optional<double> rho;             // setting 4's drawn AR parameter
};

// Entries rho^|j-k|; requires |rho| < 1.
SpdMatrix ar1_cov(Eigen::Index dim, double rho);

// Draws (X, beta, E) per the setting and returns Y = X beta + E with the
// generating truth. The overload without a stream id uses kDataStreamBase.
std::pair<DataSet, SimTruth> generate(const SimSpec& spec);
std::pair<DataSet, SimTruth> generate(const SimSpec& spec,
                                      std::uint64_t stream_id);

}  // namespace bmvs
