#include "bmvs/dcsis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "bmvs/errors.hpp"

namespace bmvs {

namespace {

// a_ij - rowmean_i - colmean_j + grandmean, in place.
void double_center(Eigen::MatrixXd& dist) {
  const Eigen::VectorXd row_means = dist.rowwise().mean();
  const double grand = row_means.mean();
  dist.colwise() -= row_means;
  dist.rowwise() -= row_means.transpose();
  dist.array() += grand;
}

Eigen::MatrixXd centered_scalar_distances(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    dist.col(j) = (x.array() - x(j)).abs();
  }
  double_center(dist);
  return dist;
}

Eigen::MatrixXd centered_row_distances(const Eigen::MatrixXd& y) {
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (y.row(i) - y.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  double_center(dist);
  return dist;
}

// dCor given the pre-centered Y matrix and its distance variance.
double dcor_from_centered(const Eigen::VectorXd& x,
                          const Eigen::MatrixXd& b_centered, double dvar_y) {
  const Eigen::MatrixXd a_centered = centered_scalar_distances(x);
  const double dvar_x = a_centered.squaredNorm();
  if (dvar_x <= 0.0 || dvar_y <= 0.0) {
    return 0.0;
  }
  // The common 1/n^2 factors cancel in the ratio.
  const double dcov_sq =
      std::max(0.0, a_centered.cwiseProduct(b_centered).sum());
  const double dcor = std::sqrt(dcov_sq / std::sqrt(dvar_x * dvar_y));
  return std::min(dcor, 1.0);
}

}  // namespace

double distance_correlation(const Eigen::VectorXd& x,
                            const Eigen::MatrixXd& y) {
  if (x.size() != y.rows()) {
    throw DataError("distance_correlation: x length " +
                    std::to_string(x.size()) + " does not match Y rows " +
                    std::to_string(y.rows()));
  }
  if (x.size() < 3) {
    throw DataError("distance_correlation: need n >= 3");
  }
  const Eigen::MatrixXd b_centered = centered_row_distances(y);
  return dcor_from_centered(x, b_centered, b_centered.squaredNorm());
}

ScreenReport screen(const DataSet& data, Eigen::Index d, int threads) {
  data.validate();
  if (d < 1 || d > data.p()) {
    throw DataError("screen: d = " + std::to_string(d) +
                    " must lie in [1, p] with p = " + std::to_string(data.p()));
  }
  if (data.n() < 3) {
    throw DataError("screen: need n >= 3");
  }

  const Eigen::Index p = data.p();
  const Eigen::MatrixXd b_centered = centered_row_distances(data.y);
  const double dvar_y = b_centered.squaredNorm();

  ScreenReport report;
  report.scores.resize(p);
  report.d = d;

  const int used = std::max(
      1, std::min<int>(threads, static_cast<int>(std::min<Eigen::Index>(
                                    p, std::thread::hardware_concurrency()))));
  if (used <= 1) {
    for (Eigen::Index i = 0; i < p; ++i) {
      report.scores(i) = dcor_from_centered(data.x.col(i), b_centered, dvar_y);
    }
  } else {
    std::atomic<Eigen::Index> next{0};
    auto worker = [&] {
      for (Eigen::Index i = next.fetch_add(1); i < p; i = next.fetch_add(1)) {
        report.scores(i) =
            dcor_from_centered(data.x.col(i), b_centered, dvar_y);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(used));
    for (int t = 0; t < used; ++t) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  for (Eigen::Index i = 0; i < p; ++i) {
    if (report.scores(i) == 0.0) {
      report.warnings.push_back("screen: column " + std::to_string(i + 1) +
                                " has zero distance variance or covariance");
    }
  }

  std::vector<Eigen::Index> ranked(static_cast<std::size_t>(p));
  std::iota(ranked.begin(), ranked.end(), Eigen::Index{0});
  std::sort(ranked.begin(), ranked.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (report.scores(a) != report.scores(b)) {
      return report.scores(a) > report.scores(b);
    }
    return a < b;
  });
  report.kept.assign(ranked.begin(), ranked.begin() + d);
  std::sort(report.kept.begin(), report.kept.end());
  return report;
}

}  // namespace bmvs
