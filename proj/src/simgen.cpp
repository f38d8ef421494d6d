#include "bmvs/simgen.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bmvs/distributions.hpp"
#include "bmvs/errors.hpp"
#include "bmvs/rng.hpp"

namespace bmvs {

SpdMatrix ar1_cov(Eigen::Index dim, double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw DataError("ar1_cov: |rho| must be below 1, got " +
                    std::to_string(rho));
  }
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(k, j) = std::pow(rho, std::abs(static_cast<double>(j - k)));
    }
  }
  return SpdMatrix(std::move(m));
}

namespace {

struct ResolvedSpec {
  Eigen::Index n, p, q, true_size;
  double beta_min, beta_max;
  std::optional<double> sigma_rho;  // unset for setting 4 (drawn)
  double x_rho;                     // 0 = iid design
};

ResolvedSpec resolve(const SimSpec& spec) {
  if (spec.setting < 1 || spec.setting > 4) {
    throw DataError("generate: setting must be 1..4, got " +
                    std::to_string(spec.setting));
  }
  if (spec.n < 2 || spec.p < 1 || spec.q < 0) {
    throw DataError("generate: need n >= 2, p >= 1, q >= 0");
  }
  ResolvedSpec r;
  r.n = spec.n;
  r.p = spec.p;
  r.q = spec.q > 0 ? spec.q : (spec.setting == 2 ? 30 : 5);
  r.true_size =
      spec.overrides.true_size.value_or(spec.setting == 4 ? 20 : 10);
  r.beta_min = spec.overrides.beta_min.value_or(spec.setting == 3 ? 0.5 : 1.0);
  r.beta_max = spec.overrides.beta_max.value_or(spec.setting == 3 ? 0.8 : 3.0);
  if (spec.setting == 4 && !spec.overrides.sigma_rho) {
    r.sigma_rho = std::nullopt;
  } else {
    r.sigma_rho = spec.overrides.sigma_rho.value_or(0.5);
  }
  r.x_rho = spec.setting == 3 ? spec.overrides.x_rho.value_or(0.5) : 0.0;
  if (r.true_size < 0 || r.true_size > r.p) {
    throw DataError("generate: true-model size " +
                    std::to_string(r.true_size) + " must lie in [0, p]");
  }
  if (!(r.beta_min <= r.beta_max)) {
    throw DataError("generate: coefficient range is empty");
  }
  return r;
}

}  // namespace

std::pair<DataSet, SimTruth> generate(const SimSpec& spec) {
  return generate(spec, kDataStreamBase);
}

std::pair<DataSet, SimTruth> generate(const SimSpec& spec,
                                      std::uint64_t stream_id) {
  const ResolvedSpec r = resolve(spec);
  RngStream rng(spec.seed, stream_id);

  std::optional<double> drawn_rho;
  double sigma_rho;
  if (r.sigma_rho) {
    sigma_rho = *r.sigma_rho;
  } else {
    drawn_rho = rng.uniform_range(0.2, 0.8);
    sigma_rho = *drawn_rho;
  }
  SpdMatrix sigma_y = ar1_cov(r.q, sigma_rho);

  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(r.p, r.q);
  for (Eigen::Index i = 0; i < r.true_size; ++i) {
    for (Eigen::Index j = 0; j < r.q; ++j) {
      beta(i, j) = rng.uniform_range(r.beta_min, r.beta_max);
    }
  }

  Eigen::MatrixXd x(r.n, r.p);
  if (r.x_rho == 0.0) {
    for (Eigen::Index m = 0; m < r.n; ++m) {
      for (Eigen::Index i = 0; i < r.p; ++i) {
        x(m, i) = rng.normal();
      }
    }
  } else {
    // Row-wise AR(1): X_1 = z_1, X_j = rho X_{j-1} + sqrt(1-rho^2) z_j gives
    // cov(X_k, X_j) = rho^|j-k| with unit marginals.
    const double innov = std::sqrt(1.0 - r.x_rho * r.x_rho);
    for (Eigen::Index m = 0; m < r.n; ++m) {
      x(m, 0) = rng.normal();
      for (Eigen::Index i = 1; i < r.p; ++i) {
        x(m, i) = r.x_rho * x(m, i - 1) + innov * rng.normal();
      }
    }
  }

  const Eigen::MatrixXd& chol = sigma_y.cholesky();
  Eigen::MatrixXd y = x * beta;
  Eigen::VectorXd z(r.q);
  for (Eigen::Index m = 0; m < r.n; ++m) {
    for (Eigen::Index j = 0; j < r.q; ++j) {
      z(j) = rng.normal();
    }
    y.row(m) += (chol * z).transpose();
  }

  std::vector<Eigen::Index> true_model(static_cast<std::size_t>(r.true_size));
  std::iota(true_model.begin(), true_model.end(), Eigen::Index{0});

  DataSet data{std::move(x), std::move(y), {}, {}};
  data.validate();
  SimTruth truth{std::move(true_model), std::move(beta), std::move(sigma_y),
                 drawn_rho};
  return {std::move(data), std::move(truth)};
}

}  // namespace bmvs
