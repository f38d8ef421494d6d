#include "bmvs/gibbs.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "bmvs/distributions.hpp"
#include "bmvs/errors.hpp"
#include "bmvs/rng.hpp"

namespace bmvs {

namespace {

SpdMatrix y_variance_diagonal(const DataSet& data) {
  const auto n = static_cast<double>(data.n());
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(data.q(), data.q());
  for (Eigen::Index k = 0; k < data.q(); ++k) {
    const double mean = data.y.col(k).mean();
    const double var =
        (data.y.col(k).array() - mean).square().sum() / (n - 1.0);
    diag(k, k) = var > 0.0 ? var : 1.0;
  }
  return SpdMatrix(std::move(diag));
}

ChainState make_initial_state(const DataSet& data, const HyperParams& hp,
                              const ChainConfig& cfg, RngStream& rng) {
  const Eigen::Index p = data.p();
  const Eigen::Index q = data.q();
  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(p, q);
  Eigen::VectorXi z = Eigen::VectorXi::Zero(p);
  switch (cfg.init_mode) {
    case InitMode::kZero:
      break;
    case InitMode::kRidge:
      // Marginal unit-penalty ridge per predictor; burn-in absorbs the rest.
      for (Eigen::Index i = 0; i < p; ++i) {
        const double s_i = data.x.col(i).squaredNorm();
        beta.row(i) = data.x.col(i).transpose() * data.y / (s_i + 1.0);
      }
      break;
    case InitMode::kRandom:
      for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < q; ++j) {
          beta(i, j) = 0.1 * rng.normal();
        }
        z(i) = rng.uniform() < hp.phi ? 1 : 0;
      }
      break;
  }
  const double sigma_beta_sq = cfg.fixed_sigma_beta_sq.value_or(1.0);
  SpdMatrix sigma_y =
      cfg.fixed_sigma_y ? *cfg.fixed_sigma_y : y_variance_diagonal(data);
  return ChainState(std::move(beta), std::move(z), sigma_beta_sq,
                    std::move(sigma_y), data.x);
}

void check_fitted_coherence(ChainState& state, const DataSet& data,
                            std::int64_t sweep) {
  const Eigen::MatrixXd exact = data.x * state.beta;
  const double denom = exact.norm();
  const double err = (state.fitted - exact).norm();
  if (err > 1e-8 * std::max(denom, 1.0)) {
    throw NumericError("fitted cache drifted at sweep " +
                       std::to_string(sweep) + ": relative error " +
                       std::to_string(err / std::max(denom, 1e-300)));
  }
  state.fitted = exact;
}

}  // namespace

ChainResult run_chain(const DataSet& data, const HyperParams& hp,
                      const ChainConfig& cfg) {
  data.validate();
  hp.validate(data.q());
  if (cfg.keep_iters < 1) {
    throw DataError("run_chain: keep_iters must be positive");
  }
  if (cfg.burn_in < 0 || cfg.thin < 1) {
    throw DataError("run_chain: burn_in must be >= 0 and thin >= 1");
  }
  if (cfg.fixed_sigma_y && cfg.fixed_sigma_y->dim() != data.q()) {
    throw DataError("run_chain: fixed_sigma_y dimension does not match q");
  }

  std::vector<std::string> warnings;
  if (cfg.keep_iters / cfg.thin < 100) {
    warnings.push_back(
        "run_chain: fewer than 100 retained draws; estimates will be noisy");
  }

  const Eigen::Index p = data.p();
  const Eigen::Index q = data.q();
  RngStream rng(cfg.seed, cfg.stream_id);
  ChainState state = make_initial_state(data, hp, cfg, rng);

  Eigen::VectorXd z_sum = Eigen::VectorXd::Zero(p);
  Eigen::MatrixXd beta_sum = Eigen::MatrixXd::Zero(p, q);
  Eigen::MatrixXd sigma_y_sum = Eigen::MatrixXd::Zero(q, q);
  double sigma_beta_sq_sum = 0.0;
  std::map<std::uint32_t, std::int64_t> visits;
  const bool track_visits = p <= 20;
  std::vector<std::int32_t> flips;
  const std::int64_t total_sweeps = cfg.burn_in + cfg.keep_iters;
  flips.reserve(static_cast<std::size_t>(total_sweeps));
  std::int64_t kept = 0;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  for (std::int64_t sweep = 0; sweep < total_sweeps; ++sweep) {
    if (cfg.random_scan) {
      for (std::size_t j = order.size(); j > 1; --j) {
        std::swap(order[j - 1], order[rng.uniform_below(j)]);
      }
    }
    std::int32_t sweep_flips = 0;
    for (Eigen::Index idx : order) {
      try {
        MvnParams post = beta_conditional(idx, state, data, hp);
        Eigen::VectorXd draw = sample_mvn(post.mean, post.cov, rng);
        state.fitted.noalias() +=
            data.x.col(idx) *
            (draw.transpose() - state.beta.row(idx));
        state.beta.row(idx) = draw.transpose();
        const double prob = z_conditional(idx, state, hp);
        const int z_new = rng.uniform() < prob ? 1 : 0;
        sweep_flips += z_new != state.z(idx) ? 1 : 0;
        state.z(idx) = z_new;
      } catch (const NumericError& e) {
        throw NumericError("sweep " + std::to_string(sweep) + ", predictor " +
                           std::to_string(idx) + ": " + e.what());
      }
    }
    try {
      if (!cfg.fixed_sigma_beta_sq) {
        InvGammaParams ig = sigma_beta_conditional(state, hp);
        state.sigma_beta_sq = sample_inv_gamma(ig.shape, ig.scale, rng);
      }
      if (!cfg.fixed_sigma_y) {
        InvWishartParams iw = sigma_y_conditional(state, data, hp);
        state.set_sigma_y(sample_inv_wishart(iw.df, iw.scale, rng));
      }
    } catch (const NumericError& e) {
      throw NumericError("sweep " + std::to_string(sweep) +
                         ", variance update: " + e.what());
    }
    flips.push_back(sweep_flips);

    if ((sweep + 1) % 100 == 0 || sweep + 1 == total_sweeps) {
      check_fitted_coherence(state, data, sweep);
    }

    if (sweep >= cfg.burn_in && (sweep - cfg.burn_in) % cfg.thin == 0) {
      ++kept;
      z_sum += state.z.cast<double>();
      beta_sum += state.beta;
      sigma_y_sum += state.sigma_y.matrix();
      sigma_beta_sq_sum += state.sigma_beta_sq;
      if (track_visits) {
        std::uint32_t mask = 0;
        for (Eigen::Index i = 0; i < p; ++i) {
          mask |= static_cast<std::uint32_t>(state.z(i)) << i;
        }
        ++visits[mask];
      }
    }
  }

  const auto denom = static_cast<double>(kept);
  Eigen::MatrixXd sigma_y_mean = sigma_y_sum / denom;
  return ChainResult{
      .inclusion_prob = z_sum / denom,
      .beta_mean = beta_sum / denom,
      .sigma_y_mean = SpdMatrix((sigma_y_mean + sigma_y_mean.transpose()) *
                                0.5),
      .sigma_beta_sq_mean = sigma_beta_sq_sum / denom,
      .model_visit_counts = std::move(visits),
      .z_flip_counts = std::move(flips),
      .kept_draws = kept,
      .warnings = std::move(warnings),
  };
}

}  // namespace bmvs
