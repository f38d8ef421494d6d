#include "bmvs/hyperparams.hpp"

#include <cmath>
#include <string>

#include "bmvs/errors.hpp"

namespace bmvs {

void HyperParams::validate(Eigen::Index q) const {
  if (!(tau0_sq > 0.0) || !(tau1_sq > 0.0)) {
    throw DataError("HyperParams: tau0_sq and tau1_sq must be positive");
  }
  if (!(tau0_sq < tau1_sq)) {
    throw DataError("HyperParams: tau0_sq must be smaller than tau1_sq");
  }
  if (!(phi > 0.0) || !(phi < 1.0)) {
    throw DataError("HyperParams: phi must lie in (0,1), got " +
                    std::to_string(phi));
  }
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw DataError("HyperParams: alpha1 and alpha2 must be positive");
  }
  if (!(nu > static_cast<double>(q - 1))) {
    throw DataError("HyperParams: nu = " + std::to_string(nu) +
                    " must exceed q - 1 = " + std::to_string(q - 1));
  }
  if (lambda.dim() != q) {
    throw DataError("HyperParams: lambda is " + std::to_string(lambda.dim()) +
                    "-dimensional but q = " + std::to_string(q));
  }
}

HyperParams HyperParams::defaults(const DataSet& data) {
  data.validate();
  auto [tau0_sq, tau1_sq] = compute_tau(data);
  HyperParams hp{
      .tau0_sq = tau0_sq,
      .tau1_sq = tau1_sq,
      .phi = calibrate_phi(data.p(), static_cast<double>(data.n())),
      .nu = static_cast<double>(data.q() + 1),
      .lambda = SpdMatrix::identity(data.q()),
  };
  hp.validate(data.q());
  return hp;
}

std::pair<double, double> compute_tau(const DataSet& data) {
  data.validate();
  const auto n = static_cast<double>(data.n());
  const double pq = static_cast<double>(data.p()) * data.q();
  double sbar = 0.0;
  for (Eigen::Index k = 0; k < data.q(); ++k) {
    const double mean = data.y.col(k).mean();
    const double var =
        (data.y.col(k).array() - mean).square().sum() / (n - 1.0);
    if (!(var > 0.0)) {
      throw DataError("compute_tau: Y column " + std::to_string(k + 1) +
                      " has zero sample variance");
    }
    sbar += var;
  }
  sbar /= static_cast<double>(data.q());
  const double tau0_sq = sbar / (10.0 * n);
  const double tau1_sq =
      sbar * std::max(std::pow(pq, 2.1) / (100.0 * n), std::log(n));
  return {tau0_sq, tau1_sq};
}

namespace {

// P(X >= m) for X ~ Binomial(p, phi), summing pmf terms in log space.
double binomial_tail(std::int64_t p, double phi, std::int64_t m) {
  if (m <= 0) return 1.0;
  if (m > p) return 0.0;
  if (phi <= 0.0) return 0.0;
  if (phi >= 1.0) return 1.0;
  const double log_phi = std::log(phi);
  const double log_1mp = std::log1p(-phi);
  const double lg_p1 = std::lgamma(static_cast<double>(p) + 1.0);
  double tail = 0.0;
  for (std::int64_t k = m; k <= p; ++k) {
    const double log_pmf = lg_p1 - std::lgamma(static_cast<double>(k) + 1.0) -
                           std::lgamma(static_cast<double>(p - k) + 1.0) +
                           static_cast<double>(k) * log_phi +
                           static_cast<double>(p - k) * log_1mp;
    tail += std::exp(log_pmf);
  }
  return tail < 1.0 ? tail : 1.0;
}

}  // namespace

double calibrate_phi(std::int64_t p, double n) {
  constexpr double kTarget = 0.1;
  constexpr double kTol = 1e-10;
  if (!(n > 1.0)) {
    throw DataError("calibrate_phi: n must exceed 1, got " +
                    std::to_string(n));
  }
  const double k = std::log(n);
  if (static_cast<double>(p) <= k) {
    throw DataError("calibrate_phi: p = " + std::to_string(p) +
                    " must exceed log n = " + std::to_string(k));
  }
  const auto m = static_cast<std::int64_t>(std::floor(k)) + 1;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double tail = binomial_tail(p, mid, m);
    if (std::abs(tail - kTarget) <= kTol) {
      return mid;
    }
    if (tail > kTarget) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw NumericError("calibrate_phi: bisection failed to reach tolerance");
}

}  // namespace bmvs
