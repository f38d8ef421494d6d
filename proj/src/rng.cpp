#include "bmvs/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bmvs {

namespace {

// Philox 4x64 round constants (Salmon et al. 2011); output matches the
// reference Random123 / NumPy implementation bit for bit.
constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::array<std::uint64_t, 4> philox_round(
    const std::array<std::uint64_t, 4>& c, const std::array<std::uint64_t, 2>& k) {
  const unsigned __int128 p0 = static_cast<unsigned __int128>(kMult0) * c[0];
  const unsigned __int128 p1 = static_cast<unsigned __int128>(kMult1) * c[2];
  const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
  const auto lo0 = static_cast<std::uint64_t>(p0);
  const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
  const auto lo1 = static_cast<std::uint64_t>(p1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::array<std::uint64_t, 4> philox_block(
    std::array<std::uint64_t, 4> ctr, std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    ctr = philox_round(ctr, key);
  }
  return ctr;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{seed, stream_id} {}

void RngStream::refill() {
  buffer_ = philox_block(counter_, key_);
  buffer_pos_ = 0;
  // 256-bit counter increment.
  for (int w = 0; w < 4; ++w) {
    if (++counter_[w] != 0) break;
  }
}

std::uint64_t RngStream::next_u64() {
  if (buffer_pos_ == 4) refill();
  return buffer_[buffer_pos_++];
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform_range(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
  // Rejection from the top to avoid modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > limit);
  return x % n;
}

double RngStream::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("gamma: shape must be positive");
  }
  if (shape < 1.0) {
    // Boost to shape+1 and scale back by U^{1/shape}.
    return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::chi_squared(double df) {
  return 2.0 * gamma(0.5 * df);
}

}  // namespace bmvs
