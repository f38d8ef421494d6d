#ifndef BMVS_RNG_HPP_
#define BMVS_RNG_HPP_

#include <array>
#include <cstdint>

namespace bmvs {

// Counter-based pseudo-random stream (Philox 4x64, 10 rounds).
//
// The (seed, stream_id) pair forms the Philox key, so every pair selects an
// independent 2^66-byte stream and replaying a pair reproduces the exact
// draw sequence. Streams are single-owner: one chain or replicate per
// stream, never shared across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t stream_id() const { return key_[1]; }

  // Next raw 64-bit word.
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos();
  // Uniform on [lo, hi).
  double uniform_range(double lo, double hi);
  // Unbiased integer on [0, n); n > 0.
  std::uint64_t uniform_below(std::uint64_t n);

  // Standard normal via Box-Muller (two uniforms per call, no cached spare).
  double normal();

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);

  // Chi-squared with (possibly fractional) df > 0.
  double chi_squared(double df);

  // UniformRandomBitGenerator interface, so std::shuffle et al. work.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_{};
  std::array<std::uint64_t, 4> buffer_{};
  int buffer_pos_ = 4;  // empty
};

}  // namespace bmvs

#endif  // BMVS_RNG_HPP_
