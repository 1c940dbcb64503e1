/**
 * @file rng.hpp
 * @brief Counter-based random streams keyed by (master seed, trial, stream).
 *
 * Each stream is a SplitMix64 sequence whose starting point is a hash of its
 * key, so the numbers a trial sees never depend on which worker runs it or in
 * what order trials are scheduled.
 */
#pragma once

#include <cstdint>
#include <limits>

#include "relaylab/linalg.hpp"

namespace relaylab {

/// Named sub-streams so that adding a draw in one place never shifts another.
enum class StreamId : std::uint64_t {
  generic = 0,
  estimate_rx = 1,
  error_rx = 2,
  estimate_tx = 3,
  error_tx = 4,
  symbols = 5,
  relay_noise = 6,
  destination_noise = 7,
  training_noise = 8,
  channel = 9,
  snapshot = 10,
  angles_rx = 11,
  angles_tx = 12,
  competitor = 13,
};

class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t master_seed, std::uint64_t trial, StreamId stream);
  Rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1).
  double uniform();
  /// Circularly-symmetric complex Gaussian with zero mean and unit variance.
  cplx complex_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Child master seed for an independent family of streams (e.g. one repeat
/// of an experiment).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Matrix of i.i.d. CN(0, variance) entries, filled column-major.
CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng,
                      double variance = 1.0);

}  // namespace relaylab
