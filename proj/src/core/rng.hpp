#pragma once

#include <cstdint>
#include <random>

namespace levylab {

/// Deterministic random stream addressed by (seed, stream_id).
///
/// The same pair reproduces the same draw sequence bit-for-bit, regardless
/// of thread scheduling, because every path owns its stream. Distributions
/// are generated here rather than with std:: distributions, whose output
/// sequences are implementation-defined; mt19937_64 itself is fully
/// specified by the standard.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Standard normal (Box-Muller, pairs cached).
  double normal();

  /// Exponential with unit mean.
  double exponential();

  /// Poisson count with the given mean (exact inversion, chunked so large
  /// means do not underflow).
  std::uint64_t poisson(double mean);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 gen_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace levylab
