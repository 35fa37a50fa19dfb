#include "core/rng.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace levylab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  // Decorrelate nearby (seed, stream) pairs before seeding the engine.
  std::uint64_t s = seed ^ 0x6a09e667f3bcc909ULL;
  const std::uint64_t a = splitmix64(s);
  s ^= stream_id * 0x9e3779b97f4a7c15ULL;
  const std::uint64_t b = splitmix64(s);
  const std::uint64_t c = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), gen_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
  // 53-bit mantissa, offset by half an ulp so 0 and 1 are never returned.
  return (static_cast<double>(gen_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = 2.0 * M_PI * uniform();
  cached_normal_ = r * std::sin(t);
  has_cached_normal_ = true;
  return r * std::cos(t);
}

double RngStream::exponential() { return -std::log(uniform()); }

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw ArgumentError("poisson: mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean > 1e7) throw ArgumentError("poisson: mean too large");
  std::uint64_t total = 0;
  // Knuth's multiplicative method on chunks small enough that exp() does
  // not underflow; a sum of independent Poissons is Poisson.
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = remaining > 30.0 ? 30.0 : remaining;
    remaining -= chunk;
    const double limit = std::exp(-chunk);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

}  // namespace levylab
