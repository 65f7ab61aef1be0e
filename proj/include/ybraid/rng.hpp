#pragma once

// Counter-based random streams. A stream is addressed by (seed, shot, stream
// id) so that shot-level parallelism cannot change results: every shot draws
// from its own deterministic sequence regardless of scheduling order.

#include <cstdint>

namespace ybraid {

namespace detail {
// SplitMix64 finalizer, used as a mixing function over the 256-bit key
// (seed, shot, stream, counter).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace detail

class RngStream {
 public:
  // stream ids (keep stable: changing them changes every sampled artifact)
  static constexpr std::uint64_t kMeasure = 0;
  static constexpr std::uint64_t kNoise = 1;
  static constexpr std::uint64_t kReadout = 2;

  RngStream(std::uint64_t seed, std::uint64_t shot, std::uint64_t stream)
      : base_(detail::mix64(detail::mix64(detail::mix64(seed) ^ shot) ^
                            (stream + 0xd1b54a32d192ed03ull))) {}

  std::uint64_t next_u64() { return detail::mix64(base_ ^ counter_++); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // true with probability p
  bool bernoulli(double p) { return next_double() < p; }

  // uniform integer in [0, m)
  std::uint64_t next_below(std::uint64_t m) { return next_u64() % m; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace ybraid
