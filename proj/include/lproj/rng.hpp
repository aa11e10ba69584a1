#pragma once

#include <cstdint>

namespace lproj {

// Counter-based random stream: output i is a splitmix64-style hash of a
// keyed counter, so streams never share state and need no jump-ahead.
// Identical (seed, stream_id) reproduces the identical sequence;
// repetitions and purposes map to disjoint streams via derive_stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();                        // [0, 1)
  double normal();                         // standard normal (Box-Muller)
  std::uint64_t uniform_int(std::uint64_t n);  // unbiased draw from {0,...,n-1}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t key1_ = 0;
  std::uint64_t key2_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministic map (root_seed, repetition, purpose) -> stream. Monte Carlo
// repetitions derive their own streams so results do not depend on
// scheduling order.
RngStream derive_stream(std::uint64_t root_seed, std::uint64_t repetition,
                        std::uint64_t purpose);

}  // namespace lproj
