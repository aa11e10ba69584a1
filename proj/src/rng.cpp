#include "lproj/rng.hpp"

#include <cmath>
#include <numbers>

namespace lproj {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  key1_ = mix64(seed + kGolden) ^ mix64(stream_id + 0xd1b54a32d192ed03ULL);
  key2_ = mix64(key1_ + kGolden);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t z = counter_++ * kGolden + key1_;
  return mix64(mix64(z) ^ key2_);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  // rejection to remove modulo bias
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

RngStream derive_stream(std::uint64_t root_seed, std::uint64_t repetition,
                        std::uint64_t purpose) {
  const std::uint64_t stream_id = mix64(mix64(repetition + kGolden) ^ (purpose * kGolden + 1));
  return RngStream(root_seed, stream_id);
}

}  // namespace lproj
