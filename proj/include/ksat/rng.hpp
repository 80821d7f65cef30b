#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace ksat {

// Deterministic counter-based random stream (Philox4x32-10).
//
// A stream is identified by a 64-bit key. Child streams are derived with
// split(label); the key of a child depends only on the parent key and the
// label, so any task can rebuild its stream from (seed, labels) without
// coordinating with other tasks. Two streams with the same key produce the
// same sequence. Satisfies UniformRandomBitGenerator.
class RngStream {
public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  RngStream split(std::uint64_t label) const;
  RngStream split(std::string_view label) const;

  std::uint64_t key() const { return key_; }

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n), n > 0, unbiased.
  std::uint64_t below(std::uint64_t n);
  // +1 or -1 with probability 1/2.
  int sign();

private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key);
  void refill();

  std::uint64_t key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::uint64_t sign_bits_ = 0;
  int sign_left_ = 0;
};

// SplitMix64 finalizer; bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a, used to turn textual labels into stream labels.
constexpr std::uint64_t label_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ksat
