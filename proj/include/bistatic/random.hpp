#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace bistatic {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic, splittable random stream.
///
/// A stream is identified by (seed, substream path). The seed is the Philox
/// key; the path is folded into the upper 64 counter bits and the lower 64
/// bits count blocks within the stream. Two streams with the same identity
/// produce the same sequence no matter which thread draws from them.
///
/// Satisfies std::uniform_random_bit_generator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0);

  /// Child stream with `index` appended to the path. The parent is unchanged.
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::span<const std::uint64_t> path() const { return path_; }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  void refill();

  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> path_;
  std::uint64_t path_digest_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned available_ = 0;
};

}  // namespace bistatic
