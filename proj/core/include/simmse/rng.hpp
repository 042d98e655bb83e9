#pragma once

#include <cstdint>
#include <initializer_list>

namespace simmse {

// SplitMix64 step. Statistically strong 64-bit mixer, used both to derive
// stream keys and to expand a key into generator state.
// Reference: Steele, Lea, Flood (2014), "Fast splittable pseudorandom number
// generators".
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna 2019). Small state, fast, passes BigCrush.
// Satisfies std::uniform_random_bit_generator so the standard distributions
// can run on top of it.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept {
    // Expand the 64-bit key through SplitMix64 as the xoshiro authors
    // recommend; an all-zero state is unreachable this way in practice.
    std::uint64_t x = seed;
    for (auto& word : state_) {
      word = splitmix64(x);
      x = word;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Hierarchical stream key. Child keys are derived by mixing a counter into
// the parent state, so the stream for a path (masterSeed, c0, c1, ...)
// depends only on that path: not on evaluation order, not on how many other
// streams exist, not on worker count. Distinct paths give independent
// streams up to the collision resistance of the 64-bit mix.
struct StreamKey {
  std::uint64_t state = 0;

  [[nodiscard]] constexpr StreamKey child(std::uint64_t counter) const noexcept {
    // Two mix rounds decorrelate consecutive counters before chaining.
    return StreamKey{splitmix64(splitmix64(state) ^
                                (counter + 0x9e3779b97f4a7c15ULL))};
  }

  [[nodiscard]] RngStream stream() const noexcept { return RngStream(state); }
};

[[nodiscard]] constexpr StreamKey master_key(std::uint64_t master_seed) noexcept {
  // Domain-separate user seeds from raw chain states.
  return StreamKey{splitmix64(master_seed ^ 0x634d5345u /* "sMSE" */)};
}

// Derive the generator for one path below the master seed.
[[nodiscard]] RngStream derive_stream(std::uint64_t master_seed,
                                      std::initializer_list<std::uint64_t> path);

}  // namespace simmse
