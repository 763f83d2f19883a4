#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace rlab {

/// Philox4x32-10 counter-based generator (Salmon et al.).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  static Key key_of(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }
};

/// Uniform double in [0,1) from the block at counter (a, b) under `seed`.
inline double philox_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const auto out = Philox4x32::apply(
      {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
       static_cast<std::uint32_t>(b >> 32)},
      Philox4x32::key_of(seed));
  const std::uint64_t bits = (std::uint64_t{out[0]} << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential 64-bit engine on a Philox stream; usable with <random> distributions.
class PhiloxEngine {
 public:
  using result_type = std::uint64_t;

  PhiloxEngine(std::uint64_t seed, std::uint64_t stream) : key_(Philox4x32::key_of(seed)), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ == 2) refill();
    return buf_[pos_++];
  }

 private:
  void refill() {
    const auto out = Philox4x32::apply({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                       key_);
    ++block_;
    buf_[0] = (std::uint64_t{out[0]} << 32) | out[1];
    buf_[1] = (std::uint64_t{out[2]} << 32) | out[3];
    pos_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int pos_ = 2;
};

/// Seed from the OS entropy source.
inline std::uint64_t entropy_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

}  // namespace rlab
