#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace focklab {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream is
// identified by (seed, stream id); draws within it are addressed by a counter, so
// any chunk of samples can be regenerated independently of the others.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Four 32-bit words for block `index` of this stream.
  std::array<std::uint32_t, 4> block(std::uint64_t index) const {
    std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                     static_cast<std::uint32_t>(stream_),
                                     static_cast<std::uint32_t>(stream_ >> 32)};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static std::array<std::uint32_t, 4> single_round(const std::array<std::uint32_t, 4>& c,
                                                   const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
};

// Sequential reader over one Philox stream producing uniforms and normals.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream) : gen_(seed, stream) {}

  // uniform in (0, 1), 53-bit resolution
  double uniform() {
    std::uint64_t hi = next_word();
    std::uint64_t lo = next_word();
    std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // standard normal pair via Box-Muller
  std::array<double, 2> normal_pair() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint32_t next_word() {
    if (pos_ == 4) {
      buf_ = gen_.block(counter_++);
      pos_ = 0;
    }
    return buf_[static_cast<std::size_t>(pos_++)];
  }

  Philox gen_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  std::uint64_t counter_ = 0;
};

}  // namespace focklab
