#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace qclock {

// Philox4x32-10 counter-based generator. A (counter, key) pair maps to four
// 32-bit words through ten rounds of multiply-hi/lo mixing; distinct counters
// give independent outputs, so random access by draw index is O(1) and batch
// generation parallelizes with no shared state.
//
// Constants and round structure follow the original published definition;
// the unit tests pin the reference test vectors (zero, all-ones, and the
// pi-digits couple).
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr void round(Counter& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  static constexpr Counter block(Counter c, Key k) {
    round(c, k);
    for (int i = 0; i < 9; ++i) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
      round(c, k);
    }
    return c;
  }
};

// Stateless draw access used by the sampler: draw i of stream `stream` under
// `seed`. Each counter block yields two 64-bit words; consecutive draw
// indices share a block, so i >> 1 selects the block and i & 1 the half.
inline std::uint64_t philox_u64_at(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t i) {
  const std::uint64_t b = i >> 1;
  const Philox4x32::Counter ctr = {
      std::uint32_t(b), std::uint32_t(b >> 32),
      std::uint32_t(stream), std::uint32_t(stream >> 32)};
  const Philox4x32::Key key = {std::uint32_t(seed), std::uint32_t(seed >> 32)};
  const Philox4x32::Counter out = Philox4x32::block(ctr, key);
  const unsigned p = unsigned(i & 1) * 2;
  return (std::uint64_t(out[p + 1]) << 32) | out[p];
}

// Uniform on the open interval (0, 1): the top 53 bits offset by half an ulp,
// so 0 and 1 are unreachable and -log1p(-u) below is always finite.
inline double philox_uniform_at(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t i) {
  return (double(philox_u64_at(seed, stream, i) >> 11) + 0.5) * 0x1.0p-53;
}

// Unit-rate exponential draw.
inline double philox_exponential_at(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t i) {
  return -std::log1p(-philox_uniform_at(seed, stream, i));
}

// Unbiased-enough index for bootstrap resampling: multiply-shift maps the
// full 64-bit word onto [0, n). Bias is < n / 2^64, irrelevant at n ~ 1e5.
inline std::size_t philox_index_at(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t i, std::size_t n) {
  return std::size_t((static_cast<unsigned __int128>(philox_u64_at(seed, stream, i)) *
                      n) >>
                     64);
}

inline constexpr const char* kGeneratorId = "philox4x32-10/v1";

}  // namespace qclock
