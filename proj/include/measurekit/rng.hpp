// Deterministic pseudo-random streams.  The generator identity is part of
// the file-format contract: identical (id, seed, stream index) always
// reproduces the same sequence, and distinct stream indices give
// independently usable substreams.

#pragma once

#include "measurekit/xreal.hpp"

#include <cstdint>
#include <string>

namespace measurekit {

inline constexpr const char* kGeneratorId = "splitmix64-v1";

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index = 0)
      : state_(mix(mix(seed) ^ mix(stream_index ^ 0x9e3779b97f4a7c15ULL))) {}

  static RngStream named(const std::string& generator_id, std::uint64_t seed,
                         std::uint64_t stream_index = 0) {
    if (generator_id != kGeneratorId)
      throw invalid_argument_error("RngStream: unknown generator id '" + generator_id + "'");
    return RngStream(seed, stream_index);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix_value(state_);
  }

  // Uniform in [0, 1) with 53 random bits, as in a double mantissa.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Exact dyadic uniform draw in [0,1): k random bits over 2^k.
  Rat next_dyadic(unsigned bits) {
    if (bits == 0 || bits > 63) throw invalid_argument_error("next_dyadic: bits in [1,63]");
    return Rat(BigInt(next_u64() >> (64 - bits)), BigInt(1) << bits);
  }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    return mix_value(z);
  }
  static std::uint64_t mix_value(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace measurekit
