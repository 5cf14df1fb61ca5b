#pragma once

#include <cstdint>

namespace furthlab {

/// Counter-based splittable RNG. A stream is keyed by (master_seed, stream_id)
/// and draw k is a pure function of (key, k): the splitmix64 output function
/// evaluated at position k of the sequence seeded with the key. Streams are
/// independent of evaluation order and of each other, which is what makes
/// parallel path sampling reproducible.
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_(derive_key(master_seed, stream_id)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform in (0, 1].
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; draws two uniforms per pair, caches the
  /// second value.
  double normal();

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27; z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t derive_key(std::uint64_t master, std::uint64_t stream) {
    return mix64(mix64(master ^ 0xA02BDBF7BB3C0A7ull) + stream * kGolden);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace furthlab
