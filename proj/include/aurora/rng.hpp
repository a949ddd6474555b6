#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace aurora::rng {

// splitmix64 finalizer.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix(a ^ mix(b));
}

// FNV-1a, used to hash string tags and frame ids into stream keys.
inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Identifies the sample a draw belongs to; ops derive per-element streams
// from it so that parallel schedules cannot change the output.
struct Key {
  std::uint64_t seed = 0;
  std::uint64_t frame = 0;
};

// Counter-based stream keyed by (seed, frame, tag, element index).
// Same key => same draw sequence, independent of iteration order.
class Stream {
 public:
  Stream(const Key& key, std::uint64_t tag, std::uint64_t index)
      : key_(combine(combine(combine(key.seed, key.frame), tag), index)) {}

  std::uint64_t next_u64() { return combine(key_, counter_++); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; consumes two draws.
  double normal(double mean = 0.0, double sigma = 1.0) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace aurora::rng
