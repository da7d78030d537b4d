#pragma once

#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace vlcnet {

// Counter-based generator (splitmix64 finalizer over a keyed counter).
// Two words of state, so streams are cheap to fork, serialize and replay;
// results are identical across platforms, unlike <random> distributions.
class Rng {
 public:
  Rng() : key_(0), ctr_(0) {}
  explicit Rng(std::uint64_t key) : key_(key), ctr_(0) {}

  // Named sub-stream: same (seed, name) always yields the same stream.
  static Rng stream(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (char c : name) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001b3ull;
    }
    return Rng(mix(seed ^ mix(h)));
  }

  std::uint64_t next_u64() {
    ctr_ += 0x9e3779b97f4a7c15ull;
    return mix(key_ ^ ctr_);
  }

  // in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // in [0, n)
  std::uint64_t uniform_index(std::uint64_t n) {
    // modulo bias is negligible for n << 2^64
    return n ? next_u64() % n : 0;
  }

  // Box-Muller; draws two uniforms per call, no cached spare.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return ctr_; }
  void restore(std::uint64_t key, std::uint64_t ctr) { key_ = key; ctr_ = ctr; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace vlcnet
