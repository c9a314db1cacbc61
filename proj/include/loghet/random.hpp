#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace loghet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seeded generator with platform-independent draws. std::mt19937_64 output
// is fixed by the standard; the standard distributions are not, so bounded
// draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, domain, key), e.g. one per record.
  static Rng stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t key) {
    return Rng(splitmix64(splitmix64(seed ^ splitmix64(domain)) ^ key));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n), n > 0.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stream domains, so the same seed drives unrelated decisions independently.
namespace stream_domain {
inline constexpr std::uint64_t mix = 0x6d6978;
inline constexpr std::uint64_t fuzz = 0x66757a7a;
inline constexpr std::uint64_t combine = 0x636f6d62;
inline constexpr std::uint64_t synthetic = 0x73796e74;
}  // namespace stream_domain

}  // namespace loghet
