#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace rih {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

// SplitMix64. Tiny state, identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return detail::mix64(state_);
  }

  // Uniform on [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); safe to feed to quantile functions.
  double uniform_open() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Counter-style seed derivation: the stream for a given coordinate tuple is a
// pure function of (base, parts), so results never depend on worker count or
// scheduling order.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = detail::mix64(base ^ 0x9e3779b97f4a7c15ull);
  for (std::uint64_t p : parts) {
    h = detail::mix64(h ^ (p + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
  }
  return h;
}

// FNV-1a, for folding string labels into seed derivations.
inline std::uint64_t hash_label(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace rih
