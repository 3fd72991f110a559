#pragma once

#include <cassert>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace certreg {

/// Counter-based pseudorandom stream (splitmix64 finalizer).
///
/// All randomness in this project flows from a single user seed through named
/// substreams (see substream() below) so that partitions, block mappings and
/// experiment splits are bit-reproducible across platforms and compilers.
/// std::uniform_*_distribution is deliberately avoided: its output is
/// implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased integer in [0, bound) via rejection sampling.
  std::uint64_t next_below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t rem = (~bound + 1) % bound;  // 2^64 mod bound
    std::uint64_t r = next();
    while (r < rem) r = next();
    return r % bound;
  }

  /// Double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Integer in [lo, hi], both inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_below(span));
  }

  bool next_bool() { return (next() & 1) != 0; }

  /// Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace detail

/// Derives the seed of a named substream. Streams with different tags or
/// indices are independent for practical purposes.
inline std::uint64_t substream(std::uint64_t seed, std::string_view tag,
                               std::uint64_t index = 0) {
  SplitMix64 mix(seed ^ detail::fnv1a(tag) ^
                 (index * 0x9e3779b97f4a7c15ULL));
  return mix.next();
}

}  // namespace certreg
