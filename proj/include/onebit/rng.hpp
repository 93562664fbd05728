#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace onebit {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream.
///
/// The i-th raw word (i = 0, 1, ...) of a stream with key k is
/// mix64(k + (i + 1) * 0x9E3779B97F4A7C15), i.e. SplitMix64 addressed by
/// counter. Child streams are keyed by mix64(k ^ mix64(tag)), so streams
/// obtained by splitting on distinct tags never share state and can be
/// created in any order. Only integer arithmetic is involved in the raw
/// words, so they are identical on every platform.
///
/// Continuous variates are built from raw words with fixed formulas
/// (53-bit uniforms, Box-Muller normals, Marsaglia-Tsang gammas).
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key = 0) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Child stream for `tag`. Does not advance this stream.
  [[nodiscard]] Stream split(std::uint64_t tag) const noexcept {
    return Stream(mix64(key_ ^ mix64(tag)));
  }

  /// Successive split over a tuple of tags.
  [[nodiscard]] Stream split(std::initializer_list<std::uint64_t> tags) const noexcept {
    Stream s = *this;
    for (auto t : tags) s = s.split(t);
    return s;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();

  /// Gamma(shape, 1), shape > 0.
  double gamma(double shape);

  /// Chi-square with nu > 0 degrees of freedom.
  double chi_square(double nu) { return 2.0 * gamma(0.5 * nu); }

  /// Student's t with nu > 0 degrees of freedom.
  double student_t(double nu);

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Fixed channel tags used to derive independent dither streams from one seed.
namespace channel {
inline constexpr std::uint64_t kCovariateDither1 = 0x47616d6d61310001ULL;  // Gamma_k1
inline constexpr std::uint64_t kCovariateDither2 = 0x47616d6d61320002ULL;  // Gamma_k2
inline constexpr std::uint64_t kResponseDither = 0x4c616d6264610003ULL;    // Lambda_k
inline constexpr std::uint64_t kCovariates = 0x5844415441000004ULL;
inline constexpr std::uint64_t kNoise = 0x4e4f495345000005ULL;
inline constexpr std::uint64_t kSignal = 0x5349474e41000006ULL;
inline constexpr std::uint64_t kPositions = 0x504f534954000007ULL;
}  // namespace channel

}  // namespace onebit
