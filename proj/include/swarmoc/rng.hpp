#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace swarmoc {

/// SplitMix64 generator (Steele, Lea, Flood; the java.util.SplittableRandom
/// mixer). Chosen for portability: the whole state is one u64, advancing by
/// the golden-ratio increment, so identical seeds give identical streams on
/// every platform and language.
///
/// Stream splitting: sub-streams are derived from (seed, purpose, index) by
/// two rounds of the finalizer, one per tag. Each particle index gets its own
/// sub-stream so initial data is reproducible independent of N-loop order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; never zero, safe for log().
  double next_uniform_open() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// One Box-Muller pair: a fixed two-draw transform of uniforms, with no
  /// data-dependent rejection, so the draw count per vector is constant.
  std::pair<double, double> next_gaussian_pair() {
    const double u1 = next_uniform_open();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Sub-stream purposes; keeps position draws, tangent draws and frequency
/// draws disjoint under a single user seed.
enum class StreamPurpose : std::uint64_t {
  sphere_points = 0,
  tangent_vectors = 1,
  natural_frequencies = 2,
  coordinate_subsample = 3,
  generic = 4,
};

/// Sub-stream for (seed, purpose, index): state = mix(mix(seed ^ g*(purpose+1)) ^ g*(index+1))
/// with g the golden-ratio increment.
inline SplitMix64 substream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
  constexpr std::uint64_t g = 0x9E3779B97F4A7C15ull;
  std::uint64_t s = SplitMix64::mix(seed ^ (g * (static_cast<std::uint64_t>(purpose) + 1)));
  s = SplitMix64::mix(s ^ (g * (index + 1)));
  return SplitMix64(s);
}

}  // namespace swarmoc
