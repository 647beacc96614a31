#pragma once

#include <cstdint>
#include <vector>

#include "bcv/manifold.hpp"

namespace bcv {

// splitmix64; fixed seed makes every run byte-for-byte reproducible
class SampleRng {
 public:
  explicit SampleRng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

constexpr uint64_t kDefaultSeed = 0xB1C0;
constexpr int kDefaultPoints = 16;
constexpr double kDomainMargin = 0.1;  // fraction shaved off each interval end

// points plus the seed that produced them, so reports can cite it
struct SampleSet {
  std::vector<Point> points;
  uint64_t seed = kDefaultSeed;
};

inline std::vector<Point> sample_points(const ManifoldSpec& spec, int count, uint64_t seed) {
  for (std::size_t i = 0; i < spec.domain.size(); ++i)
    if (!(spec.domain[i].lo < spec.domain[i].hi))
      throw error(errc::empty_domain,
                  "coordinate '" + spec.coords[i] + "' has an empty interval");
  SampleRng rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point x(spec.domain.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double lo = spec.domain[i].lo, hi = spec.domain[i].hi;
      double w = hi - lo;
      x[i] = lo + w * (kDomainMargin + (1.0 - 2.0 * kDomainMargin) * rng.next_unit());
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

inline SampleSet make_samples(const ManifoldSpec& spec, int count = kDefaultPoints,
                              uint64_t seed = kDefaultSeed) {
  return {sample_points(spec, count, seed), seed};
}

}  // namespace bcv
