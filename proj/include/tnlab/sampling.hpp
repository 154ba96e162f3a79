#pragma once

// Seeded, portable sampling.  std::mt19937_64 has a fixed algorithm, and the
// uniform mapping below avoids std::uniform_real_distribution (whose output
// is implementation-defined), so published seeds reproduce bit-for-bit.

#include <cstdint>
#include <random>
#include <vector>

#include "tnlab/linalg.hpp"

namespace tnlab {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 eng_;
};

// Uniform in the closed ball |x| <= radius, by rejection from the cube.
Point4 sample_ball(SeededRng& rng, double radius);

// Uniform direction on the Euclidean unit sphere.
Vec4<double> sample_sphere(SeededRng& rng);

std::vector<Point4> sample_ball_points(SeededRng& rng, int count, double radius);

}  // namespace tnlab
