#include "tnlab/sampling.hpp"

#include <cmath>

namespace tnlab {

Point4 sample_ball(SeededRng& rng, double radius) {
  for (;;) {
    Point4 x;
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-radius, radius);
    if (dot4(x, x) <= radius * radius) return x;
  }
}

Vec4<double> sample_sphere(SeededRng& rng) {
  for (;;) {
    const Point4 x = sample_ball(rng, 1.0);
    const double n = norm4(x);
    if (n > 1e-3) return vec_scale4(x, 1.0 / n);
  }
}

std::vector<Point4> sample_ball_points(SeededRng& rng, int count, double radius) {
  std::vector<Point4> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(sample_ball(rng, radius));
  return pts;
}

}  // namespace tnlab
