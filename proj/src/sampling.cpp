#include "peabody4d/sampling.hpp"

#include <cmath>
#include <numbers>

namespace peabody4d {

double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base;
  double scale = inv;
  double out = 0.0;
  while (index > 0) {
    out += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv;
  }
  return out;
}

Vec4 halton_direction(std::uint64_t index) {
  const double u1 = radical_inverse(index, 2);
  const double u2 = radical_inverse(index, 3);
  const double u3 = radical_inverse(index, 5);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const double t2 = 2.0 * std::numbers::pi * u2;
  const double t3 = 2.0 * std::numbers::pi * u3;
  return Vec4(a * std::sin(t2), a * std::cos(t2), b * std::sin(t3), b * std::cos(t3));
}

std::vector<Vec4> halton_directions(std::size_t count, std::uint64_t skip) {
  std::vector<Vec4> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(halton_direction(skip + i));
  return out;
}

Vec4 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec4 v;
  do {
    v = Vec4(normal(rng), normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace peabody4d
