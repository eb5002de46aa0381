#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "peabody4d/geometry.hpp"

namespace peabody4d {

double radical_inverse(std::uint64_t index, unsigned base);

// Unit vector on S^3 from the index-th point of the (2, 3, 5) Halton sequence,
// pushed through the uniform quaternion map.
Vec4 halton_direction(std::uint64_t index);
std::vector<Vec4> halton_directions(std::size_t count, std::uint64_t skip = 1);

Vec4 random_direction(std::mt19937_64& rng);

}  // namespace peabody4d
