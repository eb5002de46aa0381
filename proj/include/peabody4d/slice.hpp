#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "peabody4d/body.hpp"

namespace peabody4d {

enum class SliceFormat { Off, Ply, Csv };
SliceFormat parse_slice_format(const std::string& name);

// Hyperplane <normal, p> = offset.
struct SliceSpec {
  Vec4 normal = Vec4(0, 0, 0, 1);
  double offset = 0.0;
  int resolution = 32;
  SliceFormat format = SliceFormat::Off;

  void validate() const;
};

// Parses "nx,ny,nz,nw,offset".
SliceSpec parse_hyperplane(const std::string& text);

struct SliceMesh {
  Point4 origin;                   // interior point of the slice
  std::array<Vec4, 3> basis;       // orthonormal, spanning the hyperplane
  std::vector<Point4> points;      // boundary points in R^4
  std::vector<int> active;         // tight ball per point
  std::vector<std::array<int, 3>> triangles;

  // Coordinates of point i in the hyperplane basis, relative to origin.
  std::array<double, 3> local(std::size_t i) const;
};

// Surface of the ball model cut by the hyperplane: rays from a deep point of
// the slice over a UV sphere with `resolution` latitude bands and
// 2 * resolution longitudes. Throws EmptySlice when the hyperplane misses
// the body, InvalidArgument for a bad spec.
SliceMesh slice_body(const BallModel& model, const SliceSpec& spec);

void write_off(std::ostream& os, const SliceMesh& mesh);
void write_ply(std::ostream& os, const SliceMesh& mesh);
// Point cloud with the same columns as the sample export.
void write_slice_csv(std::ostream& os, const BallModel& model, const SliceMesh& mesh);
void write_samples_csv(std::ostream& os, const std::vector<BoundarySample>& samples);

}  // namespace peabody4d
