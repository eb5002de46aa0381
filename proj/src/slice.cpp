#include "peabody4d/slice.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "peabody4d/error.hpp"
#include "peabody4d/parallel.hpp"

namespace peabody4d {

namespace {

constexpr double kMinDepth = 1e-7;

Vec4 project(const Vec4& v, const Vec4& n) { return v - n.dot(v) * n; }

std::array<Vec4, 3> plane_basis(const Vec4& n) {
  std::array<Vec4, 3> basis;
  int found = 0;
  bool used[4] = {false, false, false, false};
  while (found < 3) {
    int pick = -1;
    double best = -1.0;
    for (int a = 0; a < 4; ++a) {
      if (used[a]) continue;
      Vec4 v = project(Vec4::Unit(a), n);
      for (int b = 0; b < found; ++b) v -= basis[b].dot(v) * basis[b];
      if (v.norm() > best) {
        best = v.norm();
        pick = a;
      }
    }
    used[pick] = true;
    Vec4 v = project(Vec4::Unit(pick), n);
    for (int b = 0; b < found; ++b) v -= basis[b].dot(v) * basis[b];
    basis[found++] = v.normalized();
  }
  return basis;
}

// Maximizes the (concave) model slack over the hyperplane by projected
// subgradient steps, starting from the projection of the interior point.
Point4 deepest_point(const BallModel& model, const Vec4& n, double offset, double& depth) {
  Point4 q = model.interior_point() - (n.dot(model.interior_point()) - offset) * n;
  Point4 best = q;
  depth = model.slack(q).slack;
  double step = 0.25 * model.width();
  for (int it = 0; it < 2000 && step > 1e-13; ++it) {
    const auto s = model.slack(q);
    if (s.slack > depth) {
      depth = s.slack;
      best = q;
    }
    const Vec4 g = project(model.centers()[s.index].c - q, n);
    const double gn = g.norm();
    if (gn == 0.0) break;
    q += step * g / gn;
    step *= 0.985;
  }
  return best;
}

}  // namespace

SliceFormat parse_slice_format(const std::string& name) {
  if (name == "off") return SliceFormat::Off;
  if (name == "ply") return SliceFormat::Ply;
  if (name == "csv") return SliceFormat::Csv;
  throw Error(ErrorCode::InvalidArgument, "format must be off, ply or csv, got '" + name + "'");
}

void SliceSpec::validate() const {
  if (!normal.allFinite() || !(normal.norm() > 0.0) || !std::isfinite(offset)) {
    throw Error(ErrorCode::InvalidArgument, "hyperplane normal must be nonzero and finite");
  }
  if (resolution < 8) throw Error(ErrorCode::InvalidArgument, "slice resolution must be >= 8");
}

SliceSpec parse_hyperplane(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad hyperplane component '" + item + "'");
    }
  }
  if (v.size() != 5) throw Error(ErrorCode::InvalidArgument, "hyperplane needs nx,ny,nz,nw,offset");
  SliceSpec spec;
  spec.normal = Vec4(v[0], v[1], v[2], v[3]);
  spec.offset = v[4];
  spec.validate();
  return spec;
}

std::array<double, 3> SliceMesh::local(std::size_t i) const {
  const Vec4 d = points[i] - origin;
  return {basis[0].dot(d), basis[1].dot(d), basis[2].dot(d)};
}

SliceMesh slice_body(const BallModel& model, const SliceSpec& spec) {
  spec.validate();
  const double len = spec.normal.norm();
  const Vec4 n = spec.normal / len;
  const double offset = spec.offset / len;
  double depth = 0.0;
  SliceMesh mesh;
  mesh.origin = deepest_point(model, n, offset, depth);
  if (!(depth >= kMinDepth)) {
    throw Error(ErrorCode::EmptySlice, "the hyperplane does not meet the interior of the body");
  }
  mesh.basis = plane_basis(n);

  const int res = spec.resolution;
  const int lon = 2 * res;
  std::vector<Vec4> dirs;
  dirs.push_back(mesh.basis[2]);
  for (int i = 1; i < res; ++i) {
    const double th = std::numbers::pi * i / res;
    for (int j = 0; j < lon; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / lon;
      dirs.push_back(std::sin(th) * (std::cos(ph) * mesh.basis[0] + std::sin(ph) * mesh.basis[1]) +
                     std::cos(th) * mesh.basis[2]);
    }
  }
  dirs.push_back(-mesh.basis[2]);

  mesh.points.resize(dirs.size());
  mesh.active.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) {
    const auto hit = model.ray_cast(mesh.origin, dirs[i]);
    mesh.points[i] = hit.point;
    mesh.active[i] = hit.index;
  });

  const int south = static_cast<int>(dirs.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * lon + (j % lon); };
  for (int j = 0; j < lon; ++j) mesh.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i + 1 < res; ++i) {
    for (int j = 0; j < lon; ++j) {
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
  for (int j = 0; j < lon; ++j) mesh.triangles.push_back({south, ring(res - 1, j + 1), ring(res - 1, j)});
  return mesh;
}

void write_off(std::ostream& os, const SliceMesh& mesh) {
  os << std::setprecision(17);
  os << "OFF\n" << mesh.points.size() << ' ' << mesh.triangles.size() << " 0\n";
  for (std::size_t i = 0; i < mesh.points.size(); ++i) {
    const auto p = mesh.local(i);
    os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  }
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_ply(std::ostream& os, const SliceMesh& mesh) {
  os << std::setprecision(17);
  os << "ply\nformat ascii 1.0\n"
     << "element vertex " << mesh.points.size() << "\n"
     << "property double x\nproperty double y\nproperty double z\n"
     << "element face " << mesh.triangles.size() << "\n"
     << "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t i = 0; i < mesh.points.size(); ++i) {
    const auto p = mesh.local(i);
    os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  }
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_slice_csv(std::ostream& os, const BallModel& model, const SliceMesh& mesh) {
  os << std::setprecision(17) << "x,y,z,w,face,slack\n";
  for (std::size_t i = 0; i < mesh.points.size(); ++i) {
    const Point4& p = mesh.points[i];
    os << p(0) << ',' << p(1) << ',' << p(2) << ',' << p(3) << ','
       << piece_label(piece_of_center(model.centers()[mesh.active[i]])) << ','
       << model.slack(p).slack << '\n';
  }
}

void write_samples_csv(std::ostream& os, const std::vector<BoundarySample>& samples) {
  os << std::setprecision(17) << "x,y,z,w,face,slack\n";
  for (const auto& s : samples) {
    os << s.point(0) << ',' << s.point(1) << ',' << s.point(2) << ',' << s.point(3) << ','
       << piece_label(s.piece) << ',' << s.slack << '\n';
  }
}

}  // namespace peabody4d
