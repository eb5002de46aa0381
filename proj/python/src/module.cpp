#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "peabody4d/body.hpp"
#include "peabody4d/error.hpp"
#include "peabody4d/slice.hpp"
#include "peabody4d/verify.hpp"

namespace py = pybind11;
using namespace peabody4d;

namespace {

py::dict constants_dict(const ModelConstants& c) {
  py::dict d;
  d["a_sq"] = c.a_sq;
  d["x0"] = c.x0;
  d["x1"] = c.x1;
  d["y0"] = c.y0;
  d["z1"] = c.z1;
  d["width"] = c.width;
  d["focus_e"] = c.focus_e;
  d["focus_h"] = c.focus_h;
  d["r_splus_e"] = c.r_splus_e;
  d["r_splus_h"] = c.r_splus_h;
  return d;
}

ModelConstants constants_of(double a_sq) { return a_sq == 1.5 ? compute_model_constants() : constants_for(a_sq); }

// Samples as columns: points (n x 4), piece labels, source names, slack.
py::dict samples_dict(const std::vector<BoundarySample>& samples) {
  Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor> pts(samples.size(), 4);
  std::vector<std::string> piece, source;
  std::vector<double> slack;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    pts.row(i) = samples[i].point.transpose();
    piece.push_back(samples[i].piece >= 0 ? piece_label(samples[i].piece) : "");
    source.emplace_back(sample_source_name(samples[i].source));
    slack.push_back(samples[i].slack);
  }
  py::dict d;
  d["points"] = pts;
  d["piece"] = piece;
  d["source"] = source;
  d["slack"] = slack;
  return d;
}

}  // namespace

PYBIND11_MODULE(_peabody4d, m) {
  m.doc() = "Focal-skeleton body of constant width in R^4.";

  py::register_exception<Error>(m, "PeabodyError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidArgument && e.code() != ErrorCode::UnknownKind) throw;
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("constants", [](double a_sq) { return constants_dict(constants_of(a_sq)); }, py::arg("a_sq") = 1.5);
  m.def("exact_forms", [] {
    py::dict d;
    for (const auto& r : describe_constants(compute_model_constants())) d[py::str(r.symbol)] = r.exact_form;
    return d;
  });

  py::class_<FocalSkeleton>(m, "Skeleton")
      .def(py::init([](double a_sq) { return FocalSkeleton(constants_of(a_sq)); }), py::arg("a_sq") = 1.5)
      .def_property_readonly("constants", [](const FocalSkeleton& s) { return constants_dict(s.constants()); })
      .def_property_readonly("vertices", [](const FocalSkeleton& s) {
        Eigen::Matrix<double, 5, 4, Eigen::RowMajor> v;
        for (int i = 0; i < 5; ++i) v.row(i) = s.simplex().p[i].transpose();
        return v;
      })
      .def("face_labels", [](const FocalSkeleton& s) {
        std::vector<std::string> out;
        for (const auto& f : s.faces()) out.push_back(f.label);
        return out;
      });

  py::class_<BallModel>(m, "BallModel")
      .def(py::init([](const FocalSkeleton& sk, const std::string& grid, double perturbation) {
             return std::make_unique<BallModel>(sk, parse_grid(grid), RadiusLaw{perturbation});
           }),
           py::arg("skeleton"), py::arg("grid") = "64x96", py::arg("perturbation") = 0.0, py::keep_alive<1, 2>())
      .def_property_readonly("width", &BallModel::width)
      .def_property_readonly("ball_count", [](const BallModel& b) { return b.centers().size(); })
      .def_property_readonly("interior_point", &BallModel::interior_point)
      .def("slack", [](const BallModel& b, const Point4& p) { return b.slack(p).slack; }, py::arg("point"))
      .def("ray_cast", [](const BallModel& b, const Vec4& u) { return b.ray_cast(u).point; }, py::arg("direction"))
      .def("sample", [](const BallModel& b, std::size_t n) {
             std::vector<BoundarySample> samples;
             {
               py::gil_scoped_release release;
               samples = sample_theta(b, n);
             }
             return samples_dict(samples);
           },
           py::arg("n"))
      .def("slice", [](const BallModel& b, const Vec4& normal, double offset, int resolution) {
             SliceSpec spec;
             spec.normal = normal;
             spec.offset = offset;
             spec.resolution = resolution;
             const SliceMesh mesh = slice_body(b, spec);
             Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor> v(mesh.points.size(), 3);
             for (std::size_t i = 0; i < mesh.points.size(); ++i) {
               const auto l = mesh.local(i);
               v.row(i) << l[0], l[1], l[2];
             }
             return py::make_tuple(v, mesh.triangles);
           },
           py::arg("normal"), py::arg("offset") = 0.0, py::arg("resolution") = 32);

  m.def("verify", [](const std::string& suite, std::size_t samples, std::uint64_t seed, const std::string& grid) {
          VerifyOptions o;
          o.suite = suite;
          o.samples = samples;
          o.seed = seed;
          o.grid = parse_grid(grid);
          std::string json;
          {
            py::gil_scoped_release release;
            json = run_verification(o).to_json();
          }
          return py::module_::import("json").attr("loads")(json);
        },
        py::arg("suite") = "all", py::arg("samples") = 200000, py::arg("seed") = 1, py::arg("grid") = "64x96");
}
