#include <filesystem>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helio2d/io.hpp"
#include "helio2d/specfun.hpp"
#include "helio2d/threads.hpp"

namespace py = pybind11;
using namespace helio2d;

namespace {

Eigen::ArrayX2d curve_points(const ClosedCurve& c, int n) {
  Eigen::ArrayX2d pos;
  c.eval_grid(std::max(n, c.n_modes()), 0.0, &pos, nullptr);
  return pos;
}

py::tuple far_field_of(const ClosedCurve& curve, double k, double dx, double dy,
                       int m, int n, const std::string& path,
                       const std::string& solver) {
  if (n <= 0) n = synthesis_quadrature_n(k, curve.perimeter());
  n = std::max(n, curve.n_modes());
  auto boundary = std::make_shared<DiscretizedBoundary>(sample(curve, n));
  ForwardOptions opts;
  if (solver == "dense") opts.backend = SolverBackend::Dense;
  if (solver == "hodlr") opts.backend = SolverBackend::Hodlr;
  ForwardSolver fs(boundary, k, opts);
  Eigen::Vector2d d(dx, dy);
  d.normalize();
  FarFieldData ff =
      far_field((path == "green") ? fs.solve_green(IncidentWave(k, d))
                                  : fs.solve_cfie(IncidentWave(k, d)),
                measurement_angles(m));
  return py::make_tuple(ff.angles, ff.values);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "2D sound-soft scattering: forward solves and band-limited "
            "Gauss-Newton shape reconstruction";
  m.attr("__version__") = kVersion;

  py::class_<ClosedCurve>(m, "Curve")
      .def_static(
          "circle",
          [](double radius, double cx, double cy, int n_modes) {
            return ClosedCurve::circle(radius, Eigen::Vector2d(cx, cy),
                                       n_modes);
          },
          py::arg("radius"), py::arg("cx") = 0.0, py::arg("cy") = 0.0,
          py::arg("n_modes") = 8)
      .def_static("star", &ClosedCurve::star, py::arg("base"), py::arg("amp"),
                  py::arg("lobes"), py::arg("n_modes") = 64)
      .def_static("load", &load_curve)
      .def("save", &save_curve)
      .def_property_readonly("n_modes", &ClosedCurve::n_modes)
      .def("perimeter", &ClosedCurve::perimeter, py::arg("oversample") = 0)
      .def("signed_area", &ClosedCurve::signed_area, py::arg("oversample") = 0)
      .def("points", &curve_points, py::arg("n") = 512)
      .def("coeffs_x", &ClosedCurve::coeffs_x)
      .def("coeffs_y", &ClosedCurve::coeffs_y);

  m.def("is_simple", &is_simple, py::arg("curve"), py::arg("ns") = 4096);
  m.def("hausdorff", &hausdorff, py::arg("a"), py::arg("b"),
        py::arg("ns") = 2048);
  m.def("filter_resample", &filter_resample, py::arg("curve"), py::arg("b"),
        py::arg("nb"), py::arg("n"));
  m.def(
      "perturb",
      [](const ClosedCurve& curve, const std::vector<double>& p_coeffs,
         double scale) {
        Eigen::VectorXd p =
            Eigen::Map<const Eigen::VectorXd>(p_coeffs.data(), p_coeffs.size());
        return perturb(curve, p, scale);
      },
      py::arg("curve"), py::arg("p_coeffs"), py::arg("scale") = 1.0);
  m.def("measurement_angles", &measurement_angles);
  m.def("far_field", &far_field_of, py::arg("curve"), py::arg("k"),
        py::arg("dx") = 1.0, py::arg("dy") = 0.0, py::arg("m") = 32,
        py::arg("n") = 0, py::arg("path") = "cfie", py::arg("solver") = "auto",
        "far-field pattern of a plane-wave scattering solve");
  m.def(
      "add_noise",
      [](const std::vector<std::complex<double>>& values, double delta,
         std::uint64_t seed) {
        Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(
            values.data(), values.size());
        return add_noise(v, delta, seed);
      },
      py::arg("values"), py::arg("delta"), py::arg("seed"));
  m.def(
      "bessel_j0j1y0y1",
      [](double x) {
        auto b = specfun::bessel_j0j1y0y1(x);
        return py::make_tuple(b.j0, b.j1, b.y0, b.y1);
      },
      py::arg("x"));
  m.def("set_thread_count", &set_thread_count);
  m.def(
      "synthesize_dataset",
      [](const ClosedCurve& truth, const std::string& config_file, double delta,
         std::uint64_t seed, const std::string& outdir) {
        RlaConfig config = load_config(config_file);
        Dataset ds = synthesize(truth, config, NoiseModel{delta, seed});
        save_dataset(ds, outdir);
        return static_cast<int>(ds.records.size());
      },
      py::arg("truth"), py::arg("config_file"), py::arg("delta"),
      py::arg("seed"), py::arg("outdir"));
  m.def(
      "invert_dataset",
      [](const std::string& data_dir, const std::string& config_file,
         const std::string& outdir) {
        RlaConfig config = load_config(config_file);
        Dataset data = load_dataset(data_dir);
        ClosedCurve initial = config.initial_curve.empty()
                                  ? ClosedCurve::circle(1.0)
                                  : load_curve(config.initial_curve);
        RlaState state = run_rla(config, data, initial);
        if (state.failed) throw std::runtime_error(state.failure);
        std::filesystem::create_directories(outdir);
        save_curve(state.current, outdir + "/final_curve.json");
        return state.iteration_counts();
      },
      py::arg("data_dir"), py::arg("config_file"), py::arg("outdir"));
}
