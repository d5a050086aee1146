#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fringescan/cli/run.hpp"
#include "fringescan/hdr/fusion.hpp"
#include "fringescan/hdr/retrieval.hpp"
#include "fringescan/phase/solve.hpp"
#include "fringescan/phase/variance.hpp"
#include "fringescan/stereo/match.hpp"
#include "fringescan/stereo/triangulate.hpp"

namespace py = pybind11;
using namespace fringescan;

namespace {

// numpy (N, H, W) uint8 -> FringeStack
FringeStack stack_from_array(const py::array_t<std::uint8_t>& samples,
                             const std::vector<double>& shifts, double period) {
  auto buf = samples.unchecked<3>();
  FringeStack stack;
  stack.period = period;
  stack.shifts = shifts;
  const int h = static_cast<int>(buf.shape(1)), w = static_cast<int>(buf.shape(2));
  for (py::ssize_t n = 0; n < buf.shape(0); ++n) {
    ImageU8 img(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img.at(x, y) = buf(n, y, x);
    stack.samples.push_back(std::move(img));
  }
  stack.validate();
  return stack;
}

// PhaseMap -> numpy (H, W) float64, invalid = NaN
py::array_t<double> phase_to_array(const PhaseMap& map) {
  py::array_t<double> out({map.height(), map.width()});
  auto buf = out.mutable_unchecked<2>();
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) buf(y, x) = map.values.at(x, y);
  return out;
}

PhaseMap phase_from_array(const py::array_t<double>& values, PhaseKind kind, double period) {
  auto buf = values.unchecked<2>();
  PhaseMap map = PhaseMap::make(static_cast<int>(buf.shape(1)), static_cast<int>(buf.shape(0)),
                                kind, period);
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (!std::isnan(buf(y, x))) map.set(x, y, buf(y, x));
  return map;
}

py::array_t<std::uint8_t> image_to_array(const ImageU8& img) {
  py::array_t<std::uint8_t> out({img.height(), img.width()});
  auto buf = out.mutable_unchecked<2>();
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) buf(y, x) = img.at(x, y);
  return out;
}

AffineCamera camera_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.size() != 2 || rows[0].size() != 4 || rows[1].size() != 4)
    fail(errc::bad_config, "camera needs 2 rows of 4 entries");
  AffineCamera cam;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) cam.p[r][c] = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  cam.validate();
  return cam;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fringe-projection HDR 3D scanning core";

  py::register_exception<error>(m, "FringescanError");

  m.def("wrap_phase", &wrap_phase, py::arg("x"));

  m.def(
      "solve_standard",
      [](const std::vector<double>& samples) {
        auto phi = solve_standard(samples);
        return phi ? py::cast(*phi) : py::none().cast<py::object>();
      },
      py::arg("samples"));

  m.def(
      "solve_generalized",
      [](const std::vector<double>& samples, const std::vector<double>& deltas) {
        auto phi = solve_generalized(samples, ShiftSchedule{deltas});
        return phi ? py::cast(*phi) : py::none().cast<py::object>();
      },
      py::arg("samples"), py::arg("deltas"));

  m.def(
      "solve_pixel",
      [](const std::vector<double>& samples, const std::vector<double>& deltas, double sat_thr) {
        auto phi = solve_pixel(samples, deltas, sat_thr);
        return phi ? py::cast(*phi) : py::none().cast<py::object>();
      },
      py::arg("samples"), py::arg("deltas"), py::arg("sat_thr") = 255.0);

  m.def(
      "build_coefficients",
      [](const std::vector<double>& deltas) {
        CoefficientMatrix cm = build_coefficients(ShiftSchedule{deltas});
        py::array_t<double> out({3, 3});
        auto buf = out.mutable_unchecked<2>();
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) buf(r, c) = cm.c.m[r][c];
        return out;
      },
      py::arg("deltas"));

  m.def(
      "predict_phase_variance",
      [](double sigma, int steps, double frequency, double modulation) {
        return predict_phase_variance(NoiseModel{sigma, steps, frequency, modulation});
      },
      py::arg("sigma"), py::arg("steps"), py::arg("frequency"), py::arg("modulation"));

  m.def(
      "sat_map",
      [](const py::array_t<std::uint8_t>& samples, const std::vector<double>& shifts,
         double period, int sat_thr) {
        FringeStack stack = stack_from_array(samples, shifts, period);
        return image_to_array(sat_map(stack, HdrConfig{sat_thr}));
      },
      py::arg("samples"), py::arg("shifts"), py::arg("period"), py::arg("sat_thr") = 255);

  m.def(
      "gen_phase_shifting",
      [](const py::array_t<std::uint8_t>& samples, const std::vector<double>& shifts,
         double period, int sat_thr) {
        FringeStack stack = stack_from_array(samples, shifts, period);
        HdrConfig config{sat_thr};
        return phase_to_array(gen_phase_shifting(stack, sat_map(stack, config), config));
      },
      py::arg("samples"), py::arg("shifts"), py::arg("period"), py::arg("sat_thr") = 255);

  m.def(
      "naive_phase_shifting",
      [](const py::array_t<std::uint8_t>& samples, const std::vector<double>& shifts,
         double period) {
        return phase_to_array(naive_phase_shifting(stack_from_array(samples, shifts, period)));
      },
      py::arg("samples"), py::arg("shifts"), py::arg("period"));

  m.def(
      "temporal_unwrap",
      [](const std::vector<py::array_t<double>>& wrapped, const std::vector<double>& periods) {
        std::vector<PhaseMap> maps;
        for (std::size_t m = 0; m < wrapped.size(); ++m)
          maps.push_back(phase_from_array(wrapped[m], PhaseKind::wrapped, periods[m]));
        std::vector<py::array_t<double>> out;
        for (const PhaseMap& map : temporal_unwrap(maps, periods)) out.push_back(phase_to_array(map));
        return out;
      },
      py::arg("wrapped"), py::arg("periods"));

  m.def(
      "fuse_phase_maps",
      [](const std::vector<py::array_t<std::uint8_t>>& satcounts,
         const std::vector<int>& sample_counts, const std::vector<double>& periods,
         const std::vector<py::array_t<double>>& wrapped, int sat_thr) {
        std::vector<SaturationMap> counts;
        for (const auto& arr : satcounts) {
          auto buf = arr.unchecked<2>();
          SaturationMap img(static_cast<int>(buf.shape(1)), static_cast<int>(buf.shape(0)));
          for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) img.at(x, y) = buf(y, x);
          counts.push_back(std::move(img));
        }
        std::vector<PhaseMap> maps;
        for (std::size_t m = 0; m < wrapped.size(); ++m)
          maps.push_back(phase_from_array(wrapped[m], PhaseKind::wrapped, periods[m]));
        auto [fused, report] = fuse_phase_maps(counts, sample_counts, periods, maps,
                                               HdrConfig{sat_thr});
        return py::make_tuple(phase_to_array(fused), report.to_kv());
      },
      py::arg("satcounts"), py::arg("sample_counts"), py::arg("periods"), py::arg("wrapped"),
      py::arg("sat_thr") = 255);

  m.def(
      "match_pair",
      [](const py::array_t<double>& left, const py::array_t<double>& right, double max_phase_gap) {
        RectifiedPair pair;
        pair.left = phase_from_array(left, PhaseKind::equivalent, 1.0);
        pair.right = phase_from_array(right, PhaseKind::equivalent, 1.0);
        std::vector<std::tuple<int, int, double>> out;
        for (const Match& m2 : match_pair(pair, MatchParams{max_phase_gap}))
          out.emplace_back(m2.u_left, m2.v, m2.u_right);
        return out;
      },
      py::arg("left"), py::arg("right"), py::arg("max_phase_gap") = kTwoPi);

  m.def(
      "triangulate",
      [](const std::vector<std::tuple<int, int, double>>& matches,
         const std::vector<std::vector<double>>& cam_left,
         const std::vector<std::vector<double>>& cam_right, double residual_bound) {
        MatchList list;
        for (const auto& [u, v, ur] : matches) list.push_back(Match{u, v, ur});
        PointCloud cloud = triangulate(list, camera_from_rows(cam_left), camera_from_rows(cam_right),
                                       TriangulationParams{residual_bound});
        std::vector<std::tuple<double, double, double>> out;
        for (const CloudPoint& p : cloud.points) out.emplace_back(p.x, p.y, p.z);
        return out;
      },
      py::arg("matches"), py::arg("cam_left"), py::arg("cam_right"),
      py::arg("residual_bound") = 0.5);

  m.def(
      "run",
      [](const std::vector<std::string>& args) { return cli::run(args); },
      py::arg("args"), "Invoke the command-line interface in-process");
}
