#include <confoliation/config.hpp>
#include <confoliation/render.hpp>
#include <confoliation/verify.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace confoliation;

namespace {

std::string verify_json(const std::string &config_json) {
  RunConfig cfg = parse_config(nlohmann::json::parse(config_json));
  const auto fam = assemble_global(cfg.assembly);
  auto rep = run_verification(fam, cfg.seed);
  rep.config_echo = cfg.echo();
  return rep.to_json().dump();
}

std::string slice_svg(const std::string &config_json, const std::string &plane,
                      double value, double t) {
  RunConfig cfg = parse_config(nlohmann::json::parse(config_json));
  const auto fam = assemble_global(cfg.assembly);
  SlicePlane p = plane == "phi"   ? SlicePlane::Phi
                 : plane == "theta" ? SlicePlane::Theta
                                    : SlicePlane::Z;
  return render_slice(fam, p, value, t);
}

double contact_margin_at(const std::string &config_json, const std::string &region,
                         double t, double x0, double x1, double x2) {
  RunConfig cfg = parse_config(nlohmann::json::parse(config_json));
  const auto fam = assemble_global(cfg.assembly);
  return contact_margin(fam.piece(region).at(t), {x0, x1, x2});
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Foliation-to-contact deformation verifier (C++ core)";

  py::class_<ScalarProfile>(m, "ScalarProfile")
      .def("__call__", [](const ScalarProfile &p, double r) { return p(r); })
      .def("derivative", &ScalarProfile::derivative, py::arg("r"), py::arg("order"))
      .def_property_readonly("domain",
                             [](const ScalarProfile &p) { return std::make_pair(p.lo, p.hi); })
      .def_property_readonly("name", [](const ScalarProfile &p) { return p.name; })
      .def("to_json", [](const ScalarProfile &p) { return p.to_json().dump(); });

  m.def("smooth_step", &smooth_step, py::arg("a"), py::arg("b"));
  m.def("make_lambda", &make_lambda, py::arg("r_max"));
  m.def("make_delta", &make_delta, py::arg("eps"), py::arg("r_max"));
  m.def("make_f", &make_f, py::arg("iota"), py::arg("r_max"));

  m.def("verify_json", &verify_json, py::arg("config_json"),
        "Run the full verification for a JSON config; returns the report as JSON.");
  m.def("slice_svg", &slice_svg, py::arg("config_json"), py::arg("plane"), py::arg("value"),
        py::arg("t"), "Render a plane-field slice as an SVG document.");
  m.def("contact_margin", &contact_margin_at, py::arg("config_json"), py::arg("region"),
        py::arg("t"), py::arg("x0"), py::arg("x1"), py::arg("x2"),
        "Contact margin of the assembled family at a chart point.");
}
