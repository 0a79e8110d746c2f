#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bellest/bell.hpp"
#include "bellest/estimation.hpp"
#include "bellest/interplay.hpp"
#include "bellest/io.hpp"
#include "bellest/measures.hpp"
#include "bellest/random.hpp"
#include "bellest/scenarios.hpp"

namespace py = pybind11;
using namespace bellest;

namespace {

// 4x4 nested lists <-> Mat4 keeps the binding free of a numpy dependency.
Mat4 mat4_from_list(const std::vector<std::vector<cplx>>& rows) {
  if (rows.size() != 4) throw ParamOutOfRangeError("matrix must have 4 rows");
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    if (rows[i].size() != 4) throw ParamOutOfRangeError("matrix rows must have 4 entries");
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<cplx>> mat4_to_list(const Mat4& m) {
  std::vector<std::vector<cplx>> rows(4, std::vector<cplx>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_bellest, mod) {
  mod.doc() = "alpha-CHSH entanglement estimation core";

  py::register_exception<Error>(mod, "BellestError");

  py::enum_<MeasureKind>(mod, "MeasureKind")
      .value("CONCURRENCE", MeasureKind::Concurrence)
      .value("EOF", MeasureKind::EntanglementOfFormation)
      .value("DISTILLABLE", MeasureKind::OneWayDistillable);

  py::enum_<AssumptionLevel>(mod, "AssumptionLevel")
      .value("QUBIT_PAIR", AssumptionLevel::QubitPair)
      .value("DEVICE_INDEPENDENT", AssumptionLevel::DeviceIndependent);

  py::class_<DensityMatrix>(mod, "DensityMatrix")
      .def(py::init([](const std::vector<std::vector<cplx>>& rows) {
        return DensityMatrix(mat4_from_list(rows));
      }))
      .def_property_readonly("matrix",
                             [](const DensityMatrix& rho) { return mat4_to_list(rho.m); });

  py::class_<BellSpectrum>(mod, "BellSpectrum")
      .def(py::init([](const std::array<double, 4>& l) { return BellSpectrum(l); }))
      .def_property_readonly("lambdas", [](const BellSpectrum& s) { return s.lambda; });

  py::class_<MeasurementQuad>(mod, "MeasurementQuad")
      .def(py::init([](double a0, double a1, double b0, double b1) {
        return MeasurementQuad{a0, a1, b0, b1};
      }))
      .def_readonly("a0", &MeasurementQuad::a0)
      .def_readonly("a1", &MeasurementQuad::a1)
      .def_readonly("b0", &MeasurementQuad::b0)
      .def_readonly("b1", &MeasurementQuad::b1);

  py::class_<BoundResult>(mod, "BoundResult")
      .def_readonly("value", &BoundResult::value)
      .def_property_readonly("extremal_spectrum",
                             [](const BoundResult& r) -> py::object {
                               if (!r.extremal_spectrum) return py::none();
                               return py::cast(r.extremal_spectrum->lambda);
                             })
      .def_property_readonly("extremal_theta", [](const BoundResult& r) -> py::object {
        if (!r.extremal_theta) return py::none();
        return py::cast(*r.extremal_theta);
      });

  py::class_<InterplayPoint>(mod, "InterplayPoint")
      .def_readonly("theta", &InterplayPoint::theta)
      .def_readonly("S", &InterplayPoint::S)
      .def_readonly("e_min", &InterplayPoint::e_min)
      .def_property_readonly("witness",
                             [](const InterplayPoint& p) { return mat4_to_list(p.witness.m); });

  // States and measures
  mod.def("bell_diagonal_state", &bell_diagonal_state);
  mod.def("pure_state", [](double delta) { return scenario_state(ScenarioState::pure(delta)); });
  mod.def("werner_state", [](double p) { return scenario_state(ScenarioState::werner(p)); });
  mod.def("concurrence", &concurrence);
  mod.def("entanglement_of_formation", &entanglement_of_formation);
  mod.def("one_way_distillable", &one_way_distillable);

  // Bell engine
  mod.def("bell_value",
          [](const DensityMatrix& rho, double alpha, const MeasurementQuad& quad) {
            return bell_value(rho, BellScenario(alpha, quad));
          });
  mod.def("canonical_quad", &canonical_quad);
  mod.def("bounds", [](double alpha) {
    const auto b = bounds(alpha);
    return std::pair<double, double>{b.classical, b.quantum};
  });
  mod.def("max_violation_bell_diagonal", &max_violation_bell_diagonal);
  mod.def("max_violation_general", &max_violation_general, py::arg("rho"), py::arg("alpha"),
          py::arg("plane_restricted") = true);
  mod.def("locc_to_bell_diagonal", [](const DensityMatrix& rho) {
    const auto res = locc_to_bell_diagonal(rho);
    return py::make_tuple(res.spec.lambda, res.transcript.rotation_a, res.transcript.rotation_b);
  });

  // Estimation
  mod.def("concurrence_bound", &concurrence_bound);
  mod.def("eof_bound", &eof_bound);
  mod.def("distillable_bound", &distillable_bound);

  // Interplay
  mod.def("min_entanglement_at_theta", &min_entanglement_at_theta, py::arg("S"),
          py::arg("alpha"), py::arg("theta"), py::arg("measure"), py::arg("restarts") = 64,
          py::arg("seed") = 0);
  mod.def("theta_star_concurrence", &theta_star_concurrence);
  mod.def("feasible_theta_range", &feasible_theta_range);

  // Scenarios
  mod.def("optimal_alpha", [](const std::string& kind, double param, double theta2,
                              AssumptionLevel level) {
    const ScenarioState spec = kind == "pure" ? ScenarioState::pure(param)
                                              : ScenarioState::werner(param);
    const auto res = optimal_alpha(spec, theta2, level);
    return std::pair<double, double>{res.alpha_star, res.c_est};
  });
  mod.def("di_werner_threshold", &di_werner_threshold);
  mod.def("semi_di_werner_threshold_max", &semi_di_werner_threshold_max);

  // IO
  mod.def("load_state_file", &load_state_file);
  mod.def("save_state_file", &save_state_file);
}
