#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torusmirror/config.hpp"
#include "torusmirror/dhym_slag.hpp"
#include "torusmirror/report.hpp"

namespace py = pybind11;
using namespace torusmirror;

namespace {

ComplexTorus make_torus(const RealMatrix& re, const RealMatrix& im) { return ComplexTorus(re, im); }

SectionData affine_section(const IntMatrix& a) { return SectionData::affine(a); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mirror symmetry checks for gerby deformations of complex tori";

  // Messages start with the error kind, e.g. "MirrorUndefined: ...".
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("pfaffian", [](const ComplexMatrix& a) { return pfaffian(a); });
  m.def("phase_mod_pi", [](Complex z) { return phase_mod_pi(z); });

  m.def("gcs_from_complex", [](const RealMatrix& re, const RealMatrix& im) {
    return gcs_from_complex(make_torus(re, im)).m;
  });
  m.def("gcs_from_kahler", [](const RealMatrix& re, const RealMatrix& im) {
    return gcs_from_kahler(make_torus(re, im)).m;
  });
  m.def("mirror", [](const RealMatrix& g) {
    return mirror(GeneralizedComplexStructure(static_cast<int>(g.rows() / 4), g)).m;
  });
  m.def("b_transform", [](const RealMatrix& g, const IntMatrix& tau) {
    return b_transform(GeneralizedComplexStructure(static_cast<int>(g.rows() / 4), g), tau).m;
  });
  m.def("gcs_defects", [](const RealMatrix& g) {
    const GeneralizedComplexStructure s(static_cast<int>(g.rows() / 4), g);
    return py::make_tuple(s.square_defect(), s.pairing_defect());
  });
  m.def("extract_period_matrix", [](const RealMatrix& g) {
    return extract_period_matrix(GeneralizedComplexStructure(static_cast<int>(g.rows() / 4), g));
  });
  m.def("mirror_period", [](const RealMatrix& re, const RealMatrix& im, const IntMatrix& tau) {
    return mirror_period(make_torus(re, im), tau);
  });

  m.def("is_holomorphic", [](const RealMatrix& re, const RealMatrix& im, const IntMatrix& tau, const IntMatrix& a) {
    return is_holomorphic(BundleObject(make_torus(re, im), tau, affine_section(a))).holomorphic;
  });
  m.def("is_fukaya_object", [](const RealMatrix& re, const RealMatrix& im, const IntMatrix& tau, const IntMatrix& a) {
    return is_fukaya_object(GraphLagrangian(affine_section(a), tau, make_torus(re, im))).is_object;
  });
  m.def("dhym_phase", [](const RealMatrix& re, const RealMatrix& im, const IntMatrix& tau, const IntMatrix& a) {
    const auto p = dhym_phase(BundleObject(make_torus(re, im), tau, affine_section(a)));
    return py::make_tuple(p.exists, p.theta);
  });
  m.def("slag_phase", [](const RealMatrix& re, const RealMatrix& im, const IntMatrix& tau, const IntMatrix& a) {
    const auto p = slag_phase(GraphLagrangian(affine_section(a), tau, make_torus(re, im)));
    return py::make_tuple(p.exists, p.theta);
  });
  m.def("verify_zero_connection", [](int n, const IntMatrix& tau, const std::string& epsilon) {
    const auto r = verify_zero_connection(CoverGeometry(n, parse_rational(epsilon)), tau);
    return py::make_tuple(r.pass, r.triples_checked);
  });

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& config_json, const std::string& suite) {
        return to_json(run_suite(parse_config_text(config_json), suite)).dump(2);
      },
      py::arg("config_json"), py::arg("suite") = "all");
  m.def("mirror_summary", [](const std::string& config_json) {
    return mirror_summary(parse_config_text(config_json)).dump(2);
  });
}
