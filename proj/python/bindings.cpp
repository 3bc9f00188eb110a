// Python bindings; structured results cross the boundary as JSON text.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weilrep/cyclic.hpp"
#include "weilrep/io.hpp"

namespace py = pybind11;
using namespace weilrep;

namespace {

struct Form {
  FormPtr D;
};

Form make_form(const std::string& symbol_or_path) { return {load_form(symbol_or_path)}; }
Form form_from_text(const std::string& json) { return {form_from_json(Json::parse(json))}; }

}  // namespace

PYBIND11_MODULE(_weilrep, m) {
  m.doc() = "Exact Weil representations of finite quadratic modules";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<Form>(m, "Form")
      .def(py::init(&make_form), py::arg("symbol"))
      .def_static("from_json", &form_from_text, py::arg("text"))
      .def_property_readonly("order", [](const Form& f) { return f.D->size(); })
      .def_property_readonly("level", [](const Form& f) { return f.D->level(); })
      .def_property_readonly("exponent", [](const Form& f) { return f.D->exponent(); })
      .def_property_readonly("signature", [](const Form& f) { return f.D->signature(); })
      .def("q", [](const Form& f, const std::vector<long>& x) { return to_string(f.D->q(f.D->index(x))); })
      .def("to_json", [](const Form& f) { return dump(form_to_json(*f.D)); })
      .def("__repr__", [](const Form& f) { return "<Form " + f.D->summary() + ">"; });

  m.def("info_json", [](const Form& f) { return dump(form_info(f.D)); });
  m.def(
      "rep_json", [](const Form& f, const std::string& word) { return dump(to_json(rho_word(f.D, MpWord::parse(word)))); },
      py::arg("form"), py::arg("word"));
  m.def(
      "basis_json",
      [](const Form& f, bool verify, int words) {
        py::gil_scoped_release unlocked;
        auto B = integral_basis(f.D);
        Json j = basis_to_json(B);
        if (verify) j["integrality"] = to_json(verify_integrality(B, words));
        return dump(j);
      },
      py::arg("form"), py::arg("verify") = false, py::arg("words") = 50);
  m.def(
      "invariants_json",
      [](const Form& f, const std::string& method, bool with_basis) {
        py::gil_scoped_release unlocked;
        return dump(to_json(invariant_report(f.D, parse_method(method)), with_basis));
      },
      py::arg("form"), py::arg("method") = "all", py::arg("with_basis") = false);
  m.def(
      "decompose_json",
      [](const Form& f) {
        py::gil_scoped_release unlocked;
        return dump(to_json(cyclic_decomposition(f.D)));
      },
      py::arg("form"));
}
