#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "zsup/atlas.hpp"
#include "zsup/clifford.hpp"
#include "zsup/error.hpp"
#include "zsup/expression.hpp"
#include "zsup/grading.hpp"
#include "zsup/json_io.hpp"
#include "zsup/morphism.hpp"
#include "zsup/series.hpp"

namespace py = pybind11;
using namespace zsup;
using zsup::json::Json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<Rational> point_from(const std::vector<std::string>& coords) {
  std::vector<Rational> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(parse_rational(c));
  return out;
}

Degree degree_from(const std::vector<int>& bits) {
  Degree d(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) d.set(i, bits[i]);
  return d;
}

SignTable table_from(const std::vector<std::vector<int>>& rows) { return SignTable(rows); }

py::tuple assignment_tuple(const DegreeAssignment& a) {
  std::vector<std::vector<int>> sigmas;
  for (const auto& s : a.sigmas) sigmas.push_back(s.bits());
  return py::make_tuple(a.rank, sigmas);
}

DegreeAssignment assignment_from(std::size_t rank, const std::vector<std::vector<int>>& sigmas) {
  DegreeAssignment a{rank, {}};
  for (const auto& s : sigmas) a.sigmas.push_back(degree_from(s));
  return a;
}

ColorAlgebraPresentation presentation_or_quaternions(const std::string& text) {
  return text.empty() ? quaternion_clifford_presentation() : json::presentation_from_json(parse(text));
}

std::string morphism_text(const Morphism& m) {
  std::string out;
  for (std::size_t k = 0; k < m.pullbacks().size(); ++k) {
    out += m.coordinate_name(k) + " = " + m.pullbacks()[k].to_string() + "\n";
  }
  return out;
}

// Python-side handle to a shared domain.
struct DomainHandle {
  Domain ptr;
  const DomainSpec& operator*() const { return *ptr; }
};

}  // namespace

PYBIND11_MODULE(_zsup, m) {
  m.doc() = "Z2^n-graded superdomains: series, morphisms, atlases and color algebras";

  py::register_exception<Error>(m, "ZsupError", PyExc_ValueError);

  py::class_<DomainHandle>(m, "Domain")
      .def_static("from_json", [](const std::string& text) { return DomainHandle{json::domain_from_json(parse(text))}; })
      .def("to_json", [](const DomainHandle& d) { return json::to_json(*d).dump(); })
      .def_property_readonly("rank", [](const DomainHandle& d) { return (*d).rank(); })
      .def_property_readonly("base_vars", [](const DomainHandle& d) { return (*d).base_vars(); })
      .def_property_readonly("formal_vars",
                             [](const DomainHandle& d) {
                               std::vector<std::pair<std::string, std::vector<int>>> out;
                               for (const auto& v : (*d).formal_vars()) out.emplace_back(v.name, v.degree.bits());
                               return out;
                             })
      .def_property_readonly("truncation_order", [](const DomainHandle& d) { return (*d).truncation_order(); })
      .def("with_order", [](const DomainHandle& d, std::size_t order) { return DomainHandle{with_order(d.ptr, order)}; })
      .def("__eq__", [](const DomainHandle& a, const DomainHandle& b) { return same_domain(a.ptr, b.ptr); })
      .def("__str__", [](const DomainHandle& d) { return (*d).dimension_string(); });

  py::class_<Series>(m, "Series")
      .def(py::init([](const DomainHandle& d, const std::string& text) { return parse_series(text, d.ptr); }),
           py::arg("domain"), py::arg("text"))
      .def_property_readonly("domain", [](const Series& f) { return DomainHandle{f.domain()}; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def("__eq__", [](const Series& a, const Series& b) { return a == b; })
      .def("__pow__", [](const Series& f, unsigned k) { return f.pow(k); })
      .def("__str__", &Series::to_string)
      .def("__repr__", [](const Series& f) { return "Series('" + f.to_string() + "')"; })
      .def("is_zero", &Series::is_zero)
      .def("invert", [](const Series& f) { return invert(f); })
      .def("truncate", [](const Series& f, std::size_t k) { return truncate(f, k); })
      .def("base_projection", [](const Series& f) { return base_project(f).to_string(f.spec().base_vars(), false); })
      .def("j_adic_valuation", [](const Series& f) { return j_adic_valuation(f); })
      .def("homogeneous_degree",
           [](const Series& f) -> std::optional<std::vector<int>> {
             const auto d = f.homogeneous_degree();
             if (!d) return std::nullopt;
             return d->bits();
           })
      .def("component", [](const Series& f, const std::vector<int>& bits) {
        return homogeneous_component(f, degree_from(bits));
      })
      .def("decompose",
           [](const Series& f) {
             std::vector<std::pair<std::vector<int>, Series>> out;
             for (const auto& deg : enumerate_degrees(f.spec().rank())) {
               Series part = homogeneous_component(f, deg);
               if (!part.is_zero()) out.emplace_back(deg.bits(), std::move(part));
             }
             return out;
           })
      .def("derivative", [](const Series& f, const std::string& var) { return partial_derivative(f, var); })
      .def("to_json", [](const Series& f) { return json::series_to_json(f).dump(); });

  py::class_<Morphism>(m, "Morphism")
      .def_static("from_json", [](const std::string& text) { return json::morphism_from_json(parse(text)); })
      .def_static("identity", [](const DomainHandle& d) { return Morphism::identity(d.ptr); })
      .def_property_readonly("source", [](const Morphism& phi) { return DomainHandle{phi.source()}; })
      .def_property_readonly("target", [](const Morphism& phi) { return DomainHandle{phi.target()}; })
      .def("pullback_of", &Morphism::pullback_of)
      .def("pullback", [](const Morphism& phi, const Series& g) { return pullback_section(phi, g); })
      .def("jacobian", [](const Morphism& phi) { return jacobian(phi); })
      .def("check",
           [](const Morphism& phi) {
             const auto r = check_morphism_data(phi);
             return py::make_tuple(r.ok, r.problems);
           })
      .def("tangent_lift", [](const Morphism& phi) { return tangent_lift(phi); })
      .def("to_json", [](const Morphism& phi) { return json::to_json(phi).dump(); })
      .def("__eq__", [](const Morphism& a, const Morphism& b) { return a == b; })
      .def("__str__", &morphism_text);

  m.def("compose", &compose, py::arg("psi"), py::arg("phi"), "psi after phi");

  m.def(
      "realize_signs",
      [](const std::vector<std::vector<int>>& table, bool minimize) {
        DegreeAssignment a = realize_sign_table(table_from(table));
        if (minimize) a = minimize_assignment(a);
        return assignment_tuple(a);
      },
      py::arg("table"), py::arg("minimize") = false);
  m.def(
      "verify_signs",
      [](const std::vector<std::vector<int>>& table, std::size_t rank, const std::vector<std::vector<int>>& sigmas) {
        return verify_assignment(table_from(table), assignment_from(rank, sigmas));
      },
      py::arg("table"), py::arg("rank"), py::arg("sigmas"));

  m.def("check_cocycles", [](const std::string& atlas_json) {
    Json out = Json::array();
    for (const auto& r : check_all_cocycles(json::atlas_from_json(parse(atlas_json)))) out.push_back(json::to_json(r));
    return out.dump();
  });
  m.def("tangent_lift_atlas", [](const std::string& atlas_json) {
    return json::to_json(tangent_lift(json::atlas_from_json(parse(atlas_json)))).dump();
  });
  m.def("superize_dvb", [](const std::string& spec) { return superize_dvb(json::dvb_from_json(parse(spec))); });
  m.def("superize_nvb", [](const std::string& spec) { return superize_nvb(json::nvb_from_json(parse(spec))); });

  m.def(
      "clifford_mul",
      [](const std::string& u, const std::string& v, const std::string& presentation) {
        const auto p = presentation_or_quaternions(presentation);
        return clifford_mul(p, parse_clifford(p, u), parse_clifford(p, v)).to_string(p);
      },
      py::arg("u"), py::arg("v"), py::arg("presentation") = "");
  m.def(
      "check_color_commutative",
      [](const std::string& algebra) {
        const auto a =
            algebra.empty() ? quaternion_presentation() : json::structure_algebra_from_json(parse(algebra));
        const auto r = check_color_commutative(a);
        return py::make_tuple(r.ok, r.counterexample, r.reason);
      },
      py::arg("algebra") = "");

  m.def(
      "jet",
      [](const Series& f, const std::vector<std::string>& at, std::size_t k) {
        return jet_at(f, point_from(at), k).to_series();
      },
      py::arg("f"), py::arg("at"), py::arg("k"));
  m.def(
      "germ_invert",
      [](const Series& f, const std::vector<std::string>& at, std::size_t k) {
        return germ_invert(f, point_from(at), k).to_series();
      },
      py::arg("f"), py::arg("at"), py::arg("k"));
  m.def(
      "madic_order",
      [](const Series& f, const std::vector<std::string>& at) { return maximal_ideal_order(f, point_from(at)); },
      py::arg("f"), py::arg("at"));
}
