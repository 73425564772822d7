#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "focklab/analysis.hpp"
#include "focklab/calculus.hpp"
#include "focklab/dsl.hpp"
#include "focklab/verify.hpp"

namespace py = pybind11;
using namespace focklab;

namespace {

CPoint to_point(const py::object& z) {
  if (py::isinstance<py::sequence>(z) && !py::isinstance<py::str>(z)) {
    std::vector<cplx> v;
    for (auto item : z) v.push_back(item.cast<cplx>());
    return CPoint(v);
  }
  return CPoint{z.cast<cplx>()};
}

Integrator make_integrator(const std::string& kind, int order, std::size_t samples, std::uint64_t seed) {
  if (kind == "quad") {
    auto q = Integrator::quadrature(RuleKind::polar, order);
    q.seed = seed;
    return q;
  }
  if (kind == "mc") return Integrator::monte_carlo(samples, seed);
  throw std::invalid_argument("integrator must be 'quad' or 'mc'");
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["stderr"] = e.std_error;
  d["method"] = e.method;
  d["count"] = e.count;
  d["finite"] = e.finite;
  return d;
}

py::object report_to_python(const SuiteReport& r) {
  return py::module_::import("json").attr("loads")(r.to_json().dump());
}

SuiteOptions options_from(double alpha, std::optional<double> beta, int n, std::optional<double> p,
                          std::uint64_t seed, const std::string& integrator, int order, std::size_t samples,
                          int count, const std::string& f) {
  SuiteOptions o;
  o.alpha = alpha;
  o.beta = beta;
  o.n = n;
  o.p = p;
  o.seed = seed;
  o.integrator = integrator;
  o.order = order;
  o.samples = samples;
  o.count = count;
  o.f = f;
  return o;
}

}  // namespace

PYBIND11_MODULE(_focklab, m) {
  m.doc() = "Fock-space norms, distances and verification suites";
  m.attr("__version__") = FOCKLAB_VERSION;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<EntireFn>(m, "EntireFn")
      .def(py::init([](const std::string& text, int n) { return parse_fn(text, n); }), py::arg("text"),
           py::arg("n") = 0)
      .def_property_readonly("dim", &EntireFn::dim)
      .def("__call__", [](const EntireFn& f, const py::object& z) { return eval(f, to_point(z)); })
      .def("partial", &partial, py::arg("k"))
      .def("radial", &radial)
      .def("radial_power", &radial_power, py::arg("N"))
      .def("__add__", [](const EntireFn& a, const EntireFn& b) { return a + b; })
      .def("__sub__", [](const EntireFn& a, const EntireFn& b) { return a - b; })
      .def("__mul__", [](const EntireFn& a, const EntireFn& b) { return a * b; })
      .def("__str__", &print_fn)
      .def("__repr__", [](const EntireFn& f) { return "EntireFn('" + print_fn(f) + "')"; });

  m.def("kernel", [](double alpha, const py::object& w, bool normalized) {
        return normalized ? EntireFn::normalized_kernel(alpha, to_point(w)) : EntireFn::kernel(alpha, to_point(w));
      }, py::arg("alpha"), py::arg("w"), py::arg("normalized") = false);

  m.def("norm", [](const EntireFn& f, double p, double alpha, const std::string& integrator, int order,
                   std::size_t samples, std::uint64_t seed) {
        py::gil_scoped_release release;
        Estimate e = norm_p(f, FockParams{alpha, p, f.dim()}, make_integrator(integrator, order, samples, seed));
        py::gil_scoped_acquire acquire;
        return estimate_dict(e);
      }, py::arg("f"), py::arg("p") = 2.0, py::arg("alpha") = 1.0, py::arg("integrator") = "quad",
      py::arg("order") = 0, py::arg("samples") = 100000, py::arg("seed") = 0);

  m.def("supnorm", [](const EntireFn& f, double alpha) {
        SupResult s = norm_inf(f, alpha);
        py::dict d;
        d["value"] = s.value;
        d["finite"] = s.finite;
        d["argmax"] = std::vector<cplx>(s.argmax.coords().begin(), s.argmax.coords().end());
        return d;
      }, py::arg("f"), py::arg("alpha") = 1.0);

  m.def("distance", [](const py::object& z, const py::object& w, double alpha, std::optional<double> beta,
                       double p_exponent, const std::string& integrator, int order, std::size_t samples,
                       std::uint64_t seed) {
        DistanceParams dp = beta ? DistanceParams{alpha, *beta, p_exponent} : DistanceParams::d_alpha(alpha, p_exponent);
        auto integ = make_integrator(integrator, order, samples, seed);
        CPoint a = to_point(z), b = to_point(w);
        Estimate e = p_exponent == 1.0 ? distance(dp, a, b, integ) : distance_p(dp, a, b, integ);
        return estimate_dict(e);
      }, py::arg("z"), py::arg("w"), py::arg("alpha") = 1.0, py::arg("beta") = py::none(),
      py::arg("p_exponent") = 1.0, py::arg("integrator") = "quad", py::arg("order") = 0,
      py::arg("samples") = 100000, py::arg("seed") = 0);

  m.def("energy", [](const py::object& z, double alpha) { return estimate_dict(energy_E(alpha, to_point(z))); },
        py::arg("z"), py::arg("alpha") = 1.0);

  m.def("incomplete_gamma", &incomplete_gamma, py::arg("n"), py::arg("x"));

  m.def("suite_ids", &suite_ids);
  m.def("explorer_ids", &explorer_ids);

  auto runner = [](bool explorer) {
    return [explorer](const std::string& id, double alpha, std::optional<double> beta, int n,
                      std::optional<double> p, std::uint64_t seed, const std::string& integrator, int order,
                      std::size_t samples, int count, const std::string& f) {
      SuiteOptions o = options_from(alpha, beta, n, p, seed, integrator, order, samples, count, f);
      SuiteReport r = [&] {
        py::gil_scoped_release release;
        return explorer ? run_explorer(id, o) : run_suite(id, o);
      }();
      return report_to_python(r);
    };
  };
  for (auto [name, explorer] : {std::pair{"run_suite", false}, std::pair{"run_explorer", true}}) {
    m.def(name, runner(explorer), py::arg("id"), py::arg("alpha") = 1.0, py::arg("beta") = py::none(),
          py::arg("n") = 1, py::arg("p") = py::none(), py::arg("seed") = 0, py::arg("integrator") = "quad",
          py::arg("order") = 0, py::arg("samples") = 100000, py::arg("count") = 0, py::arg("f") = "");
  }
}
