#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ballspec/contour.hpp"
#include "ballspec/diffmat.hpp"
#include "ballspec/expand.hpp"
#include "ballspec/experiments.hpp"
#include "ballspec/jacobi.hpp"
#include "ballspec/pde.hpp"
#include "ballspec/split.hpp"

namespace py = pybind11;
using namespace ballspec;

namespace {

BasisSpec make_spec(int N, int K, double alpha, double beta, int d) {
  BasisSpec s;
  s.N = N;
  s.K = K;
  s.alpha = alpha;
  s.beta = beta;
  s.d = d;
  s.validate();
  return s;
}

// Python callables are not thread-safe to call without the GIL; the library calls fields
// from the current thread only.
Field wrap(py::function f, int d) {
  return [f, d](double r, std::span<const double> th) -> Complex {
    py::gil_scoped_acquire gil;
    if (d == 2) return f(r, th[0]).cast<Complex>();
    py::tuple t(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) t[i] = th[i];
    return f(r, *t).cast<Complex>();
  };
}

CoeffTensor expand(py::function f, int N, int K, double alpha, double beta, int d, bool split) {
  const auto spec = make_spec(N, K, alpha, beta, d);
  const Field field = wrap(f, d);
  if (!split) return analyze_field(field, spec);
  SplitOptions o;
  o.d = d;
  o.K = K;
  const auto pair = make_pos(field, TemplateProfile(TemplateKind::Linear), o);
  if (!pair.certified) throw NumericalError("expand: splitting did not certify");
  return analyze_split(pair, spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral expansions on the disc and ball";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("jacobi_eval", [](int n, double a, double b, double x) { return jacobi_eval(n, JacobiParams(a, b), x); },
        py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("x"));
  m.def(
      "gauss_jacobi",
      [](int n, double a, double b) {
        const auto r = gauss_jacobi(n, JacobiParams(a, b));
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"));

  m.def("build_Dr", [](int N, double alpha) { return build_Dr(N, alpha).to_dense(); }, py::arg("N"),
        py::arg("alpha"), "Closed-form skew differentiation matrix (x variable) as a dense array.");
  m.def(
      "radial_diff_quadrature",
      [](int N, double alpha, double beta, const std::string& kind) {
        BasisSpec s = make_spec(N, 0, alpha, beta, 2);
        if (kind == "ex1") s.kind = BasisKind::Ex1Weighted;
        else if (kind != "wfunc") throw ParameterError("kind must be 'wfunc' or 'ex1'");
        return radial_diff_quadrature(s);
      },
      py::arg("N"), py::arg("alpha"), py::arg("beta"), py::arg("kind") = "wfunc");
  m.def("asymmetry_S_ex1", &asymmetry_S_ex1, py::arg("N"), py::arg("alpha"));
  m.def("asymmetry_beta0", &asymmetry_beta0, py::arg("n"), py::arg("m"), py::arg("alpha"));

  py::class_<CoeffTensor>(m, "CoeffTensor")
      .def_property_readonly("fhat", [](const CoeffTensor& c) { return c.fhat; })
      .def_property_readonly("has_affine", [](const CoeffTensor& c) { return c.has_affine; })
      .def("__len__", &CoeffTensor::size)
      .def(
          "__call__",
          [](const CoeffTensor& c, double r, const std::vector<double>& theta) { return synthesize(c, r, theta); },
          py::arg("r"), py::arg("theta"));

  m.def("expand", &expand, py::arg("f"), py::arg("N") = 6, py::arg("K") = 5, py::arg("alpha") = 2.0,
        py::arg("beta") = 2.0, py::arg("d") = 2, py::arg("split") = true,
        "Expansion coefficients of f(r, theta_1, ..., theta_{d-1}); split=True applies the orthogonal splitting.");
  m.def(
      "error_report",
      [](py::function f, const CoeffTensor& c, int M) {
        const auto e = error_report(wrap(f, c.spec.d), c, M);
        return py::dict(py::arg("e_inf") = e.e_inf, py::arg("e_2") = e.e_2);
      },
      py::arg("f"), py::arg("coeffs"), py::arg("M") = 6);

  m.def(
      "expm_apply",
      [](const Eigen::MatrixXcd& A, const CVector& v, double t) { return expm_apply(A, v, t).value; },
      py::arg("A"), py::arg("v"), py::arg("t"), "exp(tA) v by the contour rule.");

  m.def(
      "propagate",
      [](const std::string& kind, int N, int K, double alpha, const CVector& v, double t, bool affine) {
        const auto spec = make_spec(N, K, alpha, alpha, 2);
        const auto ops = build_diffops(spec);
        const auto comp = compound_radial(ops, TemplateProfile().unit());
        PdeKind k;
        if (kind == "diffusion") k = PdeKind::Diffusion;
        else if (kind == "schrodinger") k = PdeKind::Schrodinger;
        else throw ParameterError("kind must be 'diffusion' or 'schrodinger'");
        const auto op = assemble(k, ops, comp, affine);
        return propagate(op, v, t);
      },
      py::arg("kind"), py::arg("N"), py::arg("K"), py::arg("alpha"), py::arg("v"), py::arg("t"),
      py::arg("affine") = true);

  m.def(
      "run_example",
      [](const std::string& example) {
        RunConfig c;
        c.example = example;
        std::ostringstream os;
        emit_report(run_example(c), Format::Json, os);
        return os.str();
      },
      py::arg("example"), "JSON report of one CLI example.");
}
