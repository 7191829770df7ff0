#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halfplane/approx.hpp"
#include "halfplane/json_io.hpp"
#include "halfplane/verify.hpp"
#include "halfplane/version.hpp"

namespace py = pybind11;
using namespace halfplane;

namespace {

ExtractionParams extraction(double rho, std::size_t samples, std::size_t degree) {
  ExtractionParams p;
  p.rho = rho;
  p.samples = samples;
  p.degree = degree;
  return p;
}

std::string norm(const std::string& spec, const std::string& method, double rho, std::size_t samples,
                 std::size_t degree, double tol) {
  NormMethod m = NormMethod::kExactCoefficient;
  if (method == "quadrature") {
    m = NormMethod::kQuadrature;
  } else if (method != "exact") {
    throw ParseError("method must be 'exact' or 'quadrature'");
  }
  QuadratureOptions q;
  q.tol = tol;
  return to_json(dirichlet_norm_halfplane(parse_function(parse_json_text(spec)), m, extraction(rho, samples, degree), q))
      .dump();
}

std::vector<double> approximant_errors(const std::string& spec, std::size_t k_max, double rho, std::size_t samples,
                                       std::size_t degree) {
  std::vector<double> out;
  for (const Approximant& a :
       rational_approximants(parse_function(parse_json_text(spec)), k_max, extraction(rho, samples, degree)))
    out.push_back(a.error_squared);
  return out;
}

py::dict membership(const std::string& spec) {
  const HalfPlaneFn f = parse_function(parse_json_text(spec));
  if (!f.is_rational()) throw ParseError("membership expects a rational function spec");
  const Membership m = membership_dirichlet(std::get<RationalFn>(f.representation()));
  py::dict d;
  d["member"] = m.member;
  d["reason"] = m.reason;
  d["truncations"] = m.truncations;
  d["numeric_finite"] = m.numeric_finite;
  d["numeric_agrees"] = m.numeric_agrees;
  return d;
}

std::string compose(const std::string& map_spec, const std::string& fn_spec) {
  const SelfMap phi = parse_selfmap(parse_json_text(map_spec));
  return function_to_json(apply_composition(phi, parse_function(parse_json_text(fn_spec)))).dump();
}

std::map<std::string, std::vector<double>> residuals(const std::string& map_spec, const std::vector<std::size_t>& degrees,
                                                     const std::vector<std::string>& targets) {
  std::vector<HalfPlaneFn> fns;
  for (std::size_t k = 0; k < targets.size(); ++k)
    fns.push_back(parse_function(parse_json_text(targets[k])).labeled("target" + std::to_string(k)));
  std::map<std::string, std::vector<double>> out;
  for (const ResidualCurve& c : dense_range_residuals(parse_selfmap(parse_json_text(map_spec)), fns, degrees))
    out[c.target_id] = c.residuals;
  return out;
}

py::dict complement(const std::string& map_spec, std::vector<double> box, std::size_t samples, std::uint64_t seed) {
  if (box.size() != 4) throw ParseError("box takes x_min, x_max, y_min, y_max");
  const ComplementEstimate e = complement_measure_estimate(parse_selfmap(parse_json_text(map_spec)),
                                                           {box[0], box[1], box[2], box[3]}, samples, seed);
  py::dict d;
  d["estimate"] = e.estimate;
  d["ci"] = e.ci;
  d["samples"] = e.samples;
  d["outside"] = e.outside;
  d["inconclusive"] = e.inconclusive;
  return d;
}

py::list verify(const std::string& suite, std::uint64_t seed) {
  VerifyConfig cfg;
  cfg.seed = seed;
  py::list out;
  for (const SuiteReport& s : run_verify(suite, cfg))
    for (const CheckResult& c : s.checks) {
      py::dict d;
      d["check_id"] = c.id;
      d["measured"] = c.measured;
      d["tolerance"] = c.tolerance;
      d["pass"] = c.pass;
      out.append(d);
    }
  return out;
}

double energy(const std::vector<cplx>& c) { return dirichlet_energy_disk(DiskSeries(c)); }
double hardy(const std::vector<cplx>& c) { return hardy_norm_disk(DiskSeries(c)); }

}  // namespace

PYBIND11_MODULE(_halfplane, m) {
  m.doc() = "Dirichlet and Hardy space numerics on the upper half-plane";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "HalfplaneError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NonFiniteSample>(m, "NonFiniteSample", base.ptr());
  py::register_exception<NotInSpace>(m, "NotInSpace", base.ptr());

  const ExtractionParams d;
  m.def("cayley", &cayley_eval, py::arg("w"));
  m.def("cayley_inverse", &inverse_cayley_eval, py::arg("z"));
  m.def("dirichlet_energy_disk", &energy, py::arg("coeffs"));
  m.def("hardy_norm_disk", &hardy, py::arg("coeffs"));
  m.def("norm", &norm, py::arg("spec"), py::arg("method") = "exact", py::arg("rho") = d.rho,
        py::arg("samples") = d.samples, py::arg("degree") = d.degree, py::arg("tol") = QuadratureOptions{}.tol);
  m.def("approximant_errors", &approximant_errors, py::arg("spec"), py::arg("k_max"), py::arg("rho") = d.rho,
        py::arg("samples") = d.samples, py::arg("degree") = d.degree);
  m.def("membership", &membership, py::arg("spec"));
  m.def("compose", &compose, py::arg("map_spec"), py::arg("spec"));
  m.def("residuals", &residuals, py::arg("map_spec"), py::arg("degrees"), py::arg("targets"));
  m.def("complement", &complement, py::arg("map_spec"), py::arg("box") = std::vector<double>{-2.0, 2.0, 0.0, 2.0},
        py::arg("samples") = 100000, py::arg("seed") = 0);
  m.def("verify", &verify, py::arg("suite"), py::arg("seed") = 0);
}
