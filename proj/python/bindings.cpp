#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "borelkit/config.hpp"

namespace py = pybind11;
using namespace borelkit;

namespace {

py::dict flatness_dict(const FlatnessFit& f) {
    py::dict d;
    d["cls"] = to_string(f.cls);
    d["K"] = f.K;
    d["M"] = f.M;
    d["L"] = f.L;
    d["coef"] = f.coef;
    d["se"] = f.se;
    d["used"] = f.used;
    d["clipped"] = f.clipped;
    d["diagnostic"] = f.diagnostic;
    return d;
}

py::dict gevrey_dict(const GevreyFit& g) {
    py::dict d;
    d["cls"] = to_string(g.cls);
    d["passes"] = g.passes;
    d["C"] = g.C;
    d["M"] = g.M;
    d["drift"] = g.drift;
    d["N"] = g.N;
    d["log_ratio"] = g.log_ratio;
    d["diagnostic"] = g.diagnostic;
    return d;
}

/// Sample from eps values and either complex values or (mantissa, log_scale) pairs.
SectorSample make_sample(const std::vector<cplx>& eps, const std::vector<cplx>& values,
                         const std::vector<double>& log_scale) {
    if (values.size() != eps.size()) throw DomainError("eps and values differ in length");
    if (!log_scale.empty() && log_scale.size() != eps.size()) throw DomainError("log_scale differs in length");
    SectorSample s;
    s.eps = eps;
    for (std::size_t i = 0; i < eps.size(); ++i)
        s.values.push_back(log_scale.empty() ? Scaled::from(values[i]) : Scaled{values[i], log_scale[i]});
    return s;
}

RunConfig config_from(const std::string& path) { return load_config(path); }

}  // namespace

PYBIND11_MODULE(_borelkit, m) {
    m.doc() = "Borel-Laplace toolkit for singularly perturbed Cauchy problems";
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("zeta", &zeta, py::arg("b"), py::arg("tol") = 1e-12);
    py::class_<WeightSeq>(m, "WeightSeq")
        .def(py::init<double, double>(), py::arg("b") = 2.0, py::arg("M") = -1.0)
        .def_property_readonly("b", &WeightSeq::b)
        .def_property_readonly("M", &WeightSeq::M)
        .def("r", &WeightSeq::r)
        .def("s", &WeightSeq::s);
    m.def("sup_poly_exp", &sup_poly_exp);
    m.def("sup_linear_minus_exp", &sup_linear_minus_exp);
    m.def("tahara_coeffs", &tahara_coeffs_exact, py::arg("l1"));

    m.def("bfi_solve",
          [](double a, cplx s, int n, std::optional<double> theta) {
              BfiCase c;
              c.a = a;
              c.n = n;
              c.theta = theta ? *theta : kPi + 2.0 * kPi * n;
              return bfi_solve(c, s);
          },
          py::arg("a"), py::arg("s"), py::arg("n") = 0, py::arg("theta") = py::none(),
          "Solution h(s) of h(s + 1) s = a h(s) + 1 on branch n");
    m.def("bfi_max_residual",
          [](double a, std::vector<cplx> s, unsigned workers) {
              BfiCase c;
              c.a = a;
              c.s_samples = std::move(s);
              return bfi_residuals(c, workers).max_residual;
          },
          py::arg("a"), py::arg("s") = std::vector<cplx>{}, py::arg("workers") = 1);

    m.def("geometric_ladder", &geometric_ladder, py::arg("eps_max"), py::arg("n"),
          py::arg("ratio") = 0.70710678118654752, py::arg("arg") = 0.0);
    m.def("classify_flatness",
          [](const std::vector<cplx>& eps, const std::vector<cplx>& values, const std::vector<double>& log_scale) {
              return flatness_dict(flatness_classify(make_sample(eps, values, log_scale)));
          },
          py::arg("eps"), py::arg("values"), py::arg("log_scale") = std::vector<double>{},
          "Classify |f(eps)| = |values| exp(log_scale) as exp-flat, superexp-flat or not-flat");
    m.def("gevrey_check",
          [](const std::vector<cplx>& eps, const std::vector<cplx>& values, const std::vector<cplx>& coeffs,
             const std::string& level) {
              GevreyLevel lv = level == "1" ? GevreyLevel::One
                               : level == "1+" ? GevreyLevel::OnePlus
                                               : throw DomainError("level must be '1' or '1+'");
              return gevrey_dict(gevrey_check(make_sample(eps, values, {}), coeffs, lv));
          },
          py::arg("eps"), py::arg("values"), py::arg("coeffs"), py::arg("level") = "1");
    m.def("euler_function", [](cplx eps) { return euler_function(eps).value(); });
    m.def("euler_coeff", &euler_coeff);

    m.def("validate_config",
          [](const std::string& path) {
              RunConfig rc = config_from(path);
              py::list out;
              auto add = [&](const char* block, const ValidationReport& r) {
                  for (const auto& v : r.violations) {
                      py::dict d;
                      d["block"] = block;
                      d["condition"] = v.condition;
                      d["indices"] = v.indices;
                      d["message"] = v.message;
                      out.append(d);
                  }
              };
              if (rc.strips) add("strips", validate_strip_family(*rc.strips));
              if (rc.covering) add("covering", validate_good_covering(*rc.covering));
              if (rc.problem1) add("problem1", validate_spec1(*rc.problem1));
              if (rc.problem2) add("problem2", validate_spec2(*rc.problem2));
              return out;
          },
          py::arg("path"), "Violations of the geometry and problem blocks of a JSON config");
    m.def("config_hash", [](const std::string& path) { return config_hash(config_from(path).doc); });

    m.def("run_theorem1",
          [](std::optional<std::string> path, unsigned workers) {
              Theorem1Config cfg = path ? theorem1_config(config_from(*path)) : desk_theorem1_config();
              if (workers) cfg.workers = workers;
              Theorem1Report rep;
              {
                  py::gil_scoped_release release;
                  rep = run_theorem1_desk(cfg);
              }
              py::list pairs;
              for (const auto& p : rep.pairs) {
                  py::dict d = flatness_dict(p.fit);
                  d["name"] = p.name;
                  d["kind"] = p.kind;
                  d["expected"] = to_string(p.expected);
                  d["stable"] = p.stable;
                  d["pass"] = p.pass;
                  pairs.append(d);
              }
              py::dict out;
              out["all_pass"] = rep.all_pass;
              out["degenerate"] = rep.degenerate;
              out["A"] = rep.A;
              out["pairs"] = pairs;
              out["diagnostic"] = rep.diagnostic;
              return out;
          },
          py::arg("config") = py::none(), py::arg("workers") = 0,
          "First-problem flatness run; the bundled desk setup when no config is given");
    m.def("run_theorem2",
          [](std::optional<std::string> path) {
              Theorem2Config cfg = path ? theorem2_config(config_from(*path)) : desk_theorem2_config();
              Theorem2Report rep;
              {
                  py::gil_scoped_release release;
                  rep = run_theorem2_desk(cfg);
              }
              py::list checks;
              for (const auto& c : rep.checks) {
                  py::dict d;
                  d["term"] = c.term;
                  d["steps"] = c.steps;
                  d["rel_errors"] = c.rel_errors;
                  d["observed_order"] = c.observed_order;
                  d["pass"] = c.pass;
                  checks.append(d);
              }
              py::dict out;
              out["all_pass"] = rep.all_pass;
              out["checks"] = checks;
              out["diagnostic"] = rep.diagnostic;
              return out;
          },
          py::arg("config") = py::none());
}
