// Python bindings. Exact values cross the boundary as strings ("p/q", "inf")
// and are turned into fractions.Fraction on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levymom/config.hpp"
#include "levymom/costproc.hpp"
#include "levymom/mcsim.hpp"
#include "levymom/mg1.hpp"
#include "levymom/moments.hpp"
#include "levymom/psi.hpp"
#include "levymom/transform.hpp"
#include "levymom/verify.hpp"

namespace py = pybind11;
using namespace levymom;

namespace {

std::string text(const Extended<Rational>& v) {
  if (v.finite()) return v.value().get_str();
  return v.sign() > 0 ? "inf" : "-inf";
}

std::vector<FunctionalSpec<Rational>> parse_specs(const std::vector<std::string>& specs) {
  std::vector<FunctionalSpec<Rational>> out;
  for (const auto& s : specs) out.push_back(parse_functional(s));
  return out;
}

py::dict estimate_dict(const SimEstimate& e) {
  py::dict d;
  d["label"] = e.label;
  d["mean"] = e.mean;
  d["stderr"] = e.stderr_;
  d["ci_low"] = e.ci_low;
  d["ci_high"] = e.ci_high;
  d["replications"] = e.replications;
  d["seed"] = e.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact moments of Levy-driven busy-period functionals";
  m.attr("__version__") = "0.1.0";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidModel>(m, "InvalidModel", base);
  py::register_exception<MissingMoment>(m, "MissingMoment", base);
  py::register_exception<FiniteMomentRequired>(m, "FiniteMomentRequired", base);
  py::register_exception<NumericalError>(m, "NumericalError", base);
  py::register_exception<Unsupported>(m, "Unsupported", base);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  // Subclasses after their bases so pybind11 tries them first.
  py::register_exception<InvalidRho>(m, "InvalidRho", m.attr("InvalidModel"));
  py::register_exception<NonpositiveDenominator>(m, "NonpositiveDenominator", m.attr("NumericalError"));
  py::register_exception<ZeroDenominator>(m, "ZeroDenominator", m.attr("NumericalError"));
  py::register_exception<NonCPPModel>(m, "NonCPPModel", m.attr("Unsupported"));
  py::register_exception<EulerRequired>(m, "EulerRequired", m.attr("Unsupported"));
  py::register_exception<ArgumentOrder>(m, "ArgumentOrder", m.attr("InvalidArgument"));

  py::class_<RunConfig>(m, "Config")
      .def_property_readonly("rho", [](const RunConfig& c) { return c.model.rho().get_str(); })
      .def_property_readonly("lambda_", [](const RunConfig& c) { return text(c.model.lambda()); })
      .def_property_readonly("seed", [](const RunConfig& c) { return c.seed; })
      .def_property_readonly("hash", [](const RunConfig& c) { return c.hash; })
      .def("with_push", [](RunConfig c, const std::string& push) {
        c.push = parse_push(push);
        return c;
      });

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  m.def(
      "zeta_moments",
      [](const RunConfig& c, unsigned order) {
        auto t = psi_table<Rational>(c.model, order);
        std::vector<std::string> out;
        for (unsigned k = 0; k <= order; ++k) out.push_back(text(t.zeta_moment(k)));
        return out;
      },
      py::arg("config"), py::arg("order"));

  m.def(
      "joint_moment",
      [](const RunConfig& c, const std::vector<std::string>& specs, bool literal) {
        EngineOptions o;
        o.literal = literal;
        return text(joint_moment(c.model, c.push, parse_specs(specs), o).value);
      },
      py::arg("config"), py::arg("specs"), py::arg("literal") = false);

  m.def(
      "joint_moment_real",
      [](const RunConfig& c, const std::vector<std::string>& specs) {
        std::vector<FunctionalSpec<Real>> rs;
        for (const auto& s : parse_specs(specs)) rs.push_back(s.cast<Real>());
        auto v = joint_moment(c.model, c.push, rs).value;
        return v.finite() ? static_cast<double>(v.value()) : static_cast<double>(v.sign()) * HUGE_VAL;
      },
      py::arg("config"), py::arg("specs"));

  m.def(
      "series_moment",
      [](const RunConfig& c, unsigned jumps, unsigned tau) {
        auto s = gamma_series_fixed_point<Rational>(c.model, c.push, jumps + tau);
        return series_moment(s, jumps, tau).get_str();
      },
      py::arg("config"), py::arg("jumps"), py::arg("tau"));

  m.def(
      "cost_moment_poly",
      [](const RunConfig& c, unsigned ell) {
        auto p = cost_moment_poly<Rational>(c.model, ell);
        std::vector<std::string> out;
        for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(static_cast<unsigned>(i)).get_str());
        return out;
      },
      py::arg("config"), py::arg("ell"));

  m.def(
      "autocovariance",
      [](const RunConfig& c, unsigned k, const std::string& x1, const std::string& x2) {
        return autocovariance<Rational>(c.model, k, parse_rational(x1), parse_rational(x2)).get_str();
      },
      py::arg("config"), py::arg("k"), py::arg("x1"), py::arg("x2"));

  m.def(
      "omega",
      [](const RunConfig& c, double alpha, double beta, unsigned order) {
        auto p = omega<Real>(c.model, c.push, alpha, beta, order);
        py::dict d;
        d["omega"] = static_cast<double>(p.omega);
        d["xi"] = static_cast<double>(p.xi);
        d["last_term"] = static_cast<double>(p.last_term);
        d["truncation"] = static_cast<double>(p.truncation());
        return d;
      },
      py::arg("config"), py::arg("alpha"), py::arg("beta"), py::arg("order") = 8);

  m.def(
      "simulate",
      [](const RunConfig& c, const std::vector<std::string>& functionals, std::uint64_t reps, std::uint64_t seed,
         unsigned threads) {
        SimConfig cfg(c.model, c.push);
        cfg.replications = reps;
        cfg.seed = seed;
        cfg.threads = threads;
        std::vector<SampleMonomial> monos;
        for (std::size_t i = 0; i < functionals.size(); ++i) {
          cfg.functionals.push_back(parse_functional(functionals[i]).cast<Real>());
          SampleMonomial mono;
          mono.functionals.assign(functionals.size(), 0);
          mono.functionals[i] = 1;
          mono.label = "E " + functionals[i];
          monos.push_back(mono);
        }
        std::vector<SimEstimate> est;
        {
          py::gil_scoped_release release;
          est = estimate_moments(cfg, monos);
        }
        py::list out;
        for (const auto& e : est) out.append(estimate_dict(e));
        return out;
      },
      py::arg("config"), py::arg("functionals"), py::arg("replications") = 100000, py::arg("seed") = 20240521,
      py::arg("threads") = 1);

  m.def(
      "verify",
      [](std::uint64_t reps, std::uint64_t seed, unsigned threads) {
        VerifyOptions o;
        o.replications = reps;
        o.seed = seed;
        o.threads = threads;
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = run_all_checks(o);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("replications") = 1000000, py::arg("seed") = 20240521, py::arg("threads") = 1);
}
