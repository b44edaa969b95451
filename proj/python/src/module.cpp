#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "iwalab/cli.hpp"
#include "iwalab/json_io.hpp"
#include "iwalab/poly_text.hpp"
#include "iwalab/verify.hpp"

namespace py = pybind11;
using namespace iwalab;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
std::string rational_text(const Rational& q) { return q.get_str(); }

std::string lp_value(const std::string& chi_text, long p, const std::string& s, long prec,
                     const std::vector<long>& primes) {
  auto chi = DirichletCharacter::parse(chi_text);
  LSeriesOptions opts;
  opts.precision = prec;
  auto series = lp_series(chi, default_field_for(chi, p), opts);
  auto base = ExtensionField::base(p);
  ParsedCoefficient c = parse_coefficient(s);
  PadicNumber e = c.precision ? PadicNumber::from_rational(base, c.value, *c.precision) : PadicNumber::exact(base, c.value);
  std::set<long> S(primes.begin(), primes.end());
  S.insert(p);
  return dump(padic_json(lps_eval(series, e, S)));
}

std::string weierstrass(long p, const std::vector<std::string>& coeffs, long prec, const std::string& field_text) {
  FieldPtr field = ExtensionField::parse(p, field_text);
  std::vector<PadicNumber> c;
  for (const auto& text : coeffs) {
    ParsedCoefficient parsed = parse_coefficient(text);
    long n = parsed.precision ? std::min(*parsed.precision, prec) : prec;
    c.push_back(PadicNumber::from_rational(field, parsed.value, n));
  }
  return dump(weierstrass_json(weierstrass_prepare(TruncatedPowerSeries(field, c))));
}

std::string section6(const std::string& path, long prec) { return dump(section6_json(section6_report(load_section6(path), prec))); }

std::string verify(const std::string& suite, const std::vector<long>& primes, long count, std::uint64_t seed) {
  VerifyConfig cfg;
  cfg.primes = primes;
  cfg.count = count;
  cfg.seed = seed;
  return dump(suite_json(run_suite(suite, cfg)));
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_iwalab, m) {
  m.doc() = "Kubota-Leopoldt p-adic L-functions and Iwasawa-theoretic cohomology predictions";

  // Raised as IwalabError(kind, message).
  static py::exception<Error> error(m, "IwalabError");
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
    }
  });

  m.def("bernoulli", [](long n) { return rational_text(bernoulli(n)); }, py::arg("n"), "B_n as 'a/b' text");
  m.def(
      "l_star",
      [](long m_, const std::string& chi, const std::vector<long>& primes) {
        std::set<long> S(primes.begin(), primes.end());
        return dump(cyclotomic_json(l_star_truncated(m_, DirichletCharacter::parse(chi), S)));
      },
      py::arg("m"), py::arg("chi"), py::arg("primes") = std::vector<long>{},
      "L_S*(m, chi) for m <= 0 as JSON");
  m.def("lp_value", &lp_value, py::arg("chi"), py::arg("p"), py::arg("s"), py::arg("prec") = 20,
        py::arg("primes") = std::vector<long>{}, "L_{p,S}(s, chi) at a rational s as JSON");
  m.def("weierstrass", &weierstrass, py::arg("p"), py::arg("coeffs"), py::arg("prec") = 20, py::arg("field") = "Qp",
        "Weierstrass data of a truncated power series as JSON");
  m.def("section6", &section6, py::arg("path"), py::arg("prec") = 20, "Report on a published-data file as JSON");
  m.def("verify", &verify, py::arg("suite"), py::arg("primes") = std::vector<long>{}, py::arg("count") = 0,
        py::arg("seed") = 7, "Run a property suite; summary as JSON");
  m.def("suite_names", &suite_names);
  m.def("cli", &cli, py::arg("args"), "Run the command line in-process; returns (exit code, stdout, stderr)");
}
