#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "lagsum/closed_form.hpp"
#include "lagsum/errors.hpp"
#include "lagsum/kummer.hpp"
#include "lagsum/laguerre.hpp"
#include "lagsum/verify.hpp"

namespace py = pybind11;
using namespace lagsum;

namespace {

Sign parse_sign(const std::string& s) {
    if (s == "+") {
        return Sign::plus;
    }
    if (s == "-") {
        return Sign::minus;
    }
    throw InvalidSpec("sign must be '+' or '-', got '" + s + "'");
}

SumSpec make_spec(unsigned m, unsigned p, const std::string& sign_nu, const std::string& sign_p, double nu, double f,
                  double x) {
    return {m, p, parse_sign(sign_nu), parse_sign(sign_p), nu, f, x};
}

}  // namespace

PYBIND11_MODULE(_lagsum, mod) {
    mod.doc() = "Laguerre series sums S_m(+-nu, +-p): closed forms, lemma route and brute-force oracle";

    py::register_exception<InvalidSpec>(mod, "InvalidSpec", PyExc_ValueError);
    py::register_exception<PoleError>(mod, "PoleError", PyExc_ArithmeticError);
    py::register_exception<ConstraintError>(mod, "ConstraintError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

    py::class_<EvalResult>(mod, "EvalResult")
        .def_readonly("value", &EvalResult::value)
        .def_readonly("terms_used", &EvalResult::terms_used)
        .def_readonly("trunc_estimate", &EvalResult::trunc_estimate)
        .def_property_readonly("status", [](const EvalResult& r) { return std::string(to_string(r.status)); })
        .def("__repr__", [](const EvalResult& r) {
            return "EvalResult(value=" + format_real(r.value) + ", terms_used=" + std::to_string(r.terms_used) +
                   ", status=" + std::string(to_string(r.status)) + ")";
        });

    mod.def("gamma", &lagsum::gamma, py::arg("x"));
    mod.def("rgamma", &rgamma, py::arg("x"));
    mod.def("pochhammer", &pochhammer, py::arg("a"), py::arg("n"));
    mod.def("binomial", &binomial, py::arg("n"), py::arg("k"));

    mod.def(
        "pfq",
        [](std::vector<double> num, std::vector<double> den, double z, double tol, std::size_t max_terms) {
            return pfq_eval({std::move(num), std::move(den), z}, {tol, max_terms});
        },
        py::arg("num"), py::arg("den"), py::arg("z"), py::arg("tol") = 1e-14, py::arg("max_terms") = 400);

    mod.def(
        "oracle",
        [](unsigned m, unsigned p, const std::string& sn, const std::string& sp, double nu, double f, double x,
           double tol, std::size_t max_terms) {
            return oracle_sum(make_spec(m, p, sn, sp, nu, f, x), {tol, max_terms});
        },
        py::arg("m"), py::arg("p"), py::arg("sign_nu"), py::arg("sign_p"), py::arg("nu"), py::arg("f"), py::arg("x"),
        py::arg("tol") = 1e-16, py::arg("max_terms") = 400);

    mod.def(
        "closed",
        [](unsigned m, unsigned p, const std::string& sn, const std::string& sp, double nu, double f, double x) {
            const ClosedResult r = closed_sum(make_spec(m, p, sn, sp, nu, f, x));
            return py::make_tuple(r.value, std::string(to_string(r.dispatch)));
        },
        py::arg("m"), py::arg("p"), py::arg("sign_nu"), py::arg("sign_p"), py::arg("nu"), py::arg("f"), py::arg("x"),
        "Closed-form value and the dispatch path used.");

    mod.def(
        "lemma",
        [](unsigned m, unsigned p, const std::string& sn, const std::string& sp, double nu, double f, double x) {
            return lemma_sum(make_spec(m, p, sn, sp, nu, f, x));
        },
        py::arg("m"), py::arg("p"), py::arg("sign_nu"), py::arg("sign_p"), py::arg("nu"), py::arg("f"), py::arg("x"));

    mod.def("bessel_special", [](double nu, double f, double x) { return bessel_special(nu, f, x); }, py::arg("nu"),
            py::arg("f"), py::arg("x"));

    mod.def(
        "kummer_special",
        [](const std::string& sign_nu, const std::string& sign_j, unsigned n, double nu, unsigned j) {
            const bool plus_nu = parse_sign(sign_nu) == Sign::plus;
            const bool plus_j = parse_sign(sign_j) == Sign::plus;
            const KummerVariant v = plus_j ? (plus_nu ? KummerVariant::plus_nu_plus_j : KummerVariant::minus_nu_plus_j)
                                           : (plus_nu ? KummerVariant::plus_nu_minus_j : KummerVariant::minus_nu_minus_j);
            return kummer_special({v, n, nu, j});
        },
        py::arg("sign_nu"), py::arg("sign_j"), py::arg("n"), py::arg("nu"), py::arg("j"),
        "2F1[-n, -n-nu; 1 +- nu +- j; -1] in closed form.");
}
