#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "mertens/asymptotics.hpp"
#include "mertens/cli.hpp"
#include "mertens/errors.hpp"
#include "mertens/multiple_sums.hpp"
#include "mertens/polynomials.hpp"
#include "mertens/prime_table.hpp"
#include "mertens/special_functions.hpp"

namespace py = pybind11;
using namespace mertens;

namespace {

py::dict row_dict(const ResidualRow& r) {
    py::dict d;
    d["k"] = r.k;
    d["s"] = r.s;
    d["x"] = r.x;
    d["exact"] = r.exact;
    d["prediction"] = r.prediction;
    d["residual"] = r.residual;
    d["scaled"] = r.scaled;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multiple prime sums, their asymptotic polynomials and supporting special functions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<OutOfRangeError>(m, "OutOfRangeError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<CorruptionError>(m, "CorruptionError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

    py::class_<XFloat>(m, "XFloat")
        .def(py::init<double>())
        .def_static("parse", &XFloat::parse)
        .def_property_readonly("hi", &XFloat::hi)
        .def_property_readonly("lo", &XFloat::lo)
        .def("__float__", &XFloat::to_double)
        .def("to_string", &XFloat::to_string, py::arg("digits") = 32)
        .def("__str__", [](const XFloat& x) { return x.to_string(); })
        .def("__repr__", [](const XFloat& x) { return "XFloat('" + x.to_string() + "')"; })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self < py::self);

    py::class_<PrimeTable>(m, "PrimeTable")
        .def_property_readonly("limit", &PrimeTable::limit)
        .def_property_readonly("primes",
                               [](const PrimeTable& t) {
                                   auto p = t.primes();
                                   return std::vector<std::uint64_t>(p.begin(), p.end());
                               })
        .def("__len__", &PrimeTable::size)
        .def("count_upto", py::overload_cast<double>(&PrimeTable::count_upto, py::const_), py::arg("x"))
        .def(py::self == py::self);

    m.def(
        "build_sieve",
        [](std::uint64_t limit, unsigned threads) {
            SieveOptions o;
            o.threads = threads;
            py::gil_scoped_release release;
            return build_sieve(limit, o);
        },
        py::arg("limit"), py::arg("threads") = 1);
    m.def("reciprocal_sum", &reciprocal_sum, py::arg("table"), py::arg("x"));
    m.def("logp_over_p_sum", &logp_over_p_sum, py::arg("table"), py::arg("x"));
    m.def("power_log_sum", &power_log_sum, py::arg("table"), py::arg("x"), py::arg("k"));
    m.def("save_cache", &save_cache, py::arg("table"), py::arg("path"));
    m.def("load_cache", &load_cache, py::arg("path"));

    m.def("zeta_int", &zeta_int, py::arg("n"));
    m.def("polylog_half", &polylog_half, py::arg("n"));
    m.def("log_power_integral_closed", &log_power_integral_closed, py::arg("m"));
    m.def(
        "log_power_integral_quad",
        [](int mm, double tol) {
            auto r = log_power_integral_quad(mm, tol);
            return py::make_tuple(r.value, r.error_estimate);
        },
        py::arg("m"), py::arg("tol") = 1e-12);
    m.def(
        "mertens_constant",
        [](std::uint64_t limit, const PrimeTable& t) {
            auto r = mertens_constant(limit, t);
            return py::make_tuple(r.value, r.tail_bound);
        },
        py::arg("limit"), py::arg("table"));
    m.def("euler_gamma", &euler_gamma);

    m.def("a_seq", [](int kmax) { return a_seq(kmax).values; }, py::arg("kmax"));
    m.def(
        "p_poly", [](int k) { return p_poly(k, a_seq(std::max(k, 2))).coeffs; }, py::arg("k"),
        "Coefficients of P_k in powers of u = loglog x + B, constant term first.");
    m.def("p_poly_recursive", [](int k) { return p_poly_recursive(k).coeffs; }, py::arg("k"));
    m.def(
        "to_plain_basis",
        [](const std::vector<XFloat>& coeffs, const XFloat& B) { return to_plain_basis(ShiftedPoly{coeffs}, B); },
        py::arg("coeffs"), py::arg("B"));
    m.def("inv_gamma_taylor", &inv_gamma_taylor, py::arg("mmax"));
    m.def(
        "tenenbaum_lambda",
        [](int k, const XFloat& B, const XFloat& gamma) { return tenenbaum_lambda(k, B, gamma).lambda; },
        py::arg("k"), py::arg("B"), py::arg("gamma"));

    py::class_<SumValue>(m, "SumValue")
        .def_readonly("value", &SumValue::value)
        .def_readonly("term_count", &SumValue::term_count)
        .def_property_readonly("method", [](const SumValue& v) { return std::string(method_name(v.method)); })
        .def("__repr__", [](const SumValue& v) {
            std::ostringstream os;
            os << "SumValue(value=" << v.value.to_string(17) << ", term_count=" << v.term_count
               << ", method='" << method_name(v.method) << "')";
            return os.str();
        });

    m.def(
        "multiple_sum",
        [](const PrimeTable& t, int k, double x, int s, const std::string& method, std::optional<double> split,
           unsigned threads) {
            SumSpec spec{k, s, x, parse_method(method), split};
            py::gil_scoped_release release;
            return compute_sum(t, spec, SumOptions{threads, kDefaultTupleBudget});
        },
        py::arg("table"), py::arg("k"), py::arg("x"), py::arg("s") = 0, py::arg("method") = "enum",
        py::arg("split") = py::none(), py::arg("threads") = 1);

    m.def(
        "theorem_main_prediction",
        [](int k, double x, const XFloat& B) { return theorem_main_prediction(k, x, p_family(std::max(k, 2)), B); },
        py::arg("k"), py::arg("x"), py::arg("B"));
    m.def(
        "theorem_weighted_prediction",
        [](int k, int s, double x, const XFloat& B) {
            return theorem_weighted_prediction(k, s, x, p_family(std::max(k, 2)), B);
        },
        py::arg("k"), py::arg("s"), py::arg("x"), py::arg("B"));

    m.def(
        "residual_table",
        [](const PrimeTable& t, const XFloat& B, int k, int s, double xmin, double xmax, int points,
           const std::string& method) {
            std::vector<ResidualRow> rows;
            {
                py::gil_scoped_release release;
                rows = residual_table(t, k, s, GridSpec{xmin, xmax, points, Spacing::Geometric},
                                      p_family(std::max(k, 2)), B, parse_residual_method(method));
            }
            py::list out;
            for (const auto& r : rows) out.append(row_dict(r));
            return out;
        },
        py::arg("table"), py::arg("B"), py::arg("k"), py::arg("s") = 0, py::arg("xmin") = 1e3,
        py::arg("xmax") = 1e7, py::arg("points") = 8, py::arg("method") = "enum");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");
}
