#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>

#include "vexle/hardy.hpp"
#include "vexle/runner.hpp"
#include "vexle/scenario.hpp"
#include "vexle/selftest.hpp"
#include "vexle/space.hpp"

namespace py = pybind11;
using namespace vexle;

namespace {

struct Sampled {
    GridPtr grid;
    ExponentField p;
    WeightField w;
    GridFunction f;
};

GridPtr make_grid(std::pair<double, double> domain, std::size_t points,
                  const std::string& scheme, double x_min, double x_max) {
    Interval iv{domain.first, domain.second};
    GridScheme gs;
    if (scheme == "uniform") {
        gs = GridScheme::Uniform;
    } else if (scheme == "geometric") {
        gs = GridScheme::Geometric;
    } else if (scheme == "two_sided") {
        gs = GridScheme::GeometricTwoSided;
    } else if (scheme == "auto") {
        gs = iv.unbounded() ? GridScheme::Geometric : GridScheme::Uniform;
    } else {
        throw DomainError("unknown grid scheme: " + scheme);
    }
    if (x_min != 0 || x_max != 0) return Grid::build(iv, gs, points, Truncation{x_min, x_max});
    return Grid::build(iv, gs, points);
}

Sampled sample_all(std::pair<double, double> domain, std::size_t points, const std::string& p_text,
                   const std::string& w_text, const std::string& f_text,
                   const std::string& scheme, double x_min, double x_max) {
    auto grid = make_grid(domain, points, scheme, x_min, x_max);
    auto p = ExponentField::sample(grid, *parse_expression(p_text));
    auto w = WeightField::sample(grid, *parse_expression(w_text));
    auto f = GridFunction::sample(grid, *parse_expression(f_text));
    return {grid, std::move(p), std::move(w), std::move(f)};
}

} // namespace

PYBIND11_MODULE(vexle, m) {
    m.doc() = "modulars, Luxemburg-type quasi-norms and averaging-operator bounds "
              "in weighted variable-exponent spaces with exponents below one";

    m.def(
        "eval_expr",
        [](const std::string& text, double x, std::optional<double> t) {
            return evaluate(*parse_expression(text), x, t);
        },
        py::arg("text"), py::arg("x"), py::arg("t") = std::nullopt,
        "Evaluate an expression in x (and optionally t)");

    m.def(
        "print_expr",
        [](const std::string& text) { return print_expression(*parse_expression(text)); },
        py::arg("text"), "Parse and print back the fully parenthesized form");

    m.def(
        "modular",
        [](std::pair<double, double> domain, std::size_t points, const std::string& p,
           const std::string& omega, const std::string& f, std::optional<double> lam,
           const std::string& scheme, double x_min, double x_max) {
            auto s = sample_all(domain, points, p, omega, f, scheme, x_min, x_max);
            return lam ? modular_scaled(s.f, s.p, s.w, *lam) : modular(s.f, s.p, s.w);
        },
        py::arg("domain"), py::arg("points"), py::arg("p"), py::arg("omega"), py::arg("f"),
        py::arg("lam") = std::nullopt, py::arg("scheme") = "auto", py::arg("x_min") = 0.0,
        py::arg("x_max") = 0.0, "Modular of f (optionally of f/lam)");

    m.def(
        "quasi_norm",
        [](std::pair<double, double> domain, std::size_t points, const std::string& p,
           const std::string& omega, const std::string& f, double tol, const std::string& scheme,
           double x_min, double x_max) {
            auto s = sample_all(domain, points, p, omega, f, scheme, x_min, x_max);
            return quasi_norm(s.f, s.p, s.w, tol);
        },
        py::arg("domain"), py::arg("points"), py::arg("p"), py::arg("omega"), py::arg("f"),
        py::arg("tol") = 1e-8, py::arg("scheme") = "auto", py::arg("x_min") = 0.0,
        py::arg("x_max") = 0.0, "Luxemburg-type quasi-norm of f");

    m.def(
        "conjugate_norm",
        [](std::pair<double, double> domain, std::size_t points, const std::string& p,
           const std::string& omega, const std::string& g, double tol, const std::string& scheme,
           double x_min, double x_max) {
            auto s = sample_all(domain, points, p, omega, g, scheme, x_min, x_max);
            return conjugate_norm(s.f, s.p, s.w, tol);
        },
        py::arg("domain"), py::arg("points"), py::arg("p"), py::arg("omega"), py::arg("g"),
        py::arg("tol") = 1e-8, py::arg("scheme") = "auto", py::arg("x_min") = 0.0,
        py::arg("x_max") = 0.0, "Norm in the conjugate space (negative conjugate exponent)");

    m.def("example42_admissible", &example42_admissible, py::arg("alpha"), py::arg("beta"),
          py::arg("p"), "Power-weight admissibility for the averaging operator");

    m.def(
        "run",
        [](const std::string& text, int parallel, const std::string& format, bool timings,
           double tol) {
            auto scenarios = parse_scenario_file(text);
            RunOptions opts;
            opts.parallelism = parallel;
            opts.timings = timings;
            opts.default_tol = tol;
            auto rows = run_scenarios(scenarios, opts);
            std::string report = format == "kv" ? to_kv(rows) : to_csv(rows);
            return py::make_tuple(report, exit_code(rows));
        },
        py::arg("text"), py::arg("parallel") = 1, py::arg("format") = "csv",
        py::arg("timings") = false, py::arg("tol") = 1e-8,
        "Run scenario text, returning (report, exit_code)");

    m.def(
        "selftest",
        []() {
            auto results = run_selftest();
            int failures = 0;
            for (const auto& r : results)
                if (!r.passed) ++failures;
            return failures;
        },
        "Run the acceptance battery quietly, returning the failure count");

    m.def(
        "kinds",
        []() {
            std::vector<std::string> out;
            for (auto k : all_scenario_kinds()) out.emplace_back(kind_name(k));
            return out;
        },
        "All scenario kind tokens");

    m.def(
        "explain",
        [](const std::string& token) {
            auto kind = kind_from_name(token);
            if (!kind) throw DomainError("unknown kind: " + token);
            return explain_kind(*kind);
        },
        py::arg("kind"), "Describe a scenario kind and its keys");

    py::register_exception<ParseError>(m, "ExprParseError");
    py::register_exception<ScenarioError>(m, "ScenarioFileError");
}
