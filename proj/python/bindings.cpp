#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multfam/blowups.hpp"
#include "multfam/cli.hpp"
#include "multfam/io.hpp"
#include "multfam/multiplicities.hpp"
#include "multfam/rational.hpp"
#include "multfam/report.hpp"
#include "multfam/theorem_lab.hpp"

namespace py = pybind11;
using namespace multfam;

namespace {

using Fraction = std::pair<std::string, std::string>;

Fraction fraction(const Rational &q) { return {q.get_num().get_str(), q.get_den().get_str()}; }

MonomialIdeal make_ideal(int vars, std::vector<ExponentVector> gens, std::vector<ExponentVector> quotient)
{
    auto R = quotient.empty() ? AmbientRing::polynomial(vars) : AmbientRing::quotient(vars, std::move(quotient));
    return MonomialIdeal(R, std::move(gens));
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Multiplicities of graded families of monomial ideals";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    m.def(
        "multiplicity",
        [](int vars, std::vector<ExponentVector> gens, std::vector<ExponentVector> quotient) {
            return fraction(multiplicity(make_ideal(vars, std::move(gens), std::move(quotient))));
        },
        py::arg("vars"), py::arg("gens"), py::arg("quotient") = std::vector<ExponentVector>{});

    m.def(
        "colength",
        [](int vars, std::vector<ExponentVector> gens, std::vector<ExponentVector> quotient) {
            return colength(make_ideal(vars, std::move(gens), std::move(quotient))).get_str();
        },
        py::arg("vars"), py::arg("gens"), py::arg("quotient") = std::vector<ExponentVector>{});

    m.def(
        "mixed_multiplicities",
        [](int vars, std::vector<std::vector<ExponentVector>> ideals) {
            std::vector<MonomialIdeal> is;
            for (auto &g : ideals) {
                is.push_back(make_ideal(vars, std::move(g), {}));
            }
            std::vector<std::pair<std::vector<int>, Fraction>> out;
            for (const auto &[alpha, v] : mixed_multiplicities(is).coefficients) {
                out.emplace_back(alpha, fraction(v));
            }
            return out;
        },
        py::arg("vars"), py::arg("ideals"));

    m.def(
        "family_report",
        [](const std::string &text, std::int64_t nmax, bool volume) {
            const auto doc = Document::parse(text, "<family>");
            const auto F = family_from(doc);
            py::gil_scoped_release release;
            return dump(to_json(volume ? family_volume(F, nmax) : family_multiplicity(F, nmax)));
        },
        py::arg("text"), py::arg("nmax") = 64, py::arg("volume") = false);

    m.def(
        "unload",
        [](int size, std::vector<std::pair<int, int>> prox, std::vector<std::string> targets) {
            std::vector<Rational> t;
            for (const auto &s : targets) {
                t.push_back(parse_rational(s));
            }
            const auto D = unload(ProximityCluster::from_pairs(size, prox), t);
            return py::make_tuple(D.v, D.m, divisor_colength(D).get_str(), divisor_multiplicity(D).get_str());
        },
        py::arg("size"), py::arg("prox"), py::arg("targets"));

    m.def("registry_ids", &registry_ids);
    m.def("reproduce", [](const std::string &id) {
        py::gil_scoped_release release;
        return dump(to_json(reproduce(id)));
    });

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
