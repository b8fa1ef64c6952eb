/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

// Thin layer: rationals cross as strings, documents cross as JSON text.

#include "nowhereq/config.hpp"
#include "nowhereq/serialize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace nowhereq;

namespace {

using Options = std::map<std::string, std::string>;

RunConfig config_from(const Options &opts)
{
	RunConfig c;
	for (const auto &[k, v] : opts)
		c.set(k, v);
	c.validate();
	return c;
}

std::string compact(const Json &j) { return j.dump(); }

std::optional<Rat> q_of(const std::string &q)
{
	if (q == "inf")
		return std::nullopt;
	return parse_rat(q);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
	m.doc() = "Exact and certified computations for singular L_p constructions";
	py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
	py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

	m.def("parse_rat", [](const std::string &s) { return to_string(parse_rat(s)); });
	m.def("t_n", [](unsigned n) { return compact(tn_json(check_t_bounds(n))); });
	m.def("cantor_stage", [](unsigned n, std::size_t max_listed) { return compact(stage_json(stage(n), max_listed)); },
	      py::arg("n"), py::arg("max_listed") = 4096);
	m.def("left_tail_measure", [](unsigned n, unsigned mm) { return to_string(left_tail_measure(n, mm)); });
	m.def("a_set", [](unsigned n, unsigned depth, unsigned stage_m) { return compact(abuilt_json(a_set(n, depth, stage_m))); },
	      py::arg("n"), py::arg("depth"), py::arg("stage"));
	m.def("seq_value", &seq_value);
	m.def("seq_locate", &seq_locate);

	m.def(
	    "lemma_chain",
	    [](const std::string &p, const std::string &q, unsigned n_max, std::optional<unsigned> j0) {
		    py::gil_scoped_release release;
		    return compact(lemma_json(lemma_chain(ExponentSchedule::standard(parse_rat(p)), parse_rat(q), j0, n_max)));
	    },
	    py::arg("p"), py::arg("q"), py::arg("n_max"), py::arg("j0") = py::none());

	m.def(
	    "certify_divergence",
	    [](unsigned k, const std::string &a, const std::string &b, const std::string &q, const std::string &target,
	       const Options &opts) {
		    RunConfig c = config_from(opts);
		    py::gil_scoped_release release;
		    auto cert = certify_divergence(k, c.trunc, ExponentSchedule::standard(c.p),
						   QInterval(parse_rat(a), parse_rat(b)), q_of(q), parse_rat(target),
						   DivergenceBudget{c.max_tail, c.max_generation}, c.precision);
		    return compact(divergence_json(cert));
	    },
	    py::arg("k"), py::arg("a"), py::arg("b"), py::arg("q"), py::arg("target"), py::arg("options") = Options{});

	m.def("replay_divergence", [](const std::string &doc) {
		DivergenceCertificate c = divergence_from_json(Json::parse(doc));
		py::gil_scoped_release release;
		return compact(divergence_json(replay_divergence(c, ExponentSchedule::standard(c.p))));
	});

	m.def(
	    "certify_membership",
	    [](unsigned k, const Options &opts) {
		    RunConfig c = config_from(opts);
		    py::gil_scoped_release release;
		    return compact(membership_json(
			certify_membership(k, c.trunc, ExponentSchedule::standard(c.p), c.quadrature())));
	    },
	    py::arg("k"), py::arg("options") = Options{});

	m.def(
	    "isometry_check",
	    [](const std::vector<std::string> &a, const Options &opts) {
		    RunConfig c = config_from(opts);
		    std::vector<Rat> coeffs;
		    for (const auto &s : a)
			    coeffs.push_back(parse_rat(s));
		    py::gil_scoped_release release;
		    return compact(
			isometry_json(isometry_check(coeffs, c.trunc, ExponentSchedule::standard(c.p), c.quadrature())));
	    },
	    py::arg("a"), py::arg("options") = Options{});

	m.def(
	    "projection_check",
	    [](unsigned K, unsigned steps, std::uint64_t seed, const Options &opts) {
		    RunConfig c = config_from(opts);
		    py::gil_scoped_release release;
		    return compact(projection_json(projection_check(K, c.trunc, ExponentSchedule::standard(c.p),
								    c.quadrature(), c.p == 1 ? steps : 0, seed)));
	    },
	    py::arg("K"), py::arg("steps") = 0, py::arg("seed") = 20260101, py::arg("options") = Options{});
}
