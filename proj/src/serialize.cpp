/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/serialize.hpp"

namespace nowhereq {

namespace {

Json envelope(const char *kind)
{
	return Json{{"schema_version", kSchemaVersion}, {"kind", kind}};
}

Json interval_json(const QInterval &i) { return Json::array({rat_json(i.lo()), rat_json(i.hi())}); }

Json path_json(const ComponentPath &p)
{
	Json chain = Json::array();
	for (const auto &h : p.chain)
		chain.push_back(Json{{"generation", h.generation}, {"index", h.index}});
	return Json{{"level", p.level}, {"chain", chain}};
}

Json verdict_json(Verdict v) { return to_string(v); }

template <class T> T field(const Json &j, const char *key)
{
	if (!j.is_object() || !j.contains(key))
		throw DomainError(std::string("certificate field missing: ") + key);
	try {
		return j.at(key).get<T>();
	} catch (const nlohmann::json::exception &) {
		throw DomainError(std::string("certificate field malformed: ") + key);
	}
}

Rat rat_field(const Json &j, const char *key) { return parse_rat(field<std::string>(j, key)); }

} // namespace

Json enclosure_json(const Enclosure &e)
{
	return Json{{"lo", e.lower_string()}, {"hi", e.upper_string()}};
}

Json rat_json(const Rat &r) { return to_string(r); }

Json truncation_json(const GTruncation &t)
{
	return Json{{"Jg", t.outer_terms},
		    {"J", t.inner.series_terms},
		    {"L", t.inner.components},
		    {"D", t.inner.component_depth},
		    {"m", t.inner.cantor_stage}};
}

Json integral_json(const IntegralResult &r)
{
	Json j{{"infinite", r.infinite},
	       {"budget_exhausted", r.budget_exhausted},
	       {"cells", r.cells},
	       {"max_depth", r.max_depth},
	       {"width", r.width}};
	j["value"] = r.value ? enclosure_json(*r.value) : Json(nullptr);
	return j;
}

Json stage_json(const CantorStage &s, std::size_t max_listed)
{
	Json j = envelope("cantor_stage");
	j["n"] = s.n();
	j["interval_length"] = rat_json(s.interval_length());
	j["interval_count"] = s.interval_count();
	j["measure"] = rat_json(s.measure());
	Json list = Json::array();
	if (s.interval_count() <= max_listed)
		for (const auto &i : s.intervals().intervals())
			list.push_back(interval_json(i));
	j["intervals"] = list;
	j["intervals_listed"] = s.interval_count() <= max_listed;
	return j;
}

Json tn_json(const TBoundCheck &c)
{
	Json j = envelope("t_n");
	j["n"] = c.n;
	j["t_n"] = rat_json(c.t);
	j["stated_bound"] = rat_json(c.stated_bound);
	j["stated_bound_holds"] = c.stated_holds;
	j["valid_bound"] = rat_json(c.valid_bound);
	j["valid_bound_holds"] = c.valid_holds;
	return j;
}

Json abuilt_json(const CBuiltApprox &a, std::size_t max_listed)
{
	Json j = envelope("c_built");
	j["level"] = a.level;
	j["component_depth"] = a.component_depth;
	j["cantor_stage"] = a.cantor_stage;
	j["component_count"] = a.components.size();
	j["realization_measure"] = rat_json(a.realization_measure);
	j["hull_length"] = rat_json(a.hull_length);
	j["omitted_measure"] = rat_json(a.omitted_measure);
	j["lower_bound"] = rat_json(a.lower_bound);
	j["upper_bound"] = rat_json(a.upper_bound);
	j["nominal_measure"] = rat_json(pow2(-static_cast<long>(a.level)));
	Json comps = Json::array();
	for (std::size_t i = 0; i < a.components.size() && i < max_listed; ++i) {
		const auto &c = a.components[i];
		comps.push_back(Json{{"index", c.index}, {"hull", interval_json(c.hull)}, {"path", path_json(c.path)}});
	}
	j["components"] = comps;
	return j;
}

Json lemma_json(const LemmaChainReport &r)
{
	Json j = envelope("lemma_chain");
	j["p"] = rat_json(r.p);
	j["q"] = rat_json(r.q);
	j["j0"] = r.j0;
	j["r_j0"] = rat_json(r.r_j0);
	j["s"] = rat_json(r.s);
	Json rows = Json::array();
	for (const auto &row : r.rows)
		rows.push_back(Json{{"n", row.n},
				    {"t_n", rat_json(row.t)},
				    {"m_tail", rat_json(row.tail_measure)},
				    {"lb", enclosure_json(row.lb)},
				    {"stated_step1_holds", row.step1_holds},
				    {"stated_step2_value", enclosure_json(row.step2)},
				    {"lb_above_step2", verdict_json(row.lb_above_step2)},
				    {"stated_final_claim_holds", row.final_claim_holds},
				    {"corrected_bound", enclosure_json(row.corrected)},
				    {"lb_above_corrected", verdict_json(row.lb_above_corrected)}});
	j["rows"] = rows;
	return j;
}

Json divergence_json(const DivergenceCertificate &c)
{
	Json j = envelope("divergence_certificate");
	j["function"] = Json{{"family", "g_k"}, {"k", c.k}, {"p", rat_json(c.p)}, {"schedule", c.schedule}};
	j["truncation"] = truncation_json(c.trunc);
	j["U"] = interval_json(c.u);
	j["q"] = c.q ? rat_json(*c.q) : Json("inf");
	j["M"] = rat_json(c.target);
	const auto &w = c.witness;
	Json wj{{"outer_index", w.outer_index},
		{"level", w.level},
		{"path", path_json(w.path)},
		{"hull", interval_json(w.hull)},
		{"component_index", w.component_index},
		{"series_term", w.series_term},
		{"tail_n", w.tail_n}};
	wj["point"] = w.point ? rat_json(*w.point) : Json(nullptr);
	j["witness"] = wj;
	j["coefficient"] = c.coefficient;
	j["bound"] = enclosure_json(c.bound);
	j["status"] = verdict_json(c.status);
	j["note"] = c.note;
	j["precision"] = c.precision;
	return j;
}

DivergenceCertificate divergence_from_json(const Json &j)
{
	if (field<std::string>(j, "kind") != "divergence_certificate")
		throw DomainError("not a divergence certificate");
	if (field<std::string>(j, "schema_version") != kSchemaVersion)
		throw DomainError("unsupported schema_version");
	const Json &fn = j.at("function");
	const Json &tr = j.at("truncation");
	GTruncation trunc;
	trunc.outer_terms = field<unsigned>(tr, "Jg");
	trunc.inner.series_terms = field<unsigned>(tr, "J");
	trunc.inner.components = field<unsigned>(tr, "L");
	trunc.inner.component_depth = field<unsigned>(tr, "D");
	trunc.inner.cantor_stage = field<unsigned>(tr, "m");
	const Json &u = j.at("U");
	if (!u.is_array() || u.size() != 2)
		throw DomainError("certificate field malformed: U");
	std::optional<Rat> q;
	if (field<std::string>(j, "q") != "inf")
		q = rat_field(j, "q");
	unsigned precision = field<unsigned>(j, "precision");

	DivergenceCertificate c{field<unsigned>(fn, "k"),
				trunc,
				rat_field(fn, "p"),
				field<std::string>(fn, "schedule"),
				QInterval(parse_rat(u[0].get<std::string>()), parse_rat(u[1].get<std::string>())),
				q,
				rat_field(j, "M"),
				DivergenceWitness{},
				field<std::string>(j, "coefficient"),
				Enclosure(Rat(0), precision),
				Verdict::undecided,
				field<std::string>(j, "note"),
				precision};
	const Json &w = j.at("witness");
	auto &cw = c.witness;
	cw.outer_index = field<unsigned>(w, "outer_index");
	cw.level = field<unsigned>(w, "level");
	cw.component_index = field<std::uint64_t>(w, "component_index");
	cw.series_term = field<unsigned>(w, "series_term");
	cw.tail_n = field<unsigned>(w, "tail_n");
	const Json &h = w.at("hull");
	cw.hull = QInterval(parse_rat(h.at(0).get<std::string>()), parse_rat(h.at(1).get<std::string>()));
	const Json &path = w.at("path");
	cw.path.level = field<unsigned>(path, "level");
	for (const auto &step : path.at("chain"))
		cw.path.chain.push_back({field<unsigned>(step, "generation"), field<std::uint64_t>(step, "index")});
	if (!w.at("point").is_null())
		cw.point = parse_rat(w.at("point").get<std::string>());
	return c;
}

Json membership_json(const MembershipCertificate &c)
{
	Json j = envelope("membership_certificate");
	j["function"] = Json{{"family", "g_k"}, {"k", c.k}, {"p", rat_json(c.p)}, {"schedule", c.schedule}};
	j["truncation"] = truncation_json(c.trunc);
	j["weights"] = Json{{"included_pth", rat_json(c.included)},
			    {"component_tail_pth", rat_json(c.component_tail)},
			    {"outer_tail_pth", rat_json(c.outer_tail)},
			    {"sum_to_one", c.weights_sum_to_one}};
	j["series_tail"] = rat_json(c.series_tail);
	j["normalizer"] = enclosure_json(c.normalizer);
	j["normalizer_run"] = integral_json(c.normalizer_run);
	j["ratio_pth"] = enclosure_json(c.ratio);
	j["norm_pth"] = enclosure_json(c.norm_pth);
	j["norm"] = enclosure_json(c.norm);
	j["literal_weight_norm"] = enclosure_json(c.literal_weight_norm);
	j["contains_one"] = verdict_json(c.contains_one);
	j["precision"] = c.precision;
	return j;
}

Json isometry_json(const IsometryReport &r)
{
	Json j = envelope("isometry_report");
	Json a = Json::array();
	for (const auto &x : r.a)
		a.push_back(rat_json(x));
	j["a"] = a;
	j["p"] = rat_json(r.p);
	j["truncation"] = truncation_json(r.trunc);
	j["supports"] = Json{{"count", r.supports.supports},
			     {"nested_pairs", r.supports.nested_pairs},
			     {"almost_disjoint", r.supports.almost_disjoint}};
	Json terms = Json::array();
	for (const auto &t : r.terms)
		terms.push_back(Json{{"terms", t.terms},
				     {"coefficients_match", t.coefficients_match},
				     {"weight_sum_pth", rat_json(t.weight_sum)}});
	j["terms"] = terms;
	j["symbolic_identity"] = r.symbolic_identity;
	j["symbolic_pth_sum"] = r.symbolic_pth_sum ? rat_json(*r.symbolic_pth_sum) : Json(nullptr);
	j["coeff_pth_sum"] = r.coeff_pth_sum ? rat_json(*r.coeff_pth_sum) : Json(nullptr);
	j["lhs"] = enclosure_json(r.lhs);
	j["rhs"] = enclosure_json(r.rhs);
	j["ratio"] = enclosure_json(r.ratio);
	j["ratio_contains_one"] = verdict_json(r.ratio_contains_one);
	j["precision"] = r.precision;
	return j;
}

Json projection_json(const ProjectionReport &r)
{
	Json j = envelope("projection_report");
	j["K"] = r.K;
	j["p"] = rat_json(r.p);
	Json gram = Json::array();
	for (const auto &row : r.gram) {
		Json jr = Json::array();
		for (const auto &e : row)
			jr.push_back(enclosure_json(e));
		gram.push_back(jr);
	}
	j["gram"] = gram;
	j["off_diagonal_zero"] = r.off_diagonal_zero;
	j["symbolic_idempotent"] = r.symbolic_idempotent;
	j["diagonal_contains_one"] = verdict_json(r.diagonal_contains_one);
	j["max_diagonal_width"] = r.max_diagonal_width;
	Json steps = Json::array();
	for (const auto &s : r.steps) {
		Json phi = Json::array();
		for (const auto &e : s.phi)
			phi.push_back(enclosure_json(e));
		steps.push_back(Json{{"seed", s.seed},
				     {"f_norm", rat_json(s.f_norm)},
				     {"phi", phi},
				     {"pf_norm", enclosure_json(s.pf_norm)},
				     {"contraction", verdict_json(s.contraction)}});
	}
	j["step_functions"] = steps;
	j["precision"] = r.precision;
	return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace nowhereq
