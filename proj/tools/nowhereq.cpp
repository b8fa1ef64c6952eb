/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

// Command-line front end. Exit codes: 0 verified, 2 undecided or out of
// budget, 1 usage or precondition error.

#include "nowhereq/config.hpp"
#include "nowhereq/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nowhereq;

namespace {

constexpr int kVerified = 0;
constexpr int kUsage = 1;
constexpr int kUndecided = 2;

struct Flags {
	std::string config;
	std::string out;
	std::optional<unsigned> precision, J, L, D, m, Jg, max_tail;
	std::optional<std::string> p, target_width, format;
};

RunConfig resolve(const Flags &f)
{
	RunConfig c = f.config.empty() ? default_config() : load_config_file(f.config);
	auto put = [&c](const char *key, const auto &v) {
		if (v) {
			std::ostringstream s;
			s << *v;
			c.set(key, s.str());
		}
	};
	put("precision", f.precision);
	put("J", f.J);
	put("L", f.L);
	put("D", f.D);
	put("m", f.m);
	put("Jg", f.Jg);
	put("max_tail", f.max_tail);
	put("p", f.p);
	put("target_width", f.target_width);
	put("format", f.format);
	c.validate();
	return c;
}

void emit(const RunConfig &cfg, const Flags &f, const Json &j, const std::string &stem)
{
	std::string text = cfg.format == "compact" ? j.dump() + "\n" : dump(j);
	std::string path = f.out;
	if (path.empty() && !cfg.output_dir.empty()) {
		std::filesystem::create_directories(cfg.output_dir);
		path = (std::filesystem::path(cfg.output_dir) / (stem + ".json")).string();
	}
	if (path.empty()) {
		std::cout << text;
		return;
	}
	std::ofstream o(path, std::ios::binary);
	if (!o)
		throw DomainError("cannot write " + path);
	o << text;
}

int code_of(Verdict v) { return v == Verdict::holds ? kVerified : kUndecided; }

QInterval parse_interval(const std::string &s)
{
	auto comma = s.find(',');
	if (comma == std::string::npos)
		throw DomainError("interval must be given as A,B");
	Rat a = parse_rat(s.substr(0, comma)), b = parse_rat(s.substr(comma + 1));
	if (!(a < b) || a < 0 || b > 1)
		throw DomainError("interval needs 0 <= A < B <= 1");
	return QInterval(a, b);
}

std::optional<Rat> parse_q(const std::string &s)
{
	if (s == "inf" || s == "infinity")
		return std::nullopt;
	return parse_rat(s);
}

std::vector<Rat> parse_list(const std::string &s)
{
	std::vector<Rat> out;
	std::stringstream ss(s);
	std::string item;
	while (std::getline(ss, item, ','))
		out.push_back(parse_rat(item));
	if (out.empty())
		throw DomainError("empty coefficient list");
	return out;
}

unsigned parse_unsigned(const std::string &s, const char *what)
{
	Rat r = parse_rat(s);
	if (!is_integer(r) || r < 0 || r > 100'000'000)
		throw DomainError(std::string(what) + " must be a nonnegative integer");
	return static_cast<unsigned>(r.get_num().get_ui());
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Exact and certified computations for singular functions built on a fat Cantor set"};
	app.require_subcommand(1);
	app.fallthrough(); // global flags may follow the subcommand
	Flags f;
	app.add_option("--config", f.config, "key = value config file (default: $NOWHEREQ_CONFIG)");
	app.add_option("-o,--out", f.out, "write the document to this file");
	app.add_option("--precision", f.precision, "working precision in bits (>= 32)");
	app.add_option("--J", f.J, "series terms of h");
	app.add_option("--L", f.L, "components per level");
	app.add_option("--D", f.D, "hole generation depth for components");
	app.add_option("--m", f.m, "Cantor stage of the mask");
	app.add_option("--Jg", f.Jg, "outer terms of g_k");
	app.add_option("--max-tail", f.max_tail, "largest tail index tried by divergence searches");
	app.add_option("--target-width", f.target_width, "quadrature target width, as a rational");
	app.add_option("--format", f.format, "json or compact");

	int code = kVerified;
	std::function<void()> action;

	// cantor
	auto *cantor = app.add_subcommand("cantor", "stages of the Cantor set");
	cantor->require_subcommand(1);
	std::string cn;
	auto *cstage = cantor->add_subcommand("stage", "stage-n intervals and measure");
	cstage->add_option("N", cn)->required();
	cstage->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			unsigned n = parse_unsigned(cn, "N");
			emit(cfg, f, stage_json(CantorStage(n)), "cantor_stage");
		};
	});
	auto *ctn = cantor->add_subcommand("tn", "t_n and both bound checks");
	ctn->add_option("N", cn)->required();
	ctn->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			emit(cfg, f, tn_json(check_t_bounds(parse_unsigned(cn, "N"))), "t_n");
		};
	});

	// abuilt
	std::string an, adepth = "3", astage = "8";
	auto *abuilt = app.add_subcommand("abuilt", "components and measures of A_n");
	abuilt->add_option("N", an)->required();
	abuilt->add_option("--depth", adepth, "hole generation depth D");
	abuilt->add_option("--stage", astage, "Cantor stage m of each component");
	abuilt->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto a = a_set(parse_unsigned(an, "N"), parse_unsigned(adepth, "depth"),
				       parse_unsigned(astage, "stage"));
			emit(cfg, f, abuilt_json(a), "abuilt");
		};
	});

	// lemma-chain
	std::string lp = "1", lq = "2", lnmax = "40";
	std::optional<unsigned> lj0;
	auto *lemma = app.add_subcommand("lemma-chain", "growth chain of the tail lower bound");
	lemma->add_option("--p", lp);
	lemma->add_option("--q", lq);
	lemma->add_option("--nmax", lnmax);
	lemma->add_option("--j0", lj0);
	lemma->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto sched = ExponentSchedule::standard(parse_rat(lp));
			auto rep = lemma_chain(sched, parse_rat(lq), lj0, parse_unsigned(lnmax, "nmax"),
					       cfg.precision);
			emit(cfg, f, lemma_json(rep), "lemma_chain");
		};
	});

	// certify
	auto *certify = app.add_subcommand("certify", "emit certificates");
	certify->require_subcommand(1);
	std::string gk = "1", interval, cq = "2", target = "10000", replay_file;
	auto *cdiv = certify->add_subcommand("divergence", "certified lower bound for ∫_U |g_k|^q");
	cdiv->add_option("--g", gk, "k of g_k");
	cdiv->add_option("--interval", interval, "U as A,B")->required();
	cdiv->add_option("--q", cq, "exponent q > p, or inf");
	cdiv->add_option("--target", target, "M");
	cdiv->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto sched = ExponentSchedule::standard(cfg.p);
			DivergenceBudget budget{cfg.max_tail, cfg.max_generation};
			auto cert = certify_divergence(parse_unsigned(gk, "g"), cfg.trunc, sched,
						       parse_interval(interval), parse_q(cq), parse_rat(target),
						       budget, cfg.precision);
			emit(cfg, f, divergence_json(cert), "divergence");
			code = code_of(cert.status);
		};
	});
	auto *cmem = certify->add_subcommand("membership", "norm enclosure of g_k");
	cmem->add_option("--g", gk, "k of g_k");
	cmem->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto sched = ExponentSchedule::standard(cfg.p);
			auto cert = certify_membership(parse_unsigned(gk, "g"), cfg.trunc, sched, cfg.quadrature());
			emit(cfg, f, membership_json(cert), "membership");
			code = code_of(cert.contains_one);
		};
	});
	auto *crep = certify->add_subcommand("replay", "recompute a divergence certificate from its witness");
	crep->add_option("FILE", replay_file)->required();
	crep->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			std::ifstream in(replay_file);
			if (!in)
				throw DomainError("cannot read " + replay_file);
			Json j;
			try {
				j = Json::parse(in);
			} catch (const nlohmann::json::exception &e) {
				throw DomainError(std::string("not JSON: ") + e.what());
			}
			DivergenceCertificate c = divergence_from_json(j);
			auto sched = ExponentSchedule::standard(c.p);
			auto out = replay_divergence(c, sched);
			emit(cfg, f, divergence_json(out), "divergence_replay");
			code = code_of(out.status);
		};
	});

	// isometry
	std::string coeffs;
	auto *iso = app.add_subcommand("isometry", "||sum a_k g_k||_p against (sum |a_k|^p)^(1/p)");
	iso->add_option("--coeffs", coeffs, "comma separated rationals a_1,a_2,...")->required();
	iso->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto sched = ExponentSchedule::standard(cfg.p);
			auto rep = isometry_check(parse_list(coeffs), cfg.trunc, sched, cfg.quadrature());
			emit(cfg, f, isometry_json(rep), "isometry");
			code = rep.symbolic_identity ? code_of(rep.ratio_contains_one) : kUndecided;
		};
	});

	// projection
	std::string pk = "4", psteps = "20", pseed = "20260101";
	auto *proj = app.add_subcommand("projection", "Gram matrix and norm bound of the projection");
	proj->add_option("--k", pk, "number K of basis functions");
	proj->add_option("--steps", psteps, "pseudo-random step functions (p = 1 only)");
	proj->add_option("--seed", pseed);
	proj->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto sched = ExponentSchedule::standard(cfg.p);
			unsigned steps = cfg.p == 1 ? parse_unsigned(psteps, "steps") : 0;
			auto rep = projection_check(parse_unsigned(pk, "k"), cfg.trunc, sched, cfg.quadrature(),
						    steps, parse_unsigned(pseed, "seed"));
			emit(cfg, f, projection_json(rep), "projection");
			bool ok = rep.off_diagonal_zero && rep.symbolic_idempotent &&
				  rep.diagonal_contains_one == Verdict::holds;
			for (const auto &s : rep.steps)
				ok = ok && s.contraction == Verdict::holds;
			code = ok ? kVerified : kUndecided;
		};
	});

	// emit plot-data
	auto *emitc = app.add_subcommand("emit", "export data");
	emitc->require_subcommand(1);
	std::string series = "lb", enmax = "40", ep = "1", eq = "2";
	auto *plot = emitc->add_subcommand("plot-data", "CSV: n, t_n, LB_lo, LB_hi, corrected_bound");
	plot->add_option("--series", series)->check(CLI::IsMember({"lb"}));
	plot->add_option("--nmax", enmax);
	plot->add_option("--p", ep);
	plot->add_option("--q", eq);
	plot->callback([&] {
		action = [&] {
			RunConfig cfg = resolve(f);
			auto sched = ExponentSchedule::standard(parse_rat(ep));
			auto rep = lemma_chain(sched, parse_rat(eq), std::nullopt, parse_unsigned(enmax, "nmax"),
					       cfg.precision);
			std::ostringstream csv;
			csv << "n,t_n,LB_lo,LB_hi,corrected_bound\n";
			for (const auto &r : rep.rows)
				csv << r.n << ',' << to_string(r.t) << ',' << r.lb.lower_string() << ','
				    << r.lb.upper_string() << ',' << r.corrected.lower_string() << '\n';
			if (f.out.empty()) {
				std::cout << csv.str();
			} else {
				std::ofstream o(f.out, std::ios::binary);
				if (!o)
					throw DomainError("cannot write " + f.out);
				o << csv.str();
			}
		};
	});

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return kUsage;
	}
	try {
		if (action)
			action();
	} catch (const BudgetExhausted &e) {
		std::cerr << "nowhereq: budget exhausted: " << e.what() << "\n";
		return kUndecided;
	} catch (const DomainError &e) {
		std::cerr << "nowhereq: " << e.what() << "\n";
		return kUsage;
	} catch (const std::exception &e) {
		std::cerr << "nowhereq: " << e.what() << "\n";
		return kUsage;
	}
	return code;
}
