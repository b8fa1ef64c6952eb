/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace nowhereq {

namespace {

Enclosure exact(const Rat &r, unsigned prec) { return Enclosure(r, prec); }

Enclosure abs_enclosure(const Enclosure &e)
{
	if (e.lower() >= 0)
		return e;
	if (e.upper() <= 0)
		return -e;
	Rat m = std::max<Rat>(-e.lower(), e.upper());
	return Enclosure(Rat(0), m, e.precision());
}

Enclosure pth_root(const Enclosure &x, const Rat &p)
{
	return p == 1 ? x : x.pow(1 / p);
}

// a <= b from enclosures.
Verdict at_most(const Enclosure &a, const Rat &b)
{
	if (a.upper() <= b)
		return Verdict::holds;
	if (a.lower() > b)
		return Verdict::fails;
	return Verdict::undecided;
}

Verdict contains_verdict(const Enclosure &e, const Rat &x)
{
	if (e.contains(x))
		return Verdict::holds;
	return Verdict::fails; // e encloses the true value, so x is excluded
}

// Number of components the truncation keeps at this level.
std::uint64_t kept_components(unsigned level, const FTruncation &trunc)
{
	if (level == 1)
		return 1;
	return std::min<std::uint64_t>(trunc.components, component_count(level, trunc.component_depth));
}

unsigned level_of(unsigned k, unsigned j)
{
	std::uint64_t n = seq_value(k, j);
	if (n > 1'000'000)
		throw DomainError("level n_j = " + std::to_string(n) + " is out of range");
	return static_cast<unsigned>(n);
}

// c_j = 2^-j ||h_j||_p^-1, symbolic.
CoeffExpr series_coeff(unsigned j, const ExponentSchedule &sched)
{
	return CoeffExpr(pow2(-static_cast<long>(j))) * CoeffExpr::power(sched.norm_pow(j), -1 / sched.p());
}

// (w_j w_l)^p for the l-th component of level n_j.
CoeffExpr weight_pth(unsigned j, unsigned level, std::uint64_t l, const Rat &p)
{
	CoeffExpr w = CoeffExpr::power(2, Rat(-static_cast<long>(j)) / p);
	if (level > 1)
		w = w * CoeffExpr::power(2, Rat(-static_cast<long>(l)) / p);
	return w.pow(p);
}

} // namespace

NormalizerEstimate normalizer_estimate(unsigned series_terms, const ExponentSchedule &sched,
				       const QuadratureOptions &opt)
{
	using Key = std::tuple<unsigned, std::string, std::string, std::string, unsigned, std::size_t>;
	static std::mutex mu;
	static std::map<Key, NormalizerEstimate> cache;
	Key key{series_terms, to_string(sched.p()), sched.name(), to_string(opt.target_width),
		opt.precision, opt.cell_budget};
	const bool cacheable = sched.is_standard();
	if (cacheable) {
		std::lock_guard<std::mutex> lock(mu);
		auto it = cache.find(key);
		if (it != cache.end())
			return it->second;
	}

	const unsigned prec = opt.precision;
	SingularFunction ht = build_htilde(series_terms, sched);
	std::vector<Enclosure> c;
	std::vector<Rat> e;
	for (const auto &t : ht.terms) {
		c.push_back(t.coeff.evaluate({}, prec));
		e.push_back(t.exponent);
	}
	const Rat &p = sched.p();
	QuadratureOptions sub = opt;
	sub.target_width = opt.target_width / 4;
	IntegralResult run = integrate_group(c, e, p, MeasureKind::cantor, 0,
					     QIntervalSet{QInterval(0, 1)}, sub);
	Enclosure on_c = pth_root(*run.value, p);
	Enclosure n(on_c.lower(), on_c.upper() + pow2(-static_cast<long>(series_terms)), prec);
	NormalizerEstimate out{on_c, n, run};
	if (cacheable) {
		std::lock_guard<std::mutex> lock(mu);
		cache.emplace(key, out);
	}
	return out;
}

// Lemma chain

LemmaChainReport lemma_chain(const ExponentSchedule &sched, const Rat &q, std::optional<unsigned> j0,
			     unsigned n_max, unsigned precision)
{
	const Rat &p = sched.p();
	if (!(q > p))
		throw DomainError("need q > p (q = " + to_string(q) + ", p = " + to_string(p) + ")");
	if (n_max == 0)
		throw DomainError("n_max must be >= 1");
	unsigned smallest = sched.first_index_below(q);
	unsigned jj = j0.value_or(smallest);
	if (jj == 0 || !(sched.r(jj) < q))
		throw DomainError("r_j0 must be below q; the smallest valid j0 is " + std::to_string(smallest));

	LemmaChainReport rep;
	rep.p = p;
	rep.q = q;
	rep.j0 = jj;
	rep.r_j0 = sched.r(jj);
	rep.s = q / rep.r_j0;
	const Rat &s = rep.s;
	for (unsigned n = 1; n <= n_max; ++n) {
		const long nl = static_cast<long>(n);
		LemmaRow row{n,
			     t_right(n),
			     pow2(-nl),
			     Enclosure(precision),
			     false,
			     Enclosure(precision),
			     Verdict::undecided,
			     false,
			     Enclosure(precision),
			     Verdict::undecided};
		row.lb = exact(row.tail_measure, precision) * rat_pow(row.t, -s, precision);
		row.step1_holds = row.t < pow2(3 - 2 * nl);
		row.step2 = rat_pow(2, s * (2 * nl - 3) - nl, precision);
		row.lb_above_step2 = less(row.step2, row.lb);
		// 2^-n 2^(s(2n-3)) vs 2^((2s-1)n): exponents differ by -3s.
		row.final_claim_holds = s * (2 * nl - 3) - nl > (2 * s - 1) * nl;
		row.corrected = rat_pow(2, (s - 1) * nl - s, precision);
		// LB(n) >= 2^((s-1)n - s) is equivalent to t_n <= 2^(1-n) since s > 0.
		row.lb_above_corrected = row.t <= pow2(1 - nl) ? Verdict::holds : Verdict::fails;
		rep.rows.push_back(std::move(row));
	}
	return rep;
}

// Divergence

namespace {

struct Located {
	unsigned j;
	unsigned level;
	Component comp;
};

std::optional<Located> locate_witness(unsigned k, const GTruncation &trunc, const QInterval &u,
				      unsigned max_generation, std::string &why)
{
	for (unsigned j = 1; j <= trunc.outer_terms; ++j) {
		unsigned level = level_of(k, j);
		Component c{ComponentPath{}, QInterval(0, 1), 1};
		try {
			c = find_component_in(u, level, max_generation);
		} catch (const BudgetExhausted &) {
			continue;
		}
		if (c.index > kept_components(level, trunc.inner)) {
			why = "components inside U exist but lie beyond the truncation L";
			continue;
		}
		return Located{j, level, c};
	}
	if (why.empty())
		why = "no component of the truncated g_k lies inside U";
	return std::nullopt;
}

// (w_j w_l |I|^(-1/p) c_j0), without the normalizer.
CoeffExpr witness_coeff(const DivergenceWitness &w, const ExponentSchedule &sched)
{
	const Rat &p = sched.p();
	CoeffExpr c = CoeffExpr::power(2, Rat(-static_cast<long>(w.outer_index)) / p);
	if (w.level > 1)
		c = c * CoeffExpr::power(2, Rat(-static_cast<long>(w.component_index)) / p);
	c = c * CoeffExpr::power(w.hull.length(), -1 / p) * series_coeff(w.series_term, sched);
	return c;
}

// log2 of the rigorous bound, in floating point, to place the scan.
double log2_t(unsigned n)
{
	double nd = n;
	return (nd - 1) + std::log2(1 + std::ldexp(1.0, 1 - static_cast<int>(n))) - (2 * nd - 1);
}

struct BoundSetup {
	Enclosure prefactor; // coefficient^q |I| (or coefficient for q = inf)
	Rat exponent;        // t_n^-exponent
	bool with_tail;      // times 2^-n
};

Enclosure bound_at(const BoundSetup &b, unsigned n, unsigned prec)
{
	Enclosure v = b.prefactor * rat_pow(t_right(n), -b.exponent, prec);
	return b.with_tail ? v.scaled(pow2(-static_cast<long>(n))) : v;
}

void finish_bound(DivergenceCertificate &cert, const BoundSetup &b, unsigned n)
{
	cert.witness.tail_n = n;
	cert.bound = bound_at(b, n, cert.precision);
	cert.status = cert.bound.lower() >= cert.target ? Verdict::holds : Verdict::undecided;
	if (!cert.q)
		cert.witness.point = cert.witness.hull.lo() + cert.witness.hull.length() * t_right(n);
}

BoundSetup make_setup(const DivergenceCertificate &cert, const ExponentSchedule &sched)
{
	CoeffExpr c = witness_coeff(cert.witness, sched);
	const Rat e = sched.exponent(cert.witness.series_term);
	if (!cert.q)
		return BoundSetup{c.evaluate({}, cert.precision), e, false};
	CoeffExpr cq = c.pow(*cert.q);
	Enclosure pre = cq.evaluate({}, cert.precision).scaled(cert.witness.hull.length());
	return BoundSetup{pre, *cert.q * e, true};
}

} // namespace

DivergenceCertificate certify_divergence(unsigned k, const GTruncation &trunc,
					 const ExponentSchedule &sched, const QInterval &u,
					 std::optional<Rat> q, const Rat &target,
					 const DivergenceBudget &budget, unsigned precision)
{
	const Rat &p = sched.p();
	if (k == 0)
		throw DomainError("k must be >= 1");
	if (u.degenerate())
		throw DomainError("U must be a nondegenerate interval");
	if (q && !(*q > p))
		throw DomainError("need q > p (q = " + to_string(*q) + ", p = " + to_string(p) + ")");
	if (!(target > 0))
		throw DomainError("target M must be positive");

	DivergenceCertificate cert{k,
				   trunc,
				   p,
				   sched.name(),
				   u,
				   q,
				   target,
				   DivergenceWitness{},
				   "",
				   Enclosure(Rat(0), precision),
				   Verdict::undecided,
				   "",
				   precision};
	unsigned j0 = q ? sched.first_index_below(*q) : 1;
	if (j0 > trunc.inner.series_terms)
		throw DomainError("series truncation J = " + std::to_string(trunc.inner.series_terms) +
				  " does not reach j0 = " + std::to_string(j0));

	std::string why;
	auto loc = locate_witness(k, trunc, u, budget.max_generation, why);
	if (!loc) {
		cert.note = why;
		return cert;
	}
	DivergenceWitness &w = cert.witness;
	w.outer_index = loc->j;
	w.level = loc->level;
	w.path = loc->comp.path;
	w.hull = loc->comp.hull;
	w.component_index = loc->comp.index;
	w.series_term = j0;

	BoundSetup setup = make_setup(cert, sched);
	cert.coefficient = (q ? witness_coeff(w, sched).pow(*q) : witness_coeff(w, sched)).to_string();

	// Floating point places the scan; the enclosure decides.
	double log2_pre = std::log2(setup.prefactor.lower_double());
	double log2_m = std::log2(target.get_d());
	double e = setup.exponent.get_d();
	unsigned start = 1;
	for (unsigned n = 1; n <= budget.max_tail; ++n) {
		double v = log2_pre - e * log2_t(n) - (setup.with_tail ? double(n) : 0.0);
		if (v >= log2_m) {
			start = n > 2 ? n - 2 : 1;
			break;
		}
		start = n;
	}
	for (unsigned n = start; n <= budget.max_tail; ++n) {
		finish_bound(cert, setup, n);
		if (cert.status == Verdict::holds) {
			cert.note = "lower bound reaches M";
			return cert;
		}
	}
	cert.note = "tail index budget exhausted before the bound reached M";
	return cert;
}

DivergenceCertificate replay_divergence(const DivergenceCertificate &cert, const ExponentSchedule &sched)
{
	DivergenceCertificate out = cert;
	const DivergenceWitness &w = cert.witness;
	auto reject = [&](const std::string &why) {
		out.status = Verdict::undecided;
		out.note = "replay rejected: " + why;
		return out;
	};
	if (w.level == 0 || w.tail_n == 0)
		return reject("certificate carries no witness");
	if (sched.p() != cert.p || sched.name() != cert.schedule)
		return reject("schedule differs");
	if (seq_value(cert.k, w.outer_index) != w.level || w.path.level != w.level)
		return reject("level does not match n_j^k");
	if (!(hull_of(w.path) == w.hull) || canonical_index(w.path) != w.component_index)
		return reject("component path does not reproduce hull or index");
	if (!lies_in(w.hull, cert.u))
		return reject("hull not inside U");
	if (w.component_index > kept_components(w.level, cert.trunc.inner))
		return reject("component not kept by the truncation");
	if (cert.q && !(sched.r(w.series_term) < *cert.q))
		return reject("r_j0 is not below q");
	BoundSetup setup = make_setup(out, sched);
	finish_bound(out, setup, w.tail_n);
	return out;
}

// Membership

WeightSums weight_sums(unsigned k, const GTruncation &trunc, const ExponentSchedule &sched)
{
	const Rat &p = sched.p();
	WeightSums ws{0, 0, pow2(-static_cast<long>(trunc.outer_terms))};
	for (unsigned j = 1; j <= trunc.outer_terms; ++j) {
		unsigned level = level_of(k, j);
		std::uint64_t kept = kept_components(level, trunc.inner);
		for (std::uint64_t l = 1; l <= kept; ++l) {
			CoeffExpr w = weight_pth(j, level, l, p);
			if (!w.is_rational())
				throw DomainError("weight power did not reduce to a rational");
			ws.included += w.factor();
		}
		if (level > 1)
			ws.component_tail += pow2(-static_cast<long>(j)) * pow2(-static_cast<long>(kept));
	}
	return ws;
}

MembershipCertificate certify_membership(unsigned k, const GTruncation &trunc,
					 const ExponentSchedule &sched, const QuadratureOptions &opt)
{
	if (k == 0)
		throw DomainError("k must be >= 1");
	const Rat &p = sched.p();
	const unsigned prec = opt.precision;
	WeightSums ws = weight_sums(k, trunc, sched);
	NormalizerEstimate ne = normalizer_estimate(trunc.inner.series_terms, sched, opt);

	Rat a = ne.normalizer.lower(), b = ne.normalizer.upper();
	Enclosure lo = Enclosure(a / b, prec).pow(p);
	Enclosure hi = Enclosure(b / a, prec).pow(p);
	Enclosure ratio(lo.lower(), hi.upper(), prec);
	Rat tails = ws.component_tail + ws.outer_tail;
	Enclosure norm_pth = ratio.scaled(ws.included) + exact(tails, prec);
	Enclosure norm = pth_root(norm_pth, p);
	Enclosure literal = (rat_pow(2, p, prec) - exact(1, prec)).pow(-2 / p);

	return MembershipCertificate{k,
				     trunc,
				     p,
				     sched.name(),
				     ws.included,
				     ws.component_tail,
				     ws.outer_tail,
				     pow2(-static_cast<long>(trunc.inner.series_terms)),
				     ws.included + tails == 1,
				     ne.normalizer,
				     ratio,
				     norm_pth,
				     norm,
				     literal,
				     contains_verdict(norm, 1),
				     ne.run,
				     prec};
}

// Supports and terms

SupportCheck check_supports(const std::vector<unsigned> &ks, const GTruncation &trunc)
{
	struct Support {
		QInterval hull;
		unsigned mask;
	};
	std::vector<Support> all;
	for (unsigned k : ks) {
		if (k == 0)
			throw DomainError("k must be >= 1");
		for (unsigned j = 1; j <= trunc.outer_terms; ++j) {
			unsigned level = level_of(k, j);
			if (level == 1) {
				all.push_back({QInterval(0, 1), trunc.inner.cantor_stage});
				continue;
			}
			for (const auto &c : fj_components(level, trunc.inner))
				all.push_back({c.hull, trunc.inner.cantor_stage});
		}
	}
	std::sort(all.begin(), all.end(), [](const Support &x, const Support &y) {
		if (x.hull.lo() != y.hull.lo())
			return x.hull.lo() < y.hull.lo();
		return x.hull.hi() > y.hull.hi();
	});

	SupportCheck out;
	out.supports = all.size();
	std::vector<const Support *> open;
	for (const auto &s : all) {
		while (!open.empty() && open.back()->hull.hi() <= s.hull.lo())
			open.pop_back();
		if (!open.empty()) {
			const Support &top = *open.back();
			if (top.hull == s.hull || !top.hull.contains(s.hull)) {
				out.almost_disjoint = false;
				return out;
			}
			auto [rlo, rhi] = relative_coordinates(s.hull, top.hull);
			if (!stage_avoids(top.mask, rlo, rhi)) {
				out.almost_disjoint = false;
				return out;
			}
			++out.nested_pairs;
		}
		open.push_back(&s);
	}
	return out;
}

SymbolicTermCheck check_terms(unsigned k, const GTruncation &trunc, const ExponentSchedule &sched)
{
	const Rat &p = sched.p();
	SingularFunction g = build_gk(k, trunc, sched);
	SymbolicTermCheck out;
	out.terms = g.terms.size();
	out.weight_sum = 0;
	std::set<std::pair<unsigned, std::uint64_t>> seen;
	for (const auto &t : g.terms) {
		if (!t.component) {
			out.coefficients_match = false;
			continue;
		}
		const ComponentTag &tag = *t.component;
		CoeffExpr expect = weight_pth(tag.outer_index, tag.level, tag.index, p);
		CoeffExpr got = t.coeff.pow(p) * CoeffExpr(t.support.length()) *
				series_coeff(t.series_index, sched).pow(-p) * CoeffExpr::normalizer(p);
		if (!(got == expect))
			out.coefficients_match = false;
		if (seen.insert({tag.outer_index, tag.index}).second)
			out.weight_sum += expect.factor();
	}
	return out;
}

IsometryReport isometry_check(const std::vector<Rat> &a, const GTruncation &trunc,
			      const ExponentSchedule &sched, const QuadratureOptions &opt)
{
	const Rat &p = sched.p();
	const unsigned prec = opt.precision;
	std::vector<unsigned> ks;
	for (std::size_t i = 0; i < a.size(); ++i)
		if (a[i] != 0)
			ks.push_back(static_cast<unsigned>(i + 1));
	if (ks.empty())
		throw DomainError("coefficient vector is zero");

	IsometryReport rep{a,
			   p,
			   trunc,
			   check_supports(ks, trunc),
			   {},
			   false,
			   std::nullopt,
			   std::nullopt,
			   Enclosure(prec),
			   Enclosure(prec),
			   Enclosure(prec),
			   Verdict::undecided,
			   prec};
	NormalizerEstimate ne = normalizer_estimate(trunc.inner.series_terms, sched, opt);
	Rat na = ne.normalizer.lower(), nb = ne.normalizer.upper();
	Enclosure rho(Enclosure(na / nb, prec).pow(p).lower(), Enclosure(nb / na, prec).pow(p).upper(), prec);

	bool symbolic = rep.supports.almost_disjoint;
	Enclosure lhs_pth(Rat(0), prec), rhs_pth(Rat(0), prec);
	const bool integer_p = is_integer(p);
	Rat sym_lhs = 0, sym_rhs = 0;
	for (unsigned k : ks) {
		const Rat ak = abs(a[k - 1]);
		SymbolicTermCheck tc = check_terms(k, trunc, sched);
		WeightSums ws = weight_sums(k, trunc, sched);
		symbolic = symbolic && tc.coefficients_match && tc.weight_sum == ws.included &&
			   ws.included + ws.component_tail + ws.outer_tail == 1;
		rep.terms.push_back(std::move(tc));
		if (integer_p) {
			Rat apow = ipow(ak, p.get_num().get_si());
			sym_lhs += apow * (ws.included + ws.component_tail + ws.outer_tail);
			sym_rhs += apow;
		}
		Enclosure apow = rat_pow(ak, p, prec);
		lhs_pth += apow * (rho.scaled(ws.included) + exact(ws.component_tail + ws.outer_tail, prec));
		rhs_pth += apow;
	}
	if (integer_p) {
		rep.symbolic_pth_sum = sym_lhs;
		rep.coeff_pth_sum = sym_rhs;
		symbolic = symbolic && sym_lhs == sym_rhs;
	}
	rep.symbolic_identity = symbolic;
	rep.lhs = pth_root(lhs_pth, p);
	rep.rhs = pth_root(rhs_pth, p);
	rep.ratio = pth_root(lhs_pth / rhs_pth, p);
	rep.ratio_contains_one = contains_verdict(rep.ratio, 1);
	return rep;
}

// Step functions and projection

void StepFunction::validate() const
{
	if (breaks.size() < 2 || values.size() + 1 != breaks.size())
		throw DomainError("step function needs breaks.size() == values.size() + 1 >= 2");
	if (breaks.front() != 0 || breaks.back() != 1)
		throw DomainError("step function must cover [0,1]");
	for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
		if (!(breaks[i] < breaks[i + 1]))
			throw DomainError("step function breaks must increase strictly");
}

Rat StepFunction::lp_norm_pth(const Rat &p) const
{
	validate();
	if (!is_integer(p) || p < 1)
		throw DomainError("exact step-function norm needs an integer p >= 1");
	long pi = p.get_num().get_si();
	Rat s = 0;
	for (std::size_t i = 0; i < values.size(); ++i)
		s += ipow(abs(values[i]), pi) * (breaks[i + 1] - breaks[i]);
	return s;
}

Rat StepFunction::sup_norm() const
{
	Rat m = 0;
	for (const auto &v : values)
		m = std::max<Rat>(m, abs(v));
	return m;
}

StepFunction random_step_function(std::uint64_t seed, unsigned cells)
{
	if (cells == 0 || cells > 1000)
		throw DomainError("cells must be in [1, 1000]");
	// splitmix64: fixed output on every platform.
	std::uint64_t state = seed;
	auto next = [&state]() {
		std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
		return z ^ (z >> 31);
	};
	const long den = 4096;
	std::set<long> cuts;
	while (cuts.size() + 1 < cells)
		cuts.insert(1 + static_cast<long>(next() % (den - 1)));
	StepFunction f;
	f.breaks.push_back(0);
	for (long c : cuts)
		f.breaks.push_back(make_rat(c, den));
	f.breaks.push_back(1);
	for (unsigned i = 0; i < cells; ++i) {
		long num = static_cast<long>(next() % 33) - 16;
		long d = 1 + static_cast<long>(next() % 8);
		f.values.push_back(make_rat(num, d));
	}
	return f;
}

namespace {

// ∫_(supp g_k) f with two-sided bounds.
Enclosure integrate_over_row(const StepFunction &f, unsigned k, const ProjectionOptions &popt,
			     unsigned prec)
{
	f.validate();
	Rat lo = 0, hi = 0;
	const long c = 1L << (k - 1);
	unsigned j = 1;
	for (;; ++j) {
		std::uint64_t n = seq_value(k, j);
		if (n > popt.max_level)
			break;
		std::vector<std::pair<Rat, Rat>> cdf;
		for (const auto &x : f.breaks)
			cdf.push_back(a_set_cdf_bounds(static_cast<unsigned>(n), x, popt.cdf_depth));
		for (std::size_t i = 0; i < f.values.size(); ++i) {
			Rat len = f.breaks[i + 1] - f.breaks[i];
			Rat mlo = std::max<Rat>(0, cdf[i + 1].first - cdf[i].second);
			Rat mhi = std::min<Rat>(len, cdf[i + 1].second - cdf[i].first);
			const Rat &v = f.values[i];
			lo += std::min<Rat>(v * mlo, v * mhi);
			hi += std::max<Rat>(v * mlo, v * mhi);
		}
	}
	// Remaining levels n_j, n_j + 2c, ... carry 2^-n_j / (1 - 2^-2c).
	long first = static_cast<long>(seq_value(k, j));
	Rat tail = pow2(-first) / (1 - pow2(-2 * c));
	Rat slack = f.sup_norm() * tail;
	return Enclosure(lo - slack, hi + slack, prec);
}

} // namespace

Enclosure projection_coeff(const StepFunction &f, unsigned k, const Rat &p, const ProjectionOptions &popt,
			   unsigned precision)
{
	if (k == 0 || k > 32)
		throw DomainError("k must be in [1, 32]");
	if (p != 1)
		throw DomainError("projection of general inputs is implemented for p = 1 only; "
				  "for p > 1 use basis inputs");
	return integrate_over_row(f, k, popt, precision);
}

Enclosure projection_coeff_basis(unsigned k_basis, unsigned k, const MembershipCertificate &member)
{
	if (k_basis == 0 || k == 0)
		throw DomainError("indices must be >= 1");
	if (k_basis != k) {
		// Supports lie in different rows of the sequence family.
		if (seq_locate(seq_value(k_basis, 1)).first == k)
			throw DomainError("rows of the sequence family overlap");
		return Enclosure(Rat(0), member.precision);
	}
	if (member.k != k)
		throw DomainError("membership certificate is for another g_k");
	return member.norm_pth;
}

ProjectionReport projection_check(unsigned K, const GTruncation &trunc, const ExponentSchedule &sched,
				  const QuadratureOptions &opt, unsigned step_cases, std::uint64_t seed,
				  const ProjectionOptions &popt)
{
	if (K == 0)
		throw DomainError("K must be >= 1");
	const Rat &p = sched.p();
	const unsigned prec = opt.precision;
	ProjectionReport rep{K, p, {}, true, true, Verdict::holds, 0.0, {}, prec};

	std::vector<MembershipCertificate> members;
	for (unsigned k = 1; k <= K; ++k)
		members.push_back(certify_membership(k, trunc, sched, opt));
	// Rows of the family are disjoint: an exact check on the levels in use.
	for (unsigned k = 1; k <= K; ++k)
		for (unsigned j = 1; j <= trunc.outer_terms; ++j)
			if (seq_locate(seq_value(k, j)) != std::pair<std::uint64_t, std::uint64_t>{k, j})
				rep.off_diagonal_zero = false;

	rep.gram.assign(K, std::vector<Enclosure>(K, Enclosure(Rat(0), prec)));
	for (unsigned k = 1; k <= K; ++k) {
		const auto &m = members[k - 1];
		rep.symbolic_idempotent = rep.symbolic_idempotent && m.weights_sum_to_one;
		for (unsigned kb = 1; kb <= K; ++kb)
			rep.gram[k - 1][kb - 1] = projection_coeff_basis(kb, k, m);
		const Enclosure &d = rep.gram[k - 1][k - 1];
		rep.max_diagonal_width = std::max(rep.max_diagonal_width, d.width_double());
		if (!d.contains(Rat(1)))
			rep.diagonal_contains_one = Verdict::fails;
	}
	if (!rep.off_diagonal_zero)
		rep.symbolic_idempotent = false;

	if (step_cases > 0 && p != 1)
		throw DomainError("step-function projection checks are implemented for p = 1 only");
	for (unsigned s = 0; s < step_cases; ++s) {
		ProjectionReport::StepCase sc{seed + s, 0, {}, Enclosure(Rat(0), prec), Verdict::undecided};
		StepFunction f = random_step_function(sc.seed, 8);
		sc.f_norm = f.lp_norm_pth(1);
		Enclosure total(Rat(0), prec);
		for (unsigned k = 1; k <= K; ++k) {
			Enclosure phi = projection_coeff(f, k, p, popt, prec);
			// ||g_k||_1 = 1 exactly once the symbolic identity holds.
			Enclosure gnorm = rep.symbolic_idempotent ? exact(1, prec) : members[k - 1].norm;
			total += abs_enclosure(phi) * gnorm;
			sc.phi.push_back(std::move(phi));
		}
		sc.pf_norm = total;
		sc.contraction = at_most(total, sc.f_norm);
		rep.steps.push_back(std::move(sc));
	}
	return rep;
}

std::vector<std::pair<Enclosure, unsigned>> projection_apply(const StepFunction &f, unsigned K, const Rat &p,
							     const ProjectionOptions &popt, unsigned precision)
{
	std::vector<std::pair<Enclosure, unsigned>> out;
	for (unsigned k = 1; k <= K; ++k)
		out.emplace_back(projection_coeff(f, k, p, popt, precision), k);
	return out;
}

} // namespace nowhereq
