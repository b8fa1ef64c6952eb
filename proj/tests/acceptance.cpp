/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "nowhereq/cantor.hpp"
#include "nowhereq/certify.hpp"
#include "nowhereq/family.hpp"
#include "nowhereq/integrate.hpp"
#include "nowhereq/serialize.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace nowhereq;

namespace {

// Pinned tolerances and limits.
constexpr double kStageSeconds = 1.0;
constexpr double kNormWidth = 1e-10;
constexpr double kLemmaSeconds = 10.0;
const Rat kLemmaFloor = 1000;
constexpr double kMembershipWidth = 1e-4;
const Rat kIsometryTol(1, 10'000);
constexpr double kDivergenceSeconds = 60.0;
const Rat kDivergenceTarget = 10'000;
constexpr double kDiagonalWidth = 1e-3;
constexpr unsigned kStepCases = 20;
constexpr double kSequenceSeconds = 5.0;
constexpr int kSoundnessChecks = 10'000;

struct Outcome {
	bool pass;
	std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.3g", x);
	return buf;
}

GTruncation default_depths() { return GTruncation{}; } // J=L=m=Jg=20, D=8

QuadratureOptions quad()
{
	QuadratureOptions o;
	o.target_width = Rat(1, 100'000);
	o.precision = 64;
	return o;
}

Outcome stage_measures()
{
	auto t0 = std::chrono::steady_clock::now();
	for (unsigned n = 1; n <= 30; ++n)
		if (stage(n).measure() != Rat(1, 2) + pow2(-long(n)))
			return {false, "n=" + std::to_string(n)};
	double s = seconds_since(t0);
	return {s < kStageSeconds, fmt(s) + " s"};
}

Outcome t_values()
{
	for (unsigned n = 1; n <= 60; ++n) {
		Rat closed = (1 + pow2(long(n) - 1)) / pow2(2 * long(n) - 1);
		if (t_right(n) != closed)
			return {false, "closed form differs at n=" + std::to_string(n)};
		if (closed > pow2(1 - long(n)))
			return {false, "t_n > 2^(1-n) at n=" + std::to_string(n)};
		TBoundCheck c = check_t_bounds(n);
		if (c.stated_holds != (n <= 2) || !c.valid_holds)
			return {false, "checker wrong at n=" + std::to_string(n)};
	}
	TBoundCheck c3 = check_t_bounds(3);
	bool witness = c3.t == Rat(5, 32) && c3.stated_bound == make_rat(4, 32);
	return {witness, "t_3 = " + to_string(c3.t) + " vs " + to_string(c3.stated_bound)};
}

Outcome left_tail()
{
	for (unsigned n = 1; n <= 10; ++n) {
		Rat prev = 2;
		for (unsigned m = n; m <= 30; ++m) { // the operation requires m >= n
			Rat v = left_tail_measure(n, m);
			if (v != pow2(-long(n)) + pow2(1 - long(n) - long(m)))
				return {false, "n=" + std::to_string(n) + " m=" + std::to_string(m)};
			if (v >= prev || v <= pow2(-long(n)))
				return {false, "not monotone to 2^-n"};
			prev = v;
		}
	}
	return {true, "n<=10, n<=m<=30"};
}

Outcome c_built()
{
	const unsigned D = 8, m = 8;
	CBuiltApprox a2 = a_set(2, D, m);
	Rat err = abs(a2.realization_measure - Rat(1, 4));
	if (err > pow2(-long(D)) + pow2(-long(m)))
		return {false, "m(A_2) off by " + to_string(err)};
	// Levels n <= 6 at D = 2, m = 8.
	std::vector<QIntervalSet> levels;
	for (unsigned n = 1; n <= 6; ++n)
		levels.push_back(a_set(n, 2, m).realization);
	for (std::size_t i = 0; i < levels.size(); ++i)
		for (std::size_t j = i + 1; j < levels.size(); ++j)
			if (!almost_disjoint(levels[i], levels[j]))
				return {false, "levels " + std::to_string(i + 1) + "," + std::to_string(j + 1)};
	return {true, "|m(A_2)-1/4| = " + fmt(err.get_d()) + "; levels 1..6 at D=2,m=8"};
}

Outcome norm_closed_form()
{
	QIntervalSet unit{QInterval(0, 1)};
	double worst = 0;
	for (const Rat &p : {Rat(1), Rat(2), Rat(3, 2)}) {
		auto s = ExponentSchedule::standard(p);
		for (unsigned j = 1; j <= 10; ++j) {
			IntegralResult r = integral_power_term(build_hj(j, s).terms[0], unit, p);
			if (!r.value || !r.value->contains(Rat(j + 1)))
				return {false, "p=" + to_string(p) + " j=" + std::to_string(j)};
			worst = std::max(worst, r.value->width_double());
		}
	}
	return {worst <= kNormWidth, "max width " + fmt(worst)};
}

Outcome lemma()
{
	auto t0 = std::chrono::steady_clock::now();
	LemmaChainReport r = lemma_chain(ExponentSchedule::standard(1), 2, 2u, 40);
	if (r.s != Rat(4, 3))
		return {false, "s = " + to_string(r.s)};
	for (unsigned n = 5; n <= 37; ++n)
		if (!(r.rows[n + 2].lb.lower() > r.rows[n - 1].lb.upper()))
			return {false, "growth fails at n=" + std::to_string(n)};
	if (!(r.rows[39].lb.lower() > kLemmaFloor))
		return {false, "LB(40) too small"};
	for (unsigned n = 3; n <= 40; ++n)
		if (!(r.rows[n - 1].corrected.upper() < r.rows[n - 1].lb.lower()))
			return {false, "corrected bound at n=" + std::to_string(n)};
	double s = seconds_since(t0);
	return {s < kLemmaSeconds, "LB(40).lo = " + r.rows[39].lb.lower_string(8) + ", " + fmt(s) + " s"};
}

Outcome membership()
{
	MembershipCertificate m =
	    certify_membership(1, default_depths(), ExponentSchedule::standard(1), quad());
	double w = m.norm.width_double();
	bool ok = m.contains_one == Verdict::holds && w <= kMembershipWidth && m.weights_sum_to_one;
	return {ok, "[" + m.norm.lower_string(10) + ", " + m.norm.upper_string(10) + "] width " + fmt(w)};
}

Outcome isometry()
{
	std::vector<Rat> a{Rat(1), Rat(-1, 2), Rat(1, 3)};
	IsometryReport r = isometry_check(a, default_depths(), ExponentSchedule::standard(1), quad());
	if (!(r.ratio.lower() >= 1 - kIsometryTol && r.ratio.upper() <= 1 + kIsometryTol))
		return {false, "ratio [" + r.ratio.lower_string(10) + ", " + r.ratio.upper_string(10) + "]"};
	// Symbolic identity at several truncations.
	for (unsigned d : {4u, 8u, 12u}) {
		GTruncation t;
		t.outer_terms = d;
		t.inner = FTruncation{d, d, std::min(d, 8u), d};
		QuadratureOptions loose = quad();
		loose.target_width = Rat(1, 100);
		for (const Rat &p : {Rat(1), Rat(2)}) {
			IsometryReport s = isometry_check(a, t, ExponentSchedule::standard(p), loose);
			if (!s.symbolic_identity)
				return {false, "symbolic identity at depth " + std::to_string(d)};
			if (p == 2 && (!s.symbolic_pth_sum || *s.symbolic_pth_sum != Rat(49, 36) ||
				       *s.coeff_pth_sum != Rat(49, 36)))
				return {false, "p=2 sums at depth " + std::to_string(d)};
		}
	}
	return {true, "ratio [" + r.ratio.lower_string(10) + ", " + r.ratio.upper_string(10) + "]"};
}

Outcome divergence()
{
	auto t0 = std::chrono::steady_clock::now();
	auto sched = ExponentSchedule::standard(1);
	QInterval u(Rat(1, 3), Rat(1, 2));
	DivergenceCertificate c = certify_divergence(1, default_depths(), sched, u, Rat(2), kDivergenceTarget);
	if (c.status != Verdict::holds)
		return {false, "status " + std::string(to_string(c.status))};
	if (!u.contains_in_interior(c.witness.hull))
		return {false, "hull not inside U"};
	std::string first = dump(divergence_json(c));
	DivergenceCertificate back = divergence_from_json(Json::parse(first));
	std::string second = dump(divergence_json(replay_divergence(back, sched)));
	if (first != second)
		return {false, "replay differs"};
	double s = seconds_since(t0);
	return {s < kDivergenceSeconds, "n=" + std::to_string(c.witness.tail_n) + " bound.lo=" +
					     c.bound.lower_string(8) + ", " + fmt(s) + " s"};
}

Outcome projection()
{
	ProjectionReport r = projection_check(4, default_depths(), ExponentSchedule::standard(1), quad(), kStepCases);
	if (!r.off_diagonal_zero)
		return {false, "off-diagonal"};
	for (unsigned k = 0; k < 4; ++k)
		for (unsigned kb = 0; kb < 4; ++kb)
			if (k != kb && !(r.gram[k][kb].lower() == 0 && r.gram[k][kb].upper() == 0))
				return {false, "off-diagonal enclosure"};
	if (r.diagonal_contains_one != Verdict::holds || r.max_diagonal_width > kDiagonalWidth)
		return {false, "diagonal width " + fmt(r.max_diagonal_width)};
	if (r.steps.size() != kStepCases)
		return {false, "step cases"};
	for (const auto &s : r.steps)
		if (s.contraction != Verdict::holds)
			return {false, "seed " + std::to_string(s.seed)};
	return {true, "diag width " + fmt(r.max_diagonal_width) + ", " + std::to_string(kStepCases) + " step functions"};
}

Outcome sequences()
{
	auto t0 = std::chrono::steady_clock::now();
	for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
		auto [k, j] = seq_locate(n);
		if (k == 0 || j == 0 || seq_value(k, j) != n)
			return {false, "n=" + std::to_string(n)};
	}
	double s = seconds_since(t0);
	return {s < kSequenceSeconds, fmt(s) + " s"};
}

Outcome soundness()
{
	std::mt19937_64 rng(20260101);
	std::uniform_int_distribution<long> num(-100'000, 100'000), den(1, 10'000), small(1, 64);
	int checks = 0, bad = 0;
	QIntervalSet unit{QInterval(0, 1)};
	while (checks < kSoundnessChecks) {
		Rat a = make_rat(num(rng), den(rng)), b = make_rat(num(rng), den(rng));
		Enclosure ea(a, 53), eb(b, 53);
		bad += !(ea + eb).contains(a + b);
		bad += !(ea - eb).contains(a - b);
		bad += !(ea * eb).contains(a * b);
		bad += b != 0 && !(ea / eb).contains(a / b);
		Rat base = abs(a) + Rat(1, 7);
		long k = long(small(rng) % 7) - 3;
		bad += !rat_pow(base, Rat(k), 64).contains(ipow(base, k));
		// c x^(-1/2) over [u^2, v^2] integrates to 2 c (v - u).
		Rat u = make_rat(small(rng) - 1, 64), v = make_rat(small(rng), 64);
		if (u > v)
			std::swap(u, v);
		if (u != v) {
			Rat c = make_rat(small(rng), small(rng));
			PowerTerm t{CoeffExpr(c), Rat(1, 2), QInterval(0, 1)};
			IntegralResult r = integral_power_term(t, QIntervalSet{QInterval(u * u, v * v)}, 1, 64);
			bad += !r.value || !r.value->contains(2 * c * (v - u));
			++checks;
		}
		checks += 5;
	}
	return {bad == 0, std::to_string(checks) + " checks, " + std::to_string(bad) + " violations"};
}

} // namespace

int main()
{
	const std::vector<std::pair<const char *, std::function<Outcome()>>> items{
	    {"stage measures", stage_measures},
	    {"t_n formula and bounds", t_values},
	    {"left tail measure", left_tail},
	    {"C-built measures", c_built},
	    {"h_j norm closed form", norm_closed_form},
	    {"lemma chain", lemma},
	    {"membership of g_1", membership},
	    {"isometry", isometry},
	    {"divergence certificate", divergence},
	    {"projection", projection},
	    {"sequence family", sequences},
	    {"enclosure soundness", soundness},
	};
	int failed = 0, idx = 0;
	for (const auto &[name, fn] : items) {
		++idx;
		Outcome o;
		try {
			o = fn();
		} catch (const std::exception &e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failed += !o.pass;
		std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str());
		std::fflush(stdout);
	}
	return failed == 0 ? 0 : 1;
}
