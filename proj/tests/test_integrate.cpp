/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/integrate.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace nowhereq;
using nowhereq::testing::R;

namespace {
const ExponentSchedule kP1 = ExponentSchedule::standard(1);
const QIntervalSet kUnit{QInterval(0, 1)};
const QIntervalSet kQuarter{QInterval(Rat(1, 4), 1)};
} // namespace

TEST_CASE("single power terms in closed form")
{
	const SingularFunction h1 = build_hj(1, kP1);
	const PowerTerm &t = h1.terms[0];
	IntegralResult a = integral_power_term(t, kUnit, 1);
	REQUIRE(a.value);
	CHECK(a.value->contains(Rat(2)));
	CHECK(a.value->width_double() <= 1e-30);
	CHECK(integral_power_term(t, kUnit, 2).infinite);
	IntegralResult l = integral_power_term(t, kQuarter, 2);
	REQUIRE(l.value);
	CHECK(l.value->lower() > R("1.38629436111989061883446"));
	CHECK(l.value->upper() < R("1.38629436111989061883447"));
	// Off the singular endpoint q e >= 1 stays finite.
	CHECK_FALSE(integral_power_term(t, kQuarter, 3).infinite);
}

TEST_CASE("norms of h_j in closed form")
{
	for (const Rat &p : {Rat(1), Rat(2), Rat(3, 2)}) {
		auto s = ExponentSchedule::standard(p);
		for (unsigned j = 1; j <= 10; ++j) {
			IntegralResult r = integral_power_term(build_hj(j, s).terms[0], kUnit, p);
			REQUIRE(r.value);
			CHECK(r.value->contains(Rat(j + 1)));
			CHECK(r.value->width_double() <= 1e-10);
		}
	}
}

TEST_CASE("masked terms need the set inside the mask")
{
	SingularFunction h = build_h(1, 3, kP1);
	CHECK_THROWS_AS(integral_power_term(h.terms[0], kUnit, 1), DomainError);
	IntegralResult r = integral_power_term(h.terms[0], QIntervalSet{QInterval(0, Rat(5, 32))}, 1);
	REQUIRE(r.value);
	// (1/4) 2 sqrt(5/32)
	CHECK(r.value->contains(rat_pow(Rat(5, 32), Rat(1, 2), 200).scaled(Rat(1, 2))));
}

TEST_CASE("term dropping lower bound")
{
	SingularFunction h2 = build_htilde(2, kP1);
	IntegralResult lb = lower_bound_sum_q(h2, kQuarter, 2, 1);
	REQUIRE(lb.value);
	// (1/144) 3 (4^(1/3) - 1), frozen from the high precision oracle.
	CHECK(lb.value->lower() > R("0.01223752191600415572399"));
	CHECK(lb.value->upper() < R("0.01223752191600415572400"));
	IntegralResult full = enclose_sum_q(h2, kQuarter, 2);
	REQUIRE(full.value);
	CHECK(lb.value->upper() <= full.value->upper());
	CHECK(full.value->lower() < R("0.1638611819597156106"));
	CHECK(full.value->upper() > R("0.1638611819597156106"));
	CHECK(full.value->width_double() <= 1e-9);

	SingularFunction single = build_hj(1, kP1);
	IntegralResult one = lower_bound_sum_q(single, kQuarter, 2, 0);
	Enclosure direct = *integral_power_term(single.terms[0], kQuarter, 2).value;
	CHECK(one.value->lower() <= direct.upper());
	CHECK(direct.lower() <= one.value->upper());

	SingularFunction r = rescale_into(h2, QInterval(Rat(1, 2), 1));
	CHECK_THROWS_AS(lower_bound_sum_q(r, kQuarter, 2, 0), DomainError);
}

TEST_CASE("enclose_sum_q")
{
	SingularFunction h1 = build_hj(1, kP1);
	IntegralResult a = enclose_sum_q(h1, kUnit, 1);
	REQUIRE(a.value);
	CHECK(a.value->contains(Rat(2)));
	CHECK(a.value->width_double() <= 1e-10);

	SingularFunction h2 = build_htilde(2, kP1);
	IntegralResult b = enclose_sum_q(h2, kUnit, 1);
	REQUIRE(b.value);
	CHECK(b.value->contains(Rat(3, 4)));

	auto s = ExponentSchedule::standard(Rat(5, 4));
	IntegralResult c = enclose_sum_q(build_htilde(2, s), kUnit, Rat(5, 4));
	REQUIRE(c.value);
	CHECK(c.value->lower() < R("0.6954133616384095648"));
	CHECK(c.value->upper() > R("0.6954133616384095648"));
	CHECK(c.value->width_double() <= 1e-9);

	CHECK(enclose_sum_q(h2, kUnit, 2).infinite);
}

TEST_CASE("scaling law for single terms")
{
	const SingularFunction h2j = build_hj(2, kP1);
	const PowerTerm &t = h2j.terms[0];
	SingularFunction f;
	f.terms.push_back(t);
	for (const QInterval &i : {QInterval(Rat(3, 8), Rat(5, 8)), QInterval(Rat(1, 7), Rat(2, 3))}) {
		SingularFunction fi = rescale_into(f, i);
		for (const Rat &q : {Rat(1), Rat(4, 3)}) {
			Enclosure base = *integral_power_term(f.terms[0], kUnit, q).value;
			Enclosure scaled = *integral_power_term(fi.terms[0], QIntervalSet{i}, q).value;
			Enclosure ratio = scaled / base;
			CHECK(ratio.contains(i.length()));
		}
	}
}

TEST_CASE("normalizer of h")
{
	QuadratureOptions o;
	o.target_width = Rat(1, 10'000);
	NormReport n = norm_h_enclosure(1, 1, kP1, o);
	CHECK(n.masked.contains(Rat(1, 2)));

	// Masked norm decreases with the stage.
	Rat prev_hi = 1;
	for (unsigned m : {2u, 4u, 8u}) {
		NormReport r = norm_h_enclosure(4, m, kP1, o);
		CHECK(r.masked.lower() <= prev_hi);
		prev_hi = r.masked.upper();
		CHECK(r.on_cantor.upper() <= r.masked.upper());
	}
}

TEST_CASE("normalizer at J = 20, m = 20, p = 1 reaches width 1e-6")
{
	QuadratureOptions o;
	o.target_width = Rat(1, 1'000'000);
	o.precision = 64;
	NormReport n = norm_h_enclosure(20, 20, kP1, o);
	MESSAGE("masked width " << n.masked.width_double() << ", cells " << n.masked_run.cells);
	CHECK(n.masked.width_double() <= 1e-6);
	CHECK(n.on_cantor.width_double() <= 1e-6);
	// Stage-14 closed form from the oracle bounds the masked norm from above.
	CHECK(n.masked.lower() < R("0.6474392583"));
	CHECK(n.on_cantor.lower() > R("0.6473"));
	CHECK(n.normalizer.upper() - n.normalizer.lower() >= pow2(-20));
}

TEST_CASE("disjoint support test")
{
	FTruncation ft{2, 3, 3, 8};
	SingularFunction f2 = build_fj(2, ft, kP1), f3 = build_fj(3, ft, kP1);
	CHECK(supports_almost_disjoint(f2.terms[0], f3.terms[0]));
	CHECK(supports_almost_disjoint(build_fj(1, ft, kP1).terms[0], f2.terms[0]));
	CHECK_FALSE(supports_almost_disjoint(f2.terms[0], f2.terms[1]));
}
