/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/family.hpp"
#include "nowhereq/integrate.hpp"

#include <doctest.h>

#include <set>

using namespace nowhereq;

namespace {
const ExponentSchedule kP1 = ExponentSchedule::standard(1);
}

TEST_CASE("default schedule")
{
	for (const Rat &p : {Rat(1), Rat(2), Rat(3, 2)}) {
		auto s = ExponentSchedule::standard(p);
		for (unsigned j = 1; j <= 20; ++j) {
			CHECK(s.r(j) == p * (j + 1) / j);
			CHECK(p / s.r(j) == Rat(j, j + 1));
			CHECK(s.norm_pow(j) == j + 1);
			CHECK(s.r(j + 1) < s.r(j));
			CHECK(s.r(j) > p);
		}
	}
	CHECK(kP1.first_index_below(2) == 2);
	CHECK(kP1.first_index_below(Rat(3, 2)) == 3);
	CHECK_THROWS_AS(kP1.first_index_below(1), DomainError);
	CHECK_THROWS_AS(ExponentSchedule::standard(Rat(1, 2)), DomainError);
}

TEST_CASE("custom schedules are validated")
{
	auto bad = ExponentSchedule::custom(1, [](unsigned j) -> Rat { return Rat(1) + Rat(j, 10); }, "increasing");
	CHECK_THROWS_AS(bad.validate(3), DomainError);
	auto good = ExponentSchedule::custom(1, [](unsigned j) -> Rat { return Rat(1) + Rat(1, j + 1); }, "1+1/(j+1)");
	CHECK_NOTHROW(good.validate(10));
	CHECK(good.norm_pow(1) == 3);
}

TEST_CASE("coefficient expressions stay exact")
{
	CoeffExpr w = CoeffExpr::power(2, Rat(-3, 2));
	CoeffExpr sq = w.pow(2);
	CHECK(sq.is_rational());
	CHECK(sq.factor() == Rat(1, 8));
	CoeffExpr c = CoeffExpr(Rat(1, 4)) * CoeffExpr::power(3, Rat(-1, 2)) * CoeffExpr::normalizer(-1);
	CHECK_FALSE(c.is_rational());
	CHECK_THROWS_AS(c.evaluate({}, 64), DomainError);
	Enclosure v = c.evaluate(NormalizerBinding{Enclosure(Rat(1, 2), 64)}, 64);
	// (1/4) 3^(-1/2) / (1/2)
	CHECK(v.lower() > make_rat(288675, 1000000));
	CHECK(v.upper() < make_rat(288676, 1000000));
	CHECK((c * c.pow(-1)).is_rational());
	CHECK((c * c.pow(-1)).factor() == 1);
}

TEST_CASE("h_j")
{
	SingularFunction h1 = build_hj(1, kP1);
	REQUIRE(h1.terms.size() == 1);
	CHECK(h1.terms[0].exponent == Rat(1, 2));
	CHECK(h1.terms[0].coeff.is_rational());
	CHECK(h1.terms[0].coeff.factor() == 1);
	CHECK(evaluate(h1, Rat(1, 4), 64).contains(Rat(2)));
	CHECK_THROWS_AS(evaluate(h1, Rat(0), 64), DomainError);
}

TEST_CASE("h~_J")
{
	SingularFunction t1 = build_htilde(1, kP1);
	REQUIRE(t1.terms.size() == 1);
	CHECK(t1.terms[0].coeff.factor() == Rat(1, 4));
	CHECK(evaluate(t1, Rat(1, 4), 64).contains(Rat(1, 2)));
	SingularFunction t2 = build_htilde(2, kP1);
	REQUIRE(t2.terms.size() == 2);
	CHECK(t2.terms[1].exponent == Rat(2, 3));
	CHECK(t2.terms[1].coeff.is_rational());
	CHECK(t2.terms[1].coeff.factor() == Rat(1, 12));
	CHECK(t2.construction.series_tail == Rat(1, 4));
	CHECK_THROWS_AS(build_htilde(0, kP1), DomainError);
}

TEST_CASE("h masks by a Cantor stage")
{
	SingularFunction h = build_h(1, 2, kP1);
	CHECK(evaluate(h, Rat(1, 2), 64).upper() == 0);
	CHECK(evaluate(h, Rat(1, 4), 64).contains(Rat(1, 2)));
	CHECK(stage(2).measure() == Rat(3, 4));
}

TEST_CASE("rescaling")
{
	SingularFunction h1 = build_hj(1, kP1);
	QInterval i(Rat(3, 8), Rat(5, 8));
	SingularFunction r = rescale_into(h1, i);
	REQUIRE(r.terms.size() == 1);
	CHECK(r.terms[0].support == i);
	CHECK(r.terms[0].exponent == Rat(1, 2));
	// ((7/16 - 3/8) / (1/4))^(-1/2) = (1/4)^(-1/2) = 2
	CHECK(evaluate(r, Rat(7, 16), 64).contains(Rat(2)));
	CHECK(evaluate(r, Rat(3, 4), 64).upper() == 0);
	SingularFunction same = rescale_into(h1, QInterval(0, 1));
	CHECK(same.terms[0].support == h1.terms[0].support);
	CHECK_THROWS_AS(rescale_into(h1, QInterval(Rat(1, 2), Rat(1, 2))), DomainError);
}

TEST_CASE("f_j and g_k structure")
{
	FTruncation ft{4, 5, 3, 8};
	SingularFunction f1 = build_fj(1, ft, kP1);
	CHECK(f1.terms.size() == 4);
	CHECK(f1.terms[0].coeff.normalizer_power() == -1);
	SingularFunction f2 = build_fj(2, ft, kP1);
	CHECK(f2.terms.size() == 4 * 5);
	CHECK(f2.construction.component_tail == pow2(-5));
	// p = 1: the l-th component weight is 2^-l / |I_l|.
	const auto &t = f2.terms[4]; // component 2, series term 1
	REQUIRE(t.component);
	CHECK(t.component->index == 2);
	CoeffExpr expect = CoeffExpr(pow2(-2) / t.support.length() * Rat(1, 4)) * CoeffExpr::normalizer(-1);
	CHECK(t.coeff == expect);

	GTruncation gt{3, ft};
	SingularFunction g1 = build_gk(1, gt, kP1);
	std::set<unsigned> levels;
	for (const auto &term : g1.terms)
		levels.insert(term.component->level);
	CHECK(levels == std::set<unsigned>{1, 3, 5});
	CHECK(g1.construction.outer_tail == Rat(1, 8));
	CHECK(supports_almost_disjoint(g1.terms.front(), build_gk(2, gt, kP1).terms.front()));
}

TEST_CASE("sequence family")
{
	CHECK(seq_value(1, 1) == 1);
	CHECK(seq_value(1, 3) == 5);
	CHECK(seq_value(3, 2) == 12);
	for (std::uint64_t k = 1; k <= 50; ++k)
		for (std::uint64_t j = 1; j <= 100; ++j) {
			CHECK(seq_locate(seq_value(k, j)) == std::pair<std::uint64_t, std::uint64_t>{k, j});
			CHECK(seq_value(k, j) < seq_value(k, j + 1));
		}
	CHECK_THROWS_AS(seq_value(0, 1), DomainError);
	CHECK_THROWS_AS(seq_locate(0), DomainError);
	CHECK_THROWS_AS(seq_value(70, 1), DomainError);
}
