/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/enclosure.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace nowhereq;
using nowhereq::testing::R;
using nowhereq::testing::sci;

TEST_CASE("rationals stay in lowest terms")
{
	Rat a = R("6/8");
	CHECK(a.get_num() == 3);
	CHECK(a.get_den() == 4);
	CHECK(to_string(R("-10/4")) == "-5/2");
	CHECK(to_string(R("7")) == "7");
	CHECK(R("0.25") == Rat(1, 4));
	CHECK(R("-1.5") == Rat(-3, 2));
	CHECK(R("-3/6") == Rat(-1, 2));
}

TEST_CASE("malformed rationals are rejected")
{
	for (const char *bad : {"", "1/0", "abc", "1//2", "0.5x", "1e3", "/3", "2/", "3/-6"})
		CHECK_THROWS_AS(parse_rat(bad), DomainError);
}

TEST_CASE("powers of two and integer powers")
{
	CHECK(pow2(10) == 1024);
	CHECK(pow2(-3) == Rat(1, 8));
	CHECK(ipow(Rat(2, 3), 3) == Rat(8, 27));
	CHECK(ipow(Rat(2, 3), -2) == Rat(9, 4));
	CHECK(floor_log2(Rat(5, 32)) == -3);
	CHECK(floor_log2(Rat(1024)) == 10);
	CHECK(is_integer(make_rat(4, 2)));
	CHECK_FALSE(is_integer(Rat(1, 2)));
}

TEST_CASE("rat_pow: exact roots and irrational values")
{
	Enclosure two = rat_pow(4, Rat(1, 2), 64);
	CHECK(two.contains(Rat(2)));
	CHECK(two.width_double() <= 1e-15);

	// sqrt 2 from an independent high precision computation.
	Enclosure s = rat_pow(2, Rat(1, 2), 64);
	CHECK(s.contains(R("1.414213562373095")) == false); // truncated decimal lies below
	CHECK(s.lower() > R("1.41421356237309504"));
	CHECK(s.upper() < R("1.41421356237309505"));

	Enclosure v = rat_pow(Rat(32, 5), Rat(4, 3), 64);
	CHECK(v.lower() > R("11.882467414048713"));
	CHECK(v.upper() < R("11.882467414048715"));

	CHECK(rat_pow(Rat(1, 4), Rat(-1, 2), 64).contains(Rat(2)));
	CHECK(rat_pow(Rat(27, 8), Rat(2, 3)).contains(Rat(9, 4)));
	CHECK_THROWS_AS(rat_pow(0, Rat(1, 2)), DomainError);
	CHECK_THROWS_AS(rat_pow(-2, Rat(1, 3)), DomainError);
}

TEST_CASE("rat_pow width bound")
{
	for (unsigned prec : {16u, 32u, 64u, 128u, 256u}) {
		for (const char *b : {"2", "32/5", "1/7", "1000001/3"}) {
			Enclosure e = rat_pow(R(b), Rat(-5, 7), prec);
			Rat scale = std::max<Rat>(1, e.upper());
			CHECK(e.upper() - e.lower() <= pow2(4 - static_cast<long>(prec)) * scale);
		}
	}
}

TEST_CASE("interval arithmetic")
{
	Enclosure a(Rat(1), 64), b(Rat(2), 64);
	Enclosure c = enclosure_arith(a, b, ArithOp::add);
	CHECK(c.lower() == 3);
	CHECK(c.upper() == 3);

	Enclosure x(Rat(1), Rat(2), 64), y(Rat(-1), Rat(1), 64);
	Enclosure m = enclosure_arith(x, y, ArithOp::mul);
	CHECK(m.lower() == -2);
	CHECK(m.upper() == 2);

	CHECK_THROWS_AS(enclosure_arith(x, y, ArithOp::div), DomainError);
	Enclosure q = enclosure_arith(Enclosure(Rat(1, 4), 64), a, ArithOp::pow_by_rat, Rat(-1, 2));
	CHECK(q.contains(Rat(2)));
	CHECK_THROWS_AS(enclosure_arith(y, a, ArithOp::pow_by_rat, Rat(1, 2)), DomainError);
}

TEST_CASE("log and exp enclose their values")
{
	Enclosure l = rat_log(4);
	CHECK(l.lower() > R("1.3862943611198906188344642429163"));
	CHECK(l.upper() < R("1.3862943611198906188344642429164"));
	Enclosure e = Enclosure(Rat(0), 64).exp();
	CHECK(e.contains(Rat(1)));
	Enclosure back = Enclosure(Rat(3), 128).log().exp();
	CHECK(back.contains(Rat(3)));
}

TEST_CASE("comparisons are conservative")
{
	Enclosure a(Rat(1), Rat(2), 64), b(Rat(3), Rat(4), 64), c(Rat(3, 2), Rat(5, 2), 64);
	CHECK(less(a, b) == Verdict::holds);
	CHECK(less(b, a) == Verdict::fails);
	CHECK(less(a, c) == Verdict::undecided);
	CHECK(less(a, Rat(3)) == Verdict::holds);
	CHECK(less(Rat(5), b) == Verdict::fails);
}

TEST_CASE("doubling precision never widens")
{
	for (const char *b : {"2", "3/7", "123457/1000"})
		for (unsigned prec = 32; prec <= 512; prec *= 2) {
			Enclosure lo = rat_pow(R(b), Rat(2, 3), prec);
			Enclosure hi = rat_pow(R(b), Rat(2, 3), 2 * prec);
			CHECK(hi.upper() - hi.lower() <= lo.upper() - lo.lower());
		}
}

TEST_CASE("decimal rendering rounds outward")
{
	Enclosure third(Rat(1, 3), 64);
	CHECK(sci(third.lower_string(5)) <= Rat(1, 3));
	CHECK(sci(third.upper_string(5)) >= Rat(1, 3));
	CHECK(sci(third.upper_string(5)) - sci(third.lower_string(5)) <= Rat(1, 10000));
	Enclosure neg(Rat(-2, 3), 64);
	CHECK(sci(neg.lower_string(4)) <= Rat(-2, 3));
	CHECK(sci(neg.upper_string(4)) >= Rat(-2, 3));
}
